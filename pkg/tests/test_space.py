import numpy as np
import pytest

from imcdse.space import (HardwareConfig, PARAM_NAMES, SearchSpace, decode,
                          default_space, encode, enumerate_genomes, load_space,
                          sample_random, save_space, space_digest, space_size,
                          tiny_space)


def uniform_space(levels):
    return SearchSpace(**{n: levels for n in PARAM_NAMES})


def test_default_space_size():
    assert space_size(default_space()) == 13_271_040


def test_degenerate_and_two_level_sizes():
    assert space_size(uniform_space((7,))) == 1
    assert space_size(tiny_space()) == 512


def test_level_validation():
    with pytest.raises(ValueError):
        uniform_space(())
    with pytest.raises(ValueError):
        uniform_space((4, 2))
    with pytest.raises(ValueError):
        uniform_space((0, 1))


def test_decode_all_zero_gives_smallest_levels(space):
    config = decode(np.zeros(9), space)
    for name in PARAM_NAMES:
        assert getattr(config, name) == space.levels(name)[0]


def test_decode_buckets(space):
    # six levels on xbar_rows: gene 0.999 -> top bucket, 0.5 -> index 3
    g = np.zeros(9)
    g[0] = 0.999
    assert decode(g, space).xbar_rows == space.xbar_rows[5]
    g[0] = 0.5
    assert decode(g, space).xbar_rows == space.xbar_rows[3]


def test_decode_clamps_top_bucket(space):
    hi = decode(np.ones(9), space)
    near = decode(np.full(9, 1.0 - 1e-9), space)
    assert hi == near
    for name in PARAM_NAMES:
        assert getattr(hi, name) == space.levels(name)[-1]


def test_encode_bucket_midpoints():
    sp = uniform_space((1, 2, 3, 4))
    first = decode(np.zeros(9), sp)
    last = decode(np.ones(9), sp)
    np.testing.assert_allclose(encode(first, sp), 0.125)
    np.testing.assert_allclose(encode(last, sp), 0.875)


def test_encode_rejects_foreign_value(space):
    config = decode(np.zeros(9), space)
    bad = HardwareConfig(**{**{n: getattr(config, n) for n in PARAM_NAMES},
                            "xbar_rows": 48})
    with pytest.raises(ValueError, match="xbar_rows"):
        encode(bad, space)


def test_decode_encode_round_trip(space):
    rng = np.random.default_rng(3)
    for _ in range(200):
        g = sample_random(space, rng)
        config = decode(g, space)
        assert decode(encode(config, space), space) == config
        # encode-decode maps any genome into its own bucket
        assert decode(encode(decode(g, space), space), space) == decode(g, space)


def test_enumerate_genomes_is_surjective(small_space):
    configs = {decode(g, small_space) for g in enumerate_genomes(small_space)}
    assert len(configs) == space_size(small_space)


def test_sample_deterministic_per_seed(space):
    a = sample_random(space, np.random.default_rng(11))
    b = sample_random(space, np.random.default_rng(11))
    np.testing.assert_array_equal(a, b)


def test_samples_differ_across_seeds(space):
    differing = 0
    for seed in range(100):
        a = sample_random(space, np.random.default_rng(seed))
        b = sample_random(space, np.random.default_rng(seed + 1000))
        differing += not np.array_equal(a, b)
    assert differing >= 99


def test_sample_uniformity(space):
    rng = np.random.default_rng(5)
    draws = np.stack([sample_random(space, rng) for _ in range(10_000)])
    means = draws.mean(axis=0)
    assert np.all(means > 0.45) and np.all(means < 0.55)
    assert draws.min() >= 0.0 and draws.max() < 1.0


def test_space_file_round_trip(tmp_path, space):
    path = tmp_path / "space.json"
    save_space(space, path)
    again = load_space(path)
    assert again == space
    assert space_digest(again) == space_digest(space)


def test_space_file_rejects_unknown_and_missing(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"xbar_rows": [32]}')
    with pytest.raises(ValueError, match="missing"):
        load_space(path)
    import json
    from imcdse.space import space_to_dict
    doc = space_to_dict(default_space())
    doc["adc_bits"] = [8]
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="adc_bits"):
        load_space(path)


def test_config_derived_counts():
    c = HardwareConfig(128, 128, 8, 4, 16, 0.9, 2, 2e-9, 65536)
    assert c.total_tiles == 64
    assert c.total_crossbars == 512
