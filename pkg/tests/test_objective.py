import math

import pytest

from imcdse.cost import Infeasible, Metrics
from imcdse.objective import (ObjectiveForm, ObjectiveSpec, Score, better,
                              score_joint, score_single)


def m(e, l, a):
    return Metrics(e, l, a)


def test_score_single_product():
    s = score_single(m(2.0, 3.0, 10.0))
    assert s.value == 60.0 and s.feasible


def test_score_single_area_constraint():
    spec = ObjectiveSpec(area_constraint=5.0)
    s = score_single(m(2.0, 3.0, 10.0), spec)
    assert not s.feasible and s.value == math.inf and s.reason == "area"
    assert score_single(m(1.0, 1.0, 1.0), spec).value == 1.0


def test_score_single_other_forms():
    el = score_single(m(2.0, 3.0, 10.0), ObjectiveSpec(form=ObjectiveForm.EL))
    assert el.value == 6.0
    ed2a = score_single(m(2.0, 3.0, 10.0), ObjectiveSpec(form=ObjectiveForm.ED2A))
    assert ed2a.value == 2.0 * 9.0 * 10.0


def test_score_joint_takes_independent_maxima():
    s = score_joint([m(2.0, 3.0, 10.0), m(5.0, 1.0, 10.0)], 10.0)
    assert s.value == 5.0 * 3.0 * 10.0


def test_score_joint_single_entry_equals_score_single():
    metrics = m(1.7, 2.9, 4.2)
    assert score_joint([metrics], metrics.area).value == score_single(metrics).value


def test_score_joint_infeasible_entry_dominates():
    s = score_joint([m(1.0, 1.0, 1.0), Infeasible("capacity")], 1.0)
    assert not s.feasible and s.value == math.inf
    assert "capacity" in s.reason


def test_score_joint_area_constraint():
    spec = ObjectiveSpec(area_constraint=5.0)
    s = score_joint([m(1.0, 1.0, 10.0)], 10.0, spec)
    assert not s.feasible and s.reason == "area"


def test_score_joint_rejects_empty():
    with pytest.raises(ValueError):
        score_joint([], 1.0)


def test_joint_dominates_single(workloads, constants, space):
    # max-aggregation: joint score >= every member's single score
    import numpy as np
    from imcdse.cost import estimate_area, evaluate
    from imcdse.space import decode, sample_random
    rng = np.random.default_rng(2)
    found = 0
    while found < 25:
        cfg = decode(sample_random(space, rng), space)
        cells = [evaluate(cfg, w, constants) for w in workloads]
        if not all(isinstance(c, Metrics) for c in cells):
            continue
        joint = score_joint(cells, estimate_area(cfg, constants))
        for c in cells:
            assert joint.value >= score_single(c).value
        found += 1


def test_scaling_covariance():
    cells = [m(2.0, 3.0, 10.0), m(5.0, 1.0, 10.0)]
    base = score_joint(cells, 10.0)
    scaled = score_joint([m(c.energy * 7.0, c.latency, c.area) for c in cells], 10.0)
    assert scaled.value == 7.0 * base.value


def test_better_ordering():
    a = Score(60.0, True, ())
    b = Score(150.0, True, ())
    inf1 = Score(math.inf, False, ())
    inf2 = Score(math.inf, False, ())
    assert better(a, b) and not better(b, a)
    assert not better(inf1, inf2) and not better(inf2, inf1)
    assert not better(a, Score(60.0, True, ()))
    assert better(a, inf1)


def test_better_invariant_under_monotone_transform():
    import numpy as np
    rng = np.random.default_rng(9)
    for _ in range(200):
        x, y = rng.random(2) * 100
        a, b = Score(x, True, ()), Score(y, True, ())
        ta, tb = Score(math.exp(x / 20), True, ()), Score(math.exp(y / 20), True, ())
        assert better(a, b) == better(ta, tb)
