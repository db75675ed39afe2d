#!/usr/bin/env python3
"""The analytical cost model, one law at a time.

A chip configuration either maps a workload (enough crossbars, a big
enough global buffer, reachable timing) or reports why not; feasible
chips get energy, latency and area from closed-form sums.  The laws the
optimizer relies on are easy to see numerically.
"""

import dataclasses

from imcdse import (DEFAULT_CONSTANTS, HardwareConfig, Infeasible, evaluate,
                    load_bundled, map_workload)
from imcdse.cost import estimate_energy, estimate_latency, max_frequency

k = DEFAULT_CONSTANTS
resnet = load_bundled("resnet18")

chip = HardwareConfig(xbar_rows=1024, xbar_cols=64, c_per_tile=64,
                      t_per_router=64, g_per_chip=2, v_op=1.0, bits_cell=3,
                      t_cycle=1e-9, glb_bytes=8 << 20)

print("=== one chip, one workload ===")
m = evaluate(chip, resnet, k)
print(f"resnet18 on a {chip.total_crossbars}-crossbar chip:")
print(f"  energy  {m.energy * 1e3:8.3f} mJ")
print(f"  latency {m.latency * 1e3:8.3f} ms")
print(f"  area    {m.area:8.1f}  mm2")

print("\n=== infeasibility is a value, with the failing condition ===")
for label, bad in [
        ("too few crossbars", dataclasses.replace(chip, c_per_tile=2, t_per_router=2)),
        ("buffer too small", dataclasses.replace(chip, glb_bytes=64 * 1024)),
        ("clock unreachable at 0.5 V", dataclasses.replace(chip, v_op=0.5))]:
    r = evaluate(bad, resnet, k)
    assert isinstance(r, Infeasible)
    print(f"  {label:>28} -> {r.reason}")

print("\n=== voltage: quadratic energy, derated clock ===")
slow = dataclasses.replace(chip, t_cycle=16e-9)
mapping = map_workload(slow, resnet, k)
for v in (0.5, 0.7, 0.9, 1.1):
    cfg = dataclasses.replace(slow, v_op=v)
    e = estimate_energy(cfg, mapping, resnet, k)
    print(f"  v_op {v:.1f} V: energy {e*1e3:7.3f} mJ "
          f"(x{(v/1.0)**2:.2f}), f_max {max_frequency(v, k)/1e6:7.1f} MHz")

print("\n=== cycle time: latency is exactly linear ===")
for tc in (1e-9, 2e-9, 4e-9):
    cfg = dataclasses.replace(chip, t_cycle=tc)
    l = estimate_latency(cfg, map_workload(cfg, resnet, k), resnet, k)
    print(f"  t_cycle {tc*1e9:4.0f} ns: latency {l*1e3:7.3f} ms")
