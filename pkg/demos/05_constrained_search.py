#!/usr/bin/env python3
"""Searching under an on-chip area budget.

The score already multiplies area in, so unconstrained searches stay
compact; a hard constraint additionally rules out every chip above the
budget (they score +inf).  400 mm2 is the shipped example budget: the
smallest chip that can hold all four bundled CNNs sits near 313 mm2, so
the feasible band under this budget is deliberately narrow.
"""

from imcdse import (DEFAULT_CONSTANTS, GaParams, ObjectiveSpec, ObjectiveForm,
                    default_space, load_default_workloads, run_joint)

space = default_space()
workloads = load_default_workloads()
k = DEFAULT_CONSTANTS
params = GaParams(population_size=40, generations=10, seed=0)

for label, spec in [
        ("unconstrained", ObjectiveSpec()),
        ("area <= 400 mm2", ObjectiveSpec(area_constraint=400.0)),
        ("energy*latency only, area <= 400 mm2",
         ObjectiveSpec(form=ObjectiveForm.EL, area_constraint=400.0))]:
    report = run_joint(space, workloads, spec, params, k)
    best = report.topk[0]
    if not best.score.feasible:
        print(f"{label:>38}: no design satisfied the constraint")
        continue
    print(f"{label:>38}: score {best.score.value:.4e}, "
          f"area {best.score.area:7.1f} mm2, "
          f"xbar {best.config.xbar_rows}x{best.config.xbar_cols}, "
          f"bits/cell {best.config.bits_cell}")
