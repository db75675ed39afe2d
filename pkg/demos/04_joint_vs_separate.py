#!/usr/bin/env python3
"""The headline experiment: one generalized chip vs four specialized ones.

A joint search scores every candidate by its worst energy and worst
latency across all four CNNs.  Separate searches optimize each CNN alone;
their winners are then re-scored on the full set.  Typical outcome: the
specialized winners often cannot run the other networks at all, and even
the chip tuned for the largest network loses to the joint winner on the
all-workload score.  Artifacts (history CSVs, convergence SVG, cross-eval
tables) land in out/joint_vs_separate/.
"""

from imcdse import (DEFAULT_CONSTANTS, GaParams, ObjectiveSpec,
                    best_recalculated, cross_evaluate, default_space,
                    emit_reports, failed_fraction, load_default_workloads,
                    run_joint, run_separate, score_loss_table)

space = default_space()
workloads = load_default_workloads()
spec = ObjectiveSpec()
k = DEFAULT_CONSTANTS
params = GaParams(population_size=40, generations=10, seed=0)

print("running joint search (4 workloads at once)...")
joint = run_joint(space, workloads, spec, params, k)
print(f"  {len(joint.history)} evaluations in {joint.duration_s:.2f}s, "
      f"best joint score {joint.topk[0].score.value:.4e}")

print("running 4 separate searches...")
separate = run_separate(space, workloads, spec, params, k)
for rep in separate:
    print(f"  {rep.label}: best own-workload score {rep.topk[0].score.value:.4e}")

print("\ncross-evaluating every run's top-10 on all four workloads:")
tables = [("joint", cross_evaluate([i.config for i in joint.topk],
                                   workloads, spec, k))]
for rep in separate:
    tables.append((rep.label, cross_evaluate([i.config for i in rep.topk],
                                             workloads, spec, k)))
print(f"{'run':>28} {'failed designs':>15} {'best joint score':>18}")
for label, table in tables:
    best = best_recalculated(table)
    score = f"{best.value:.4e}" if best.feasible else "unusable"
    print(f"{label:>28} {failed_fraction(table):>14.0f}% {score:>18}")

joint_best = best_recalculated(tables[0][1]).value
vgg_best = best_recalculated(dict(tables)["separate_vgg16"]).value
if joint_best < vgg_best:
    print(f"\njoint winner beats the largest-workload specialist by "
          f"{100 * (1 - joint_best / vgg_best):.1f}% on the joint score")

print("\nwhat generalization costs on each workload "
      "(joint winner vs that workload's own winner):")
for name, loss in score_loss_table(joint, separate, workloads, spec, k).items():
    print(f"  {name:>20}: {'n/a' if loss is None else f'{loss:5.1f}% score loss'}")

out = "out/joint_vs_separate"
emit_reports([joint, *separate], tables, out)
print(f"\nartifacts written to {out}/")
