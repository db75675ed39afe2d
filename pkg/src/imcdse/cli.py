"""Command-line driver for search, evaluation, cross-evaluation and reports.

Verbs:
  search    joint or per-workload genetic runs, with all artifacts emitted
  evaluate  cost one chip configuration on one workload
  crosseval re-score designs from a topk.json across workloads
  oracle    exhaustive enumeration of a (small) space
  report    rebuild convergence plot and summary from an output directory

Workload arguments accept files or directories (directories contribute
their *.json files in name order).  Omitted inputs fall back to the
bundled defaults: the four-CNN workload set, the 13.27M-point space and
the default cost constants.
"""

from __future__ import annotations

import argparse
import glob
import json
import math
import os
import sys

import numpy as np

from .cost import DEFAULT_CONSTANTS, Infeasible, evaluate, load_constants
from .evolution import GaParams, init_population, largest_workload
from .experiments import (best_recalculated, brute_force_oracle, cross_evaluate,
                          failed_fraction, run_joint, run_separate, score_loss_table)
from .objective import ObjectiveForm, ObjectiveSpec
from .reporting import (emit_reports, fmt, read_history_csv, read_topk_json,
                        write_crosseval_csv)
from .space import HardwareConfig, PARAM_NAMES, default_space, load_space
from .svgplot import polyline_plot
from .workloads import load_default_workloads, load_workload

__all__ = ["main"]


def _load_workload_args(paths) -> list:
    if not paths:
        return list(load_default_workloads())
    files = []
    for p in paths:
        if os.path.isdir(p):
            found = sorted(glob.glob(os.path.join(p, "*.json")))
            if not found:
                raise FileNotFoundError(f"no *.json workloads under '{p}'")
            files += found
        else:
            files.append(p)
    return [load_workload(f) for f in files]


def _load_space_arg(path):
    return load_space(path) if path else default_space()


def _load_constants_arg(path):
    return load_constants(path) if path else DEFAULT_CONSTANTS


def _objective(args) -> ObjectiveSpec:
    return ObjectiveSpec(form=ObjectiveForm(args.objective),
                         area_constraint=args.area_limit)


def _parse_config(text_or_path) -> HardwareConfig:
    if os.path.exists(text_or_path):
        with open(text_or_path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    else:
        doc = json.loads(text_or_path)
    if "t_cycle_ns" in doc:
        doc["t_cycle"] = doc.pop("t_cycle_ns") * 1e-9
    if "glb_kib" in doc:
        doc["glb_bytes"] = int(doc.pop("glb_kib") * 1024)
    unknown = set(doc) - set(PARAM_NAMES)
    if unknown:
        raise ValueError(f"unknown config field '{sorted(unknown)[0]}'")
    missing = set(PARAM_NAMES) - set(doc)
    if missing:
        raise ValueError(f"missing config field '{sorted(missing)[0]}'")
    return HardwareConfig(**doc)


def _cmd_search(args) -> int:
    space = _load_space_arg(args.space)
    workloads = _load_workload_args(args.workloads)
    constants = _load_constants_arg(args.constants)
    spec = _objective(args)
    params = GaParams(population_size=args.pop, generations=args.gens,
                      seed=args.seed)

    shared = None
    if args.shared_init:
        rng = np.random.default_rng(params.seed)
        biggest = largest_workload(workloads, max(space.bits_cell))
        shared = init_population(space, biggest, params.population_size,
                                 constants, rng)

    if args.mode == "joint":
        report = run_joint(space, workloads, spec, params, constants,
                           top=args.topk, initial_population=shared)
        reports = [report]
        tables = [("joint", cross_evaluate([i.config for i in report.topk],
                                           workloads, spec, constants))]
    else:
        reports = run_separate(space, workloads, spec, params, constants,
                               top=args.topk, shared_init=shared)
        tables = [(r.label, cross_evaluate([i.config for i in r.topk],
                                           workloads, spec, constants))
                  for r in reports]

    emit_reports(reports, tables, args.out)
    summary = {
        "runs": {r.label: {"best_score": r.topk[0].score.value if r.topk
                           and r.topk[0].score.feasible else None,
                           "evaluations": len(r.history),
                           "duration_s": r.duration_s}
                 for r in reports},
        "crosseval": {label: {"failed_pct": failed_fraction(t),
                              "best_recalculated":
                                  None if not best_recalculated(t).feasible
                                  else best_recalculated(t).value}
                      for label, t in tables},
    }
    with open(os.path.join(args.out, "summary.json"), "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=1)
        f.write("\n")
    for r in reports:
        best = r.topk[0].score.value if r.topk else math.inf
        print(f"{r.label}: {len(r.history)} evaluations, "
              f"best score {fmt(best)} ({r.duration_s:.2f}s)")
    for label, t in tables:
        print(f"crosseval {label}: failed {failed_fraction(t):.0f}%, "
              f"best recalculated {fmt(best_recalculated(t).value)}")
    print(f"artifacts in {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    config = _parse_config(args.space_config)
    workload = load_workload(args.workload)
    constants = _load_constants_arg(args.constants)
    result = evaluate(config, workload, constants)
    if isinstance(result, Infeasible):
        print(json.dumps({"feasible": False, "reason": result.reason}))
    else:
        print(json.dumps({"feasible": True, "energy_J": result.energy,
                          "latency_s": result.latency, "area_mm2": result.area}))
    return 0


def _cmd_crosseval(args) -> int:
    doc = read_topk_json(args.designs)
    designs = [entry["config"] for entry in doc["topk"]]
    if not designs:
        print("no designs in topk file", file=sys.stderr)
        return 1
    workloads = _load_workload_args(args.workloads)
    constants = _load_constants_arg(args.constants)
    spec = _objective(args)
    table = cross_evaluate(designs, workloads, spec, constants)
    out = args.out or "crosseval.csv"
    write_crosseval_csv(table, out)
    print(f"failed designs: {failed_fraction(table):.0f}%")
    print(f"best recalculated score: {fmt(best_recalculated(table).value)}")
    print(f"table written to {out}")
    return 0


def _cmd_oracle(args) -> int:
    space = _load_space_arg(args.space)
    workloads = _load_workload_args(args.workloads)
    constants = _load_constants_arg(args.constants)
    spec = _objective(args)
    result = brute_force_oracle(space, workloads, spec, constants)
    os.makedirs(args.out, exist_ok=True)
    best_path = os.path.join(args.out, "oracle_best.json")
    with open(best_path, "w", encoding="utf-8") as f:
        json.dump({
            "space_size": result.n_configs,
            "best_score": None if not result.best_score.feasible
            else result.best_score.value,
            "feasible_configs": int(result.feasible.sum()),
            "best_config": {n: getattr(result.best_config, n) for n in PARAM_NAMES},
        }, f, indent=1)
        f.write("\n")
    dump_path = os.path.join(args.out, "oracle_dump.csv")
    with open(dump_path, "w", encoding="utf-8") as f:
        f.write("index,score,feasible\n")
        for i in range(result.n_configs):
            f.write(f"{i},{fmt(float(result.values[i]))},"
                    f"{'true' if result.feasible[i] else 'false'}\n")
    print(f"{result.n_configs} configurations, "
          f"{int(result.feasible.sum())} feasible, "
          f"best score {fmt(result.best_score.value)}")
    print(f"artifacts in {args.out}")
    return 0


def _best_so_far(rows) -> list[float]:
    per_gen: dict[int, float] = {}
    best = math.inf
    for row in rows:
        if row["score"] < best:
            best = row["score"]
        per_gen[row["generation"]] = best
    return [per_gen[g] for g in sorted(per_gen)]


def _cmd_report(args) -> int:
    hist_files = sorted(glob.glob(os.path.join(args.indir, "*", "history.csv")))
    if not hist_files:
        print(f"no run directories with history.csv under '{args.indir}'",
              file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)
    curves = []
    summary: dict = {"runs": {}}
    for hf in hist_files:
        label = os.path.basename(os.path.dirname(hf))
        rows = read_history_csv(hf)
        curve = _best_so_far(rows)
        curves.append((label, curve))
        summary["runs"][label] = {
            "evaluations": len(rows),
            "best_score": None if math.isinf(curve[-1]) else curve[-1],
        }
    svg_path = os.path.join(args.out, "convergence.svg")
    with open(svg_path, "w", encoding="utf-8") as f:
        f.write(polyline_plot(curves, title="best score vs generation",
                              x_label="generation", y_label="score (log10)"))
    with open(os.path.join(args.out, "summary.json"), "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=1)
        f.write("\n")
    print(f"combined {len(curves)} runs into {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imcdse",
        description="design-space exploration for crossbar in-memory-computing chips")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_space=True):
        if with_space:
            p.add_argument("--space", help="search-space JSON file (default: built-in)")
        p.add_argument("--workloads", nargs="+",
                       help="workload files or directories (default: bundled CNNs)")
        p.add_argument("--constants", help="cost-constants JSON file")
        p.add_argument("--objective", choices=[f.value for f in ObjectiveForm],
                       default="ela", help="score form (default: ela)")
        p.add_argument("--area-limit", type=float, default=None,
                       help="area constraint in mm2 (default: unconstrained)")

    p = sub.add_parser("search", help="run the genetic search")
    p.add_argument("--mode", choices=["joint", "separate"], default="joint")
    add_common(p)
    p.add_argument("--pop", type=int, default=40, help="population size")
    p.add_argument("--gens", type=int, default=10, help="generations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--topk", type=int, default=10)
    p.add_argument("--shared-init", action="store_true",
                   help="start every run from one shared initial population")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("evaluate", help="cost one configuration on one workload")
    p.add_argument("--space-config", required=True,
                   help="chip configuration: inline JSON or a file path")
    p.add_argument("--workload", required=True, help="workload JSON file")
    p.add_argument("--constants")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("crosseval", help="re-score topk designs across workloads")
    p.add_argument("--designs", required=True, help="topk.json from a search run")
    add_common(p, with_space=False)
    p.add_argument("--out", help="output CSV path (default: crosseval.csv)")
    p.set_defaults(func=_cmd_crosseval)

    p = sub.add_parser("oracle", help="exhaustively grade a small space")
    add_common(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("report", help="rebuild plots/summary from run outputs")
    p.add_argument("--in", dest="indir", required=True, help="directory of run outputs")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
