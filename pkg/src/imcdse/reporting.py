"""File outputs of a search run: history CSV, top-k JSON, cross-eval CSV,
and the convergence plot.

history.csv carries one row per evaluation in a fixed column order:

    generation, xbar_rows, xbar_cols, c_per_tile, t_per_router, g_per_chip,
    v_op, bits_cell, t_cycle_s, glb_bytes,
    energy_J_<workload> latency_s_<workload> ... (one pair per workload),
    area_mm2, score, feasible, reason

All files are UTF-8; floats are printed with 17 significant digits so a
parsed row re-scores to exactly the recorded value.  Infeasible metric
cells are left blank.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import asdict

from .cost import Infeasible, Metrics
from .experiments import CrossEvalTable, RunReport
from .space import PARAM_NAMES, HardwareConfig
from .svgplot import polyline_plot

__all__ = [
    "emit_reports",
    "write_history_csv",
    "read_history_csv",
    "write_topk_json",
    "read_topk_json",
    "write_crosseval_csv",
    "write_convergence_svg",
    "convergence_curve",
    "fmt",
]

_CONFIG_COLS = ("xbar_rows", "xbar_cols", "c_per_tile", "t_per_router",
                "g_per_chip", "v_op", "bits_cell", "t_cycle_s", "glb_bytes")


def fmt(x) -> str:
    """17-significant-digit text form; round-trips float64 exactly."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return format(x, ".17g")
    return str(x)


def _history_header(workload_names) -> list[str]:
    cols = ["generation", *_CONFIG_COLS]
    for name in workload_names:
        cols += [f"energy_J_{name}", f"latency_s_{name}"]
    cols += ["area_mm2", "score", "feasible", "reason"]
    return cols


def _config_fields(config: HardwareConfig) -> list[str]:
    return [str(config.xbar_rows), str(config.xbar_cols), str(config.c_per_tile),
            str(config.t_per_router), str(config.g_per_chip), fmt(config.v_op),
            str(config.bits_cell), fmt(config.t_cycle), str(config.glb_bytes)]


def write_history_csv(report: RunReport, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(_history_header(report.workload_names))
        for ind in report.history:
            row = [str(ind.generation_born), *_config_fields(ind.config)]
            for cell in ind.score.per_workload:
                if isinstance(cell, Metrics):
                    row += [fmt(cell.energy), fmt(cell.latency)]
                else:
                    row += ["", ""]
            row += [fmt(ind.score.area), fmt(ind.score.value),
                    "true" if ind.score.feasible else "false",
                    ind.score.reason or ""]
            writer.writerow(row)


def read_history_csv(path) -> list[dict]:
    """Rows as dicts with config values parsed back to native types."""
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        for raw in csv.DictReader(f):
            row = dict(raw)
            row["generation"] = int(raw["generation"])
            row["config"] = HardwareConfig(
                xbar_rows=int(raw["xbar_rows"]),
                xbar_cols=int(raw["xbar_cols"]),
                c_per_tile=int(raw["c_per_tile"]),
                t_per_router=int(raw["t_per_router"]),
                g_per_chip=int(raw["g_per_chip"]),
                v_op=float(raw["v_op"]),
                bits_cell=int(raw["bits_cell"]),
                t_cycle=float(raw["t_cycle_s"]),
                glb_bytes=int(raw["glb_bytes"]),
            )
            row["score"] = float(raw["score"])
            row["feasible"] = raw["feasible"] == "true"
            rows.append(row)
    return rows


def _config_dict(config: HardwareConfig) -> dict:
    return {name: getattr(config, name) for name in PARAM_NAMES}


def _metrics_dict(cell) -> dict:
    if isinstance(cell, Infeasible):
        return {"infeasible": cell.reason}
    return {"energy_J": cell.energy, "latency_s": cell.latency, "area_mm2": cell.area}


def write_topk_json(report: RunReport, path) -> None:
    doc = {
        "label": report.label,
        "seed": report.seed,
        "rng_algorithm": report.rng_algorithm,
        "params": asdict(report.params),
        "objective": {"form": report.objective.form.value,
                      "area_constraint_mm2": report.objective.area_constraint},
        "space_sha256": report.space_sha256,
        "constants_sha256": report.constants_sha256,
        "workloads": list(report.workload_names),
        "evaluations": len(report.history),
        "duration_s": report.duration_s,
        "topk": [
            {
                "rank": i + 1,
                "score": None if not ind.score.feasible else ind.score.value,
                "feasible": ind.score.feasible,
                "generation_born": ind.generation_born,
                "config": _config_dict(ind.config),
                "per_workload": {name: _metrics_dict(cell)
                                 for name, cell in zip(report.workload_names,
                                                       ind.score.per_workload)},
            }
            for i, ind in enumerate(report.topk)
        ],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def read_topk_json(path) -> dict:
    """topk.json contents with configs revived as HardwareConfig objects."""
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    for entry in doc["topk"]:
        entry["config"] = HardwareConfig(**entry["config"])
    return doc


def write_crosseval_csv(table: CrossEvalTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        header = ["design", *_CONFIG_COLS]
        for name in table.workload_names:
            header += [f"energy_J_{name}", f"latency_s_{name}", f"status_{name}"]
        header += ["recalculated_score", "feasible_all"]
        writer.writerow(header)
        for i, (design, row, score) in enumerate(
                zip(table.designs, table.cells, table.recalculated)):
            out = [str(i), *_config_fields(design)]
            for cell in row:
                if isinstance(cell, Metrics):
                    out += [fmt(cell.energy), fmt(cell.latency), "ok"]
                else:
                    out += ["", "", cell.reason]
            out += [fmt(score.value), "true" if score.feasible else "false"]
            writer.writerow(out)


def convergence_curve(report: RunReport) -> list[float]:
    """Best-so-far score after each generation (index 0 = initial pop)."""
    best = math.inf
    per_gen: dict[int, float] = {}
    for ind in report.history:
        if ind.score.value < best:
            best = ind.score.value
        per_gen[ind.generation_born] = best
    return [per_gen[g] for g in sorted(per_gen)]


def write_convergence_svg(reports, path, title="best score vs generation") -> None:
    curves = [(r.label, convergence_curve(r)) for r in reports]
    with open(path, "w", encoding="utf-8") as f:
        f.write(polyline_plot(curves, title=title,
                              x_label="generation", y_label="score (log10)"))


def emit_reports(reports, tables, out_dir) -> list[str]:
    """Write every artifact of a protocol run; returns the created paths.

    Layout: <out>/<run label>/history.csv and topk.json per run, a shared
    <out>/convergence.svg, and <out>/crosseval_<label>.csv per table
    (tables are (label, CrossEvalTable) pairs).
    """
    os.makedirs(out_dir, exist_ok=True)
    created = []
    for report in reports:
        run_dir = os.path.join(out_dir, report.label)
        os.makedirs(run_dir, exist_ok=True)
        hist = os.path.join(run_dir, "history.csv")
        write_history_csv(report, hist)
        topk = os.path.join(run_dir, "topk.json")
        write_topk_json(report, topk)
        created += [hist, topk]
    if reports:
        svg = os.path.join(out_dir, "convergence.svg")
        write_convergence_svg(reports, svg)
        created.append(svg)
    for label, table in tables:
        name = f"crosseval_{label}.csv" if label else "crosseval.csv"
        p = os.path.join(out_dir, name)
        write_crosseval_csv(table, p)
        created.append(p)
    return created
