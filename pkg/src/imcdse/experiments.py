"""Search protocols: joint vs. per-workload runs, cross-evaluation, oracle.

A joint run scores every chip on all workloads at once (worst-case
aggregation); separate runs optimise each workload on its own and their
winners are then re-scored on the full set ("recalculated" joint scores)
so both strategies can be compared on equal terms.  The exhaustive oracle
grades small spaces exactly and anchors the correctness tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from .cost import (CostConstants, DEFAULT_CONSTANTS, Infeasible,
                   constants_digest, estimate_area, evaluate)
from .evolution import (GaParams, History, Individual, RNG_NAME,
                        run_search, top_k)
from .objective import ObjectiveSpec, Score, better, score_joint, score_single
from .space import (HardwareConfig, SearchSpace, decode,
                    enumerate_genomes, space_digest, space_size)

__all__ = [
    "RunReport",
    "CrossEvalTable",
    "OracleResult",
    "SpaceTooLargeError",
    "ORACLE_SPACE_LIMIT",
    "run_joint",
    "run_separate",
    "cross_evaluate",
    "failed_fraction",
    "score_loss",
    "score_loss_table",
    "brute_force_oracle",
    "best_recalculated",
]

ORACLE_SPACE_LIMIT = 1_000_000


class SpaceTooLargeError(ValueError):
    """The exhaustive oracle refuses spaces beyond ORACLE_SPACE_LIMIT."""


@dataclass(frozen=True)
class RunReport:
    """Everything needed to replay and summarise one search run."""

    label: str
    seed: int
    params: GaParams
    objective: ObjectiveSpec
    space: SearchSpace
    space_sha256: str
    constants_sha256: str
    rng_algorithm: str
    workload_names: tuple[str, ...]
    history: History
    topk: list[Individual]
    duration_s: float


@dataclass(frozen=True)
class CrossEvalTable:
    """Designs x workloads metric grid with recalculated joint scores."""

    designs: tuple[HardwareConfig, ...]
    workload_names: tuple[str, ...]
    cells: tuple   # rows of (Metrics | Infeasible) tuples, one per design
    recalculated: tuple[Score, ...]


def _report(label: str, space: SearchSpace, workloads, spec: ObjectiveSpec,
            params: GaParams, k: CostConstants, history: History,
            top: int, duration: float) -> RunReport:
    return RunReport(
        label=label,
        seed=params.seed,
        params=params,
        objective=spec,
        space=space,
        space_sha256=space_digest(space),
        constants_sha256=constants_digest(k),
        rng_algorithm=RNG_NAME,
        workload_names=tuple(w.name for w in workloads),
        history=history,
        topk=top_k(history, top),
        duration_s=duration,
    )


def run_joint(space: SearchSpace, workloads, spec: ObjectiveSpec,
              params: GaParams, k: CostConstants = DEFAULT_CONSTANTS,
              top: int = 10, initial_population=None) -> RunReport:
    """One search over all workloads jointly."""
    workloads = list(workloads)
    start = time.perf_counter()
    history = run_search(space, workloads, spec, params, k,
                         initial_population=initial_population)
    return _report("joint", space, workloads, spec, params, k, history,
                   top, time.perf_counter() - start)


def run_separate(space: SearchSpace, workloads, spec: ObjectiveSpec,
                 params: GaParams, k: CostConstants = DEFAULT_CONSTANTS,
                 top: int = 10, shared_init: list | None = None) -> list[RunReport]:
    """One independent search per workload, seeds offset by workload index.

    Each run is initialised against its own workload only, which is what
    lets its winners fail larger workloads later.  Passing `shared_init`
    starts every run from that same genome set instead.
    """
    reports = []
    for i, w in enumerate(list(workloads)):
        p = replace(params, seed=params.seed + i)
        start = time.perf_counter()
        history = run_search(space, [w], spec, p, k, initial_population=shared_init)
        reports.append(_report(f"separate_{w.name}", space, [w], spec, p, k,
                               history, top, time.perf_counter() - start))
    return reports


def cross_evaluate(designs, workloads, spec: ObjectiveSpec,
                   k: CostConstants = DEFAULT_CONSTANTS) -> CrossEvalTable:
    """Re-score every design on every workload, filling infeasible cells."""
    designs = tuple(designs)
    workloads = list(workloads)
    if not designs or not workloads:
        raise ValueError("cross_evaluate needs at least one design and one workload")
    rows = []
    recalc = []
    for d in designs:
        cells = tuple(evaluate(d, w, k) for w in workloads)
        rows.append(cells)
        recalc.append(score_joint(cells, estimate_area(d, k), spec))
    return CrossEvalTable(designs, tuple(w.name for w in workloads),
                          tuple(rows), tuple(recalc))


def failed_fraction(table: CrossEvalTable) -> float:
    """Percentage of designs that cannot run at least one workload."""
    if not table.cells:
        raise ValueError("empty cross-evaluation table")
    failed = sum(1 for row in table.cells
                 if any(isinstance(c, Infeasible) for c in row))
    return 100.0 * failed / len(table.cells)


def best_recalculated(table: CrossEvalTable) -> Score:
    """Lowest recalculated joint score in the table."""
    best = table.recalculated[0]
    for s in table.recalculated[1:]:
        if better(s, best):
            best = s
    return best


def score_loss(joint_recalc: Score, specific_best: Score) -> float | None:
    """Percent score lost by the generalised design on one workload.

    Both scores must be single-workload scores on the same workload:
    `specific_best` from the workload's own search, `joint_recalc` the
    joint winner re-scored on that workload.  Returns None when either
    side is infeasible (no defined loss).
    """
    if not joint_recalc.feasible or not specific_best.feasible:
        return None
    return 100.0 * (1.0 - specific_best.value / joint_recalc.value)


def score_loss_table(joint_report: RunReport, separate_reports, workloads,
                     spec: ObjectiveSpec,
                     k: CostConstants = DEFAULT_CONSTANTS) -> dict[str, float | None]:
    """Per-workload loss of the joint winner vs. each workload's own winner."""
    workloads = {w.name: w for w in workloads}
    joint_best = joint_report.topk[0].config
    losses: dict[str, float | None] = {}
    for rep in separate_reports:
        name = rep.workload_names[0]
        w = workloads[name]
        m = evaluate(joint_best, w, k)
        if isinstance(m, Infeasible):
            losses[name] = None
            continue
        joint_recalc = score_single(m, spec)
        losses[name] = score_loss(joint_recalc, rep.topk[0].score)
    return losses


@dataclass(frozen=True)
class OracleResult:
    """Exhaustive grading of a whole space.

    `values` / `feasible` follow the enumeration order of
    `space.enumerate_genomes` (lexicographic level indices, last
    parameter fastest), so row i can be re-derived from i alone.
    """

    best_config: HardwareConfig
    best_score: Score
    values: np.ndarray
    feasible: np.ndarray
    n_configs: int


def brute_force_oracle(space: SearchSpace, workloads, spec: ObjectiveSpec,
                       k: CostConstants = DEFAULT_CONSTANTS) -> OracleResult:
    """Evaluate every configuration of a small space and return the optimum."""
    n = space_size(space)
    if n > ORACLE_SPACE_LIMIT:
        raise SpaceTooLargeError(
            f"space has {n} configurations (> {ORACLE_SPACE_LIMIT}); "
            f"shrink the space file before running the oracle")
    workloads = list(workloads)
    values = np.empty(n)
    feas = np.empty(n, dtype=bool)
    best_config = None
    best_score = None
    for i, genome in enumerate(enumerate_genomes(space)):
        config = decode(genome, space)
        cells = tuple(evaluate(config, w, k) for w in workloads)
        score = score_joint(cells, estimate_area(config, k), spec)
        values[i] = score.value
        feas[i] = score.feasible
        if best_score is None or better(score, best_score):
            best_config, best_score = config, score
    return OracleResult(best_config, best_score, values, feas, n)
