"""Scalar scores for single- and multi-workload chip comparison.

Scores are products of metric factors (lower is better).  Joint scoring
takes the worst energy and worst latency across the workload set, so a
chip is judged by the workload it serves worst.  Chips that fail any
workload, or exceed the area limit, score +inf and lose every comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .cost import Infeasible, Metrics

__all__ = [
    "ObjectiveForm",
    "ObjectiveSpec",
    "Score",
    "INFEASIBLE",
    "score_single",
    "score_joint",
    "better",
]

INFEASIBLE = math.inf


class ObjectiveForm(str, Enum):
    ELA = "ela"      # energy * latency * area
    EL = "el"        # energy * latency
    ED2A = "ed2a"    # energy * latency^2 * area


@dataclass(frozen=True)
class ObjectiveSpec:
    form: ObjectiveForm = ObjectiveForm.ELA
    area_constraint: float | None = None   # mm2; None = unconstrained

    def __post_init__(self):
        if self.area_constraint is not None and self.area_constraint <= 0:
            raise ValueError("area_constraint must be positive")


@dataclass(frozen=True)
class Score:
    """Scalar objective value; +inf marks an infeasible candidate."""

    value: float
    feasible: bool
    per_workload: tuple      # Metrics | Infeasible entries, run order
    reason: str | None = None
    area: float | None = None   # chip area the score was computed with, mm2

    def __post_init__(self):
        assert self.feasible == (self.value != INFEASIBLE)


def _product(form: ObjectiveForm, energy: float, latency: float, area: float) -> float:
    if form == ObjectiveForm.ELA:
        return energy * latency * area
    if form == ObjectiveForm.EL:
        return energy * latency
    return energy * latency * latency * area


def score_single(m: Metrics, spec: ObjectiveSpec = ObjectiveSpec()) -> Score:
    """Score one workload's metrics under the objective."""
    if spec.area_constraint is not None and m.area > spec.area_constraint:
        return Score(INFEASIBLE, False, (m,), reason="area", area=m.area)
    return Score(_product(spec.form, m.energy, m.latency, m.area), True, (m,),
                 area=m.area)


def score_joint(per_workload: Sequence[Metrics | Infeasible], area: float,
                spec: ObjectiveSpec = ObjectiveSpec()) -> Score:
    """Worst-case-aggregated score across workloads evaluated on one chip.

    Maxima of energy and latency are taken independently; any infeasible
    entry (or an area violation) makes the whole candidate infeasible.
    """
    entries = tuple(per_workload)
    if not entries:
        raise ValueError("per_workload must be non-empty")
    for i, m in enumerate(entries):
        if isinstance(m, Infeasible):
            return Score(INFEASIBLE, False, entries, reason=f"{m.reason}[{i}]",
                         area=area)
    if spec.area_constraint is not None and area > spec.area_constraint:
        return Score(INFEASIBLE, False, entries, reason="area", area=area)
    energy = max(m.energy for m in entries)
    latency = max(m.latency for m in entries)
    return Score(_product(spec.form, energy, latency, area), True, entries, area=area)


def better(a: Score, b: Score) -> bool:
    """Strictly better: lower value wins, ties and inf-vs-inf are not better."""
    return a.value < b.value
