"""Genetic search over the chip space: SBX + polynomial mutation + elitism.

The run keeps one pseudorandom stream (numpy PCG64, seeded once) and
consumes it in a fixed order so that identical inputs replay bit-exactly:

* initialisation: 9 uniforms per sampled genome, rejection-filtered until
  the population is full,
* per generation and per offspring pair: parent-1 tournament indices,
  parent-2 tournament indices, one crossover coin, 9 SBX uniforms when the
  coin fires, then per child 9 mutation coins followed by one uniform for
  each gene that mutates.

Every evaluated individual is appended to the run history; survivors are
the best P of parents plus offspring (stable sort, so parents win ties).
Only initialisation filters infeasible chips; later offspring keep their
+inf scores so the operators stay unconstrained.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cost import CostConstants, DEFAULT_CONSTANTS, estimate_area, evaluate, map_workload
from .objective import ObjectiveSpec, Score, better, score_joint
from .space import Genome, HardwareConfig, N_PARAMS, SearchSpace, decode, sample_random
from .workloads import Workload, total_cell_demand

__all__ = [
    "GaParams",
    "Individual",
    "History",
    "InitializationExhausted",
    "init_population",
    "sbx_crossover",
    "polynomial_mutation",
    "tournament_select",
    "largest_workload",
    "run_search",
    "top_k",
    "RNG_NAME",
]

RNG_NAME = "numpy-pcg64"

# Bound on consecutive rejection-sampling failures, per population slot.
_MAX_REJECTS_PER_SLOT = 10_000


class InitializationExhausted(RuntimeError):
    """Rejection sampling could not find enough feasible initial chips."""


@dataclass(frozen=True)
class GaParams:
    population_size: int = 40
    generations: int = 10
    crossover_prob: float = 0.95
    eta_crossover: float = 3.0
    eta_mutation: float = 3.0
    mutation_prob: float = 1.0 / N_PARAMS   # per gene
    tournament_size: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.population_size <= 0 or self.population_size % 2:
            raise ValueError("population_size must be a positive even number")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        for name in ("crossover_prob", "mutation_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be within [0, 1]")
        if self.eta_crossover <= 0 or self.eta_mutation <= 0:
            raise ValueError("distribution indices must be positive")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")


@dataclass(frozen=True)
class Individual:
    genome: Genome
    config: HardwareConfig
    score: Score
    generation_born: int


class History:
    """Append-only record of every evaluation made during a run."""

    def __init__(self):
        self._records: list[Individual] = []

    def append(self, ind: Individual) -> None:
        self._records.append(ind)

    @property
    def records(self) -> list[Individual]:
        return self._records

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def best(self) -> Individual:
        return top_k(self, 1)[0]


def top_k(history: History, k: int) -> list[Individual]:
    """Best k distinct chips of the run, feasible entries first.

    Duplicate configs collapse to their first occurrence; the stable
    ascending sort keeps earlier records ahead on score ties.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    seen: dict[HardwareConfig, Individual] = {}
    for ind in history:
        if ind.config not in seen:
            seen[ind.config] = ind
    ranked = sorted(seen.values(), key=lambda ind: ind.score.value)
    return ranked[:k]


def largest_workload(workloads, bits_cell: int) -> Workload:
    """Workload with the greatest stored-cell demand (first wins ties)."""
    best = None
    best_cells = -1
    for w in workloads:
        cells = total_cell_demand(w, bits_cell)
        if cells > best_cells:
            best, best_cells = w, cells
    return best


def init_population(space: SearchSpace, largest: Workload, population_size: int,
                    k: CostConstants, rng: np.random.Generator) -> list[Genome]:
    """Uniform random genomes, discarding chips that cannot hold `largest`."""
    genomes: list[Genome] = []
    rejects = 0
    limit = _MAX_REJECTS_PER_SLOT * population_size
    while len(genomes) < population_size:
        g = sample_random(space, rng)
        if map_workload(decode(g, space), largest, k).feasible:
            genomes.append(g)
            rejects = 0
        else:
            rejects += 1
            if rejects >= limit:
                raise InitializationExhausted(
                    f"{limit} consecutive rejections: the space cannot "
                    f"accommodate workload '{largest.name}'")
    return genomes


def sbx_crossover(p1: Genome, p2: Genome, eta: float,
                  rng: np.random.Generator) -> tuple[Genome, Genome]:
    """Simulated binary crossover, one spread factor per gene.

    beta = (2u)^(1/(eta+1)) for u <= 0.5, else (1/(2(1-u)))^(1/(eta+1));
    children are the symmetric blends 0.5*((1±beta)p1 + (1∓beta)p2),
    clamped to [0, 1].
    """
    u = rng.random(len(p1))
    beta = np.where(u <= 0.5,
                    (2.0 * u) ** (1.0 / (eta + 1.0)),
                    (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0)))
    c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    return np.clip(c1, 0.0, 1.0), np.clip(c2, 0.0, 1.0)


def polynomial_mutation(gene: float, eta: float, rng: np.random.Generator) -> float:
    """Polynomial mutation of a single gene over the [0, 1] box.

    delta = (2u)^(1/(eta+1)) - 1 for u < 0.5, else 1 - (2(1-u))^(1/(eta+1)).
    """
    u = rng.random()
    if u < 0.5:
        delta = (2.0 * u) ** (1.0 / (eta + 1.0)) - 1.0
    else:
        delta = 1.0 - (2.0 * (1.0 - u)) ** (1.0 / (eta + 1.0))
    return min(max(gene + delta, 0.0), 1.0)


def tournament_select(pop: list[Individual], size: int,
                      rng: np.random.Generator) -> Individual:
    """Draw `size` members with replacement; best score wins, first on ties."""
    idx = rng.integers(0, len(pop), size=size)
    winner = pop[idx[0]]
    for i in idx[1:]:
        if better(pop[i].score, winner.score):
            winner = pop[i]
    return winner


def _evaluate_genome(genome: Genome, space: SearchSpace, workloads,
                     spec: ObjectiveSpec, k: CostConstants,
                     generation: int) -> Individual:
    config = decode(genome, space)
    cells = tuple(evaluate(config, w, k) for w in workloads)
    score = score_joint(cells, estimate_area(config, k), spec)
    return Individual(genome.copy(), config, score, generation)


def run_search(space: SearchSpace, workloads, spec: ObjectiveSpec,
               params: GaParams, k: CostConstants = DEFAULT_CONSTANTS,
               initial_population: list[Genome] | None = None) -> History:
    """Full genetic run; returns the complete evaluation history.

    The initial population is filtered so every member can hold the
    largest workload of the set (by stored cells at the space's highest
    bits-per-cell level).  A caller may instead pass `initial_population`
    to share a starting set across runs; the sampling draws are then
    skipped but the evolution stream is unchanged.
    """
    workloads = list(workloads)
    if not workloads:
        raise ValueError("workloads must be non-empty")
    rng = np.random.default_rng(params.seed)
    P = params.population_size

    if initial_population is None:
        largest = largest_workload(workloads, max(space.bits_cell))
        genomes = init_population(space, largest, P, k, rng)
    else:
        if len(initial_population) != P:
            raise ValueError("initial_population size must equal population_size")
        genomes = [np.asarray(g, dtype=float) for g in initial_population]

    history = History()
    pop = []
    for g in genomes:
        ind = _evaluate_genome(g, space, workloads, spec, k, 0)
        history.append(ind)
        pop.append(ind)

    for gen in range(1, params.generations + 1):
        offspring: list[Individual] = []
        for _ in range(P // 2):
            a = tournament_select(pop, params.tournament_size, rng)
            b = tournament_select(pop, params.tournament_size, rng)
            if rng.random() < params.crossover_prob:
                c1, c2 = sbx_crossover(a.genome, b.genome, params.eta_crossover, rng)
            else:
                c1, c2 = a.genome.copy(), b.genome.copy()
            for child in (c1, c2):
                coins = rng.random(N_PARAMS)
                for j in np.flatnonzero(coins < params.mutation_prob):
                    child[j] = polynomial_mutation(child[j], params.eta_mutation, rng)
                ind = _evaluate_genome(child, space, workloads, spec, k, gen)
                history.append(ind)
                offspring.append(ind)
        merged = pop + offspring
        merged.sort(key=lambda ind: ind.score.value)   # stable: parents win ties
        pop = merged[:P]

    return history
