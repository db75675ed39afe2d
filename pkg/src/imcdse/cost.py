"""Analytical energy / latency / area model for tiled crossbar chips.

The model is deliberately closed-form so that evaluation is deterministic,
microsecond-fast and easy to cross-check by hand:

* every stored cell of a layer is read once per input bit-slice (dense
  activation, data-independent),
* each occupied column needs one ADC conversion per bit-slice,
* activations pass once through the tile buffers and the global buffer,
* outputs cross ``ceil(log2(g_per_chip))`` router hops,
* dynamic terms scale with ``(v_op / v_nom)**2``,
* the reachable clock follows an alpha-power-style law
  ``f_max(v) = f_ref * ((v - v_th) / (v_nom - v_th))**2 * (v_nom / v)``.

Layers run sequentially; all crossbars of one layer operate in parallel.
Units throughout: joules, seconds, mm2, bytes, hertz, volts.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, fields, replace

import numpy as np

from .space import HardwareConfig
from .workloads import Workload, demand_table

__all__ = [
    "CostConstants",
    "DEFAULT_CONSTANTS",
    "Metrics",
    "Infeasible",
    "MappingResult",
    "InfeasibleMappingError",
    "REASON_CAPACITY",
    "REASON_BUFFER",
    "REASON_TIMING",
    "max_frequency",
    "check_timing",
    "map_workload",
    "estimate_area",
    "estimate_latency",
    "estimate_energy",
    "evaluate",
    "constants_from_dict",
    "load_constants",
    "constants_digest",
]

REASON_CAPACITY = "capacity"
REASON_BUFFER = "buffer"
REASON_TIMING = "timing"


class InfeasibleMappingError(ValueError):
    """Raised when a metric estimator is handed an infeasible mapping."""


@dataclass(frozen=True)
class CostConstants:
    """Calibration constants of the analytical model.

    Defaults are literature-plausible placeholders for a 32nm-class RRAM
    process; all of them can be overridden from a constants file.
    """

    v_nom: float = 1.0            # V, nominal supply
    v_th: float = 0.3             # V, threshold
    f_ref: float = 1e9            # Hz, max clock at v_nom
    e_cell: float = 50e-15        # J per active cell per bit-slice at v_nom
    e_adc: float = 2e-12          # J per 8-bit conversion at v_nom
    e_buf: float = 0.5e-12        # J/byte, tile buffer access
    e_glb: float = 1e-12          # J/byte, global buffer access
    e_route: float = 1e-12        # J/(byte*hop)
    a_cell: float = 3e-7          # mm2 per RRAM cell
    a_adc: float = 1.5e-3         # mm2 per ADC
    a_router: float = 5e-3        # mm2 per router
    a_glb: float = 2e-7           # mm2 per byte of global buffer
    tile_overhead: float = 0.2    # drivers/buffers fraction on top of arrays
    cols_per_adc: int = 8         # columns multiplexed onto one ADC
    glb_width: int = 32           # bytes moved per cycle

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"constant '{f.name}' must be positive")
        if self.v_th >= self.v_nom:
            raise ValueError("v_th must be below v_nom")
        if self.tile_overhead > 1.0:
            raise ValueError("tile_overhead must be within [0, 1]")


DEFAULT_CONSTANTS = CostConstants()

_FIELD_NAMES = tuple(f.name for f in fields(CostConstants))


def constants_from_dict(doc: dict) -> CostConstants:
    """Constants file contents: missing fields take defaults, unknown fields error."""
    unknown = set(doc) - set(_FIELD_NAMES)
    if unknown:
        raise ValueError(f"unknown cost constant '{sorted(unknown)[0]}'")
    return replace(DEFAULT_CONSTANTS, **doc)


def load_constants(path) -> CostConstants:
    with open(path, "r", encoding="utf-8") as f:
        return constants_from_dict(json.load(f))


def constants_digest(k: CostConstants) -> str:
    blob = json.dumps({f: getattr(k, f) for f in _FIELD_NAMES}, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class Metrics:
    """Per-workload cost of a feasible chip."""

    energy: float    # J
    latency: float   # s
    area: float      # mm2


@dataclass(frozen=True)
class Infeasible:
    """Evaluation verdict for a chip that cannot run the workload."""

    reason: str


@dataclass(frozen=True)
class MappingResult:
    per_layer_crossbars: np.ndarray   # int64, one entry per layer
    total_crossbars_used: int
    peak_activation_bytes: int        # max over layers of input+output bytes
    feasible: bool
    reason: str | None


def max_frequency(v_op: float, k: CostConstants) -> float:
    """Reachable clock at supply v_op (Hz)."""
    return k.f_ref * ((v_op - k.v_th) / (k.v_nom - k.v_th)) ** 2 * (k.v_nom / v_op)


def check_timing(config: HardwareConfig, k: CostConstants) -> bool:
    """True when the chosen cycle time is reachable at the chosen voltage."""
    return 1.0 / config.t_cycle <= max_frequency(config.v_op, k)


def map_workload(config: HardwareConfig, w: Workload,
                 k: CostConstants = DEFAULT_CONSTANTS) -> MappingResult:
    """Tile every layer onto crossbars and check the three fit conditions.

    A layer of (rows_req x cols_req) x replicas occupies
    ``replicas * ceil(rows_req/xbar_rows) * ceil(cols_req/xbar_cols)``
    crossbars.  Feasibility needs enough crossbars, a global buffer that
    holds the largest layer's input+output, and reachable timing; the
    recorded reason is the first failure in that order.
    """
    t = demand_table(w, config.bits_cell)
    row_tiles = -(t.rows // -config.xbar_rows)
    col_tiles = -(t.cols // -config.xbar_cols)
    per_layer = t.replicas * row_tiles * col_tiles
    total = int(per_layer.sum())
    traffic = t.input_bytes + t.output_bytes
    peak = int(traffic.max()) if traffic.size else 0

    reason = None
    if total > config.total_crossbars:
        reason = REASON_CAPACITY
    elif peak > config.glb_bytes:
        reason = REASON_BUFFER
    elif not check_timing(config, k):
        reason = REASON_TIMING
    return MappingResult(per_layer, total, peak, reason is None, reason)


def estimate_area(config: HardwareConfig, k: CostConstants = DEFAULT_CONSTANTS) -> float:
    """Chip area in mm2; depends only on the configuration."""
    adcs_per_xbar = -(config.xbar_cols // -k.cols_per_adc)
    xbar_area = config.xbar_rows * config.xbar_cols * k.a_cell + adcs_per_xbar * k.a_adc
    tile_area = (1.0 + k.tile_overhead) * config.c_per_tile * xbar_area
    return (config.total_tiles * tile_area
            + config.g_per_chip * k.a_router
            + config.glb_bytes * k.a_glb)


def estimate_latency(config: HardwareConfig, mapping: MappingResult,
                     w: Workload, k: CostConstants = DEFAULT_CONSTANTS) -> float:
    """Seconds for one inference pass, layers strictly sequential.

    Per MVM the crossbar streams activation_bits input slices while each
    ADC serves cols_per_adc columns; per layer the activations cross the
    global buffer at glb_width bytes per cycle.
    """
    if not mapping.feasible:
        raise InfeasibleMappingError(f"mapping infeasible ({mapping.reason})")
    t = demand_table(w, config.bits_cell)
    cycles_per_mvm = w.activation_bits * k.cols_per_adc
    compute_cycles = int((t.mvms * cycles_per_mvm).sum())
    traffic = t.input_bytes + t.output_bytes
    transfer_cycles = int((-(traffic // -k.glb_width)).sum())
    return (compute_cycles + transfer_cycles) * config.t_cycle


def estimate_energy(config: HardwareConfig, mapping: MappingResult,
                    w: Workload, k: CostConstants = DEFAULT_CONSTANTS) -> float:
    """Joules for one inference pass.

    Per MVM every stored cell of the layer is read once per bit-slice and
    every occupied column converts once per bit-slice; per layer the
    activations pay buffer and routing energy.  All terms carry the
    quadratic supply scaling.
    """
    if not mapping.feasible:
        raise InfeasibleMappingError(f"mapping infeasible ({mapping.reason})")
    t = demand_table(w, config.bits_cell)
    ab = w.activation_bits
    stored_cols = t.cols * t.replicas
    cell_per_mvm = t.rows.astype(np.float64) * stored_cols * ab * k.e_cell
    adc_per_mvm = stored_cols.astype(np.float64) * ab * k.e_adc
    mvm_energy = float((t.mvms * (cell_per_mvm + adc_per_mvm)).sum())
    traffic = (t.input_bytes + t.output_bytes).astype(np.float64)
    hops = (config.g_per_chip - 1).bit_length()  # ceil(log2(g_per_chip))
    static_energy = float((traffic * (k.e_buf + k.e_glb)).sum()) \
        + float((t.output_bytes * hops * k.e_route).sum())
    scale = (config.v_op / k.v_nom) ** 2
    return (mvm_energy + static_energy) * scale


def evaluate(config: HardwareConfig, w: Workload,
             k: CostConstants = DEFAULT_CONSTANTS) -> Metrics | Infeasible:
    """Full cost of one (chip, workload) pair; a pure function.

    Timing is gated first, then the mapping; infeasibility is a value,
    never an exception.
    """
    if not check_timing(config, k):
        return Infeasible(REASON_TIMING)
    mapping = map_workload(config, w, k)
    if not mapping.feasible:
        return Infeasible(mapping.reason)
    return Metrics(
        energy=estimate_energy(config, mapping, w, k),
        latency=estimate_latency(config, mapping, w, k),
        area=estimate_area(config, k),
    )
