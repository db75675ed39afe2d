"""CNN workloads as ordered lists of matrix-multiply-bearing layers.

Only layers that occupy crossbar arrays are described: standard and
depthwise convolutions plus fully-connected layers.  Pooling, activation
and normalisation stages hold no weights and are excluded from the cost
accounting.

Weights are mapped weight-stationary: each conv/fc layer becomes one
logical matrix of ``kernel_h*kernel_w*in_channels`` rows by
``out_channels*cells_per_weight`` columns; a depthwise layer stores one
small per-channel matrix replicated ``in_channels`` times.  Signed weights
are value-encoded inside the per-weight cell group (no differential column
pairs).

Bundled networks (``load_bundled``): vgg16, resnet18, alexnet and
mobilenetv3_large, all at 224x224 input with 8-bit weights/activations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import NamedTuple

import numpy as np

__all__ = [
    "LayerKind",
    "Layer",
    "Workload",
    "StorageDemand",
    "DemandTable",
    "WorkloadError",
    "WorkloadSchemaError",
    "WorkloadValidationError",
    "parse_workload",
    "serialize_workload",
    "load_workload",
    "load_bundled",
    "load_default_workloads",
    "BUNDLED_NAMES",
    "layer_storage_demand",
    "layer_mvm_count",
    "layer_activation_bytes",
    "total_cell_demand",
    "demand_table",
]


class WorkloadError(ValueError):
    """Base error for workload documents."""


class WorkloadSchemaError(WorkloadError):
    """Document does not follow the workload schema."""


class WorkloadValidationError(WorkloadError):
    """Layer fields violate a structural invariant."""


class LayerKind(str, Enum):
    CONV = "conv"
    DWCONV = "dwconv"
    FC = "fc"


@dataclass(frozen=True)
class Layer:
    """Shape record of one MVM-bearing layer.

    Spatial fields are output/input positions, not padded extents; for
    fully-connected layers every spatial field is 1.
    """

    kind: LayerKind
    kernel_h: int
    kernel_w: int
    in_channels: int
    out_channels: int
    in_h: int
    in_w: int
    out_h: int
    out_w: int

    @classmethod
    def conv(cls, k, cin, cout, inp, out) -> "Layer":
        return cls(LayerKind.CONV, k[0], k[1], cin, cout, inp[0], inp[1], out[0], out[1])

    @classmethod
    def dwconv(cls, k, channels, inp, out) -> "Layer":
        return cls(LayerKind.DWCONV, k[0], k[1], channels, channels, inp[0], inp[1], out[0], out[1])

    @classmethod
    def fc(cls, cin, cout) -> "Layer":
        return cls(LayerKind.FC, 1, 1, cin, cout, 1, 1, 1, 1)


@dataclass(frozen=True)
class Workload:
    """A named network: an ordered tuple of layers plus bit widths."""

    name: str
    layers: tuple[Layer, ...]
    weight_bits: int = 8
    activation_bits: int = 8
    # per-bits_per_cell demand tables, built lazily (see demand_table)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)


class StorageDemand(NamedTuple):
    rows_req: int
    cols_req: int
    replicas: int


def _validate_layer(layer: Layer, index: int) -> None:
    for name in ("kernel_h", "kernel_w", "in_channels", "out_channels",
                 "in_h", "in_w", "out_h", "out_w"):
        v = getattr(layer, name)
        if not isinstance(v, int) or v < 1:
            raise WorkloadValidationError(
                f"layer {index}: field '{name}' must be a positive integer, got {v!r}")
    if layer.kind == LayerKind.DWCONV and layer.out_channels != layer.in_channels:
        raise WorkloadValidationError(
            f"layer {index}: depthwise layer needs out_channels == in_channels "
            f"(got {layer.in_channels} -> {layer.out_channels})")
    if layer.kind == LayerKind.FC:
        ones = (layer.kernel_h, layer.kernel_w, layer.in_h, layer.in_w,
                layer.out_h, layer.out_w)
        if ones != (1, 1, 1, 1, 1, 1):
            raise WorkloadValidationError(
                f"layer {index}: fully-connected layer must have unit kernel and "
                f"unit spatial dims")


def cells_per_weight(weight_bits: int, bits_per_cell: int) -> int:
    """Number of memory cells holding one weight."""
    if not 1 <= bits_per_cell <= weight_bits:
        raise ValueError(
            f"bits_per_cell must be in 1..{weight_bits}, got {bits_per_cell}")
    return -(-weight_bits // bits_per_cell)


def layer_storage_demand(layer: Layer, bits_per_cell: int,
                         weight_bits: int = 8) -> StorageDemand:
    """Rows, columns and replica count of the layer's stored weight matrix.

    Conv folds the kernel window into rows; depthwise keeps one small
    matrix per channel (replicas = in_channels).
    """
    cpw = cells_per_weight(weight_bits, bits_per_cell)
    if layer.kind == LayerKind.CONV:
        return StorageDemand(layer.kernel_h * layer.kernel_w * layer.in_channels,
                             layer.out_channels * cpw, 1)
    if layer.kind == LayerKind.DWCONV:
        return StorageDemand(layer.kernel_h * layer.kernel_w, cpw, layer.in_channels)
    return StorageDemand(layer.in_channels, layer.out_channels * cpw, 1)


def layer_mvm_count(layer: Layer) -> int:
    """Matrix-vector multiplies needed for one inference pass of the layer."""
    if layer.kind == LayerKind.FC:
        return 1
    return layer.out_h * layer.out_w


def layer_activation_bytes(layer: Layer, activation_bits: int = 8) -> tuple[int, int]:
    """(input_bytes, output_bytes) of the layer's activation tensors."""
    if activation_bits % 8 != 0:
        raise ValueError(f"activation_bits must be a multiple of 8, got {activation_bits}")
    per = activation_bits // 8
    return (layer.in_h * layer.in_w * layer.in_channels * per,
            layer.out_h * layer.out_w * layer.out_channels * per)


def total_cell_demand(workload: Workload, bits_per_cell: int) -> int:
    """Total stored cells across all layers; the 'size' a chip must absorb."""
    total = 0
    for layer in workload.layers:
        d = layer_storage_demand(layer, bits_per_cell, workload.weight_bits)
        total += d.rows_req * d.cols_req * d.replicas
    return total


@dataclass(frozen=True)
class DemandTable:
    """Per-layer demands as arrays, for vectorised cost evaluation."""

    rows: np.ndarray
    cols: np.ndarray
    replicas: np.ndarray
    mvms: np.ndarray
    input_bytes: np.ndarray
    output_bytes: np.ndarray


def demand_table(workload: Workload, bits_per_cell: int) -> DemandTable:
    """Build (and memoise on the workload) the layer demand arrays."""
    cached = workload._cache.get(bits_per_cell)
    if cached is not None:
        return cached
    demands = [layer_storage_demand(l, bits_per_cell, workload.weight_bits)
               for l in workload.layers]
    acts = [layer_activation_bytes(l, workload.activation_bits)
            for l in workload.layers]
    table = DemandTable(
        rows=np.array([d.rows_req for d in demands], dtype=np.int64),
        cols=np.array([d.cols_req for d in demands], dtype=np.int64),
        replicas=np.array([d.replicas for d in demands], dtype=np.int64),
        mvms=np.array([layer_mvm_count(l) for l in workload.layers], dtype=np.int64),
        input_bytes=np.array([a[0] for a in acts], dtype=np.int64),
        output_bytes=np.array([a[1] for a in acts], dtype=np.int64),
    )
    workload._cache[bits_per_cell] = table
    return table


# --- document parsing -------------------------------------------------------

_LAYER_KEYS = {"kind", "k", "cin", "cout", "in", "out"}
_TOP_KEYS = {"name", "weight_bits", "activation_bits", "layers"}


def _require_int(obj, key: str, where: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise WorkloadSchemaError(f"{where}: field '{key}' must be an integer, got {v!r}")
    return v


def _pair(obj, key: str, where: str, default=None) -> tuple[int, int]:
    if key not in obj:
        if default is not None:
            return default
        raise WorkloadSchemaError(f"{where}: missing field '{key}'")
    v = obj[key]
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in v)):
        raise WorkloadSchemaError(f"{where}: field '{key}' must be a pair of integers")
    return (v[0], v[1])


def parse_workload(document) -> Workload:
    """Parse a workload document (JSON text or an already-decoded dict).

    Schema: {"name": str, "weight_bits": int, "activation_bits": int,
    "layers": [{"kind": "conv"|"dwconv"|"fc", "k": [kh,kw], "cin": int,
    "cout": int, "in": [h,w], "out": [h,w]}]}.  FC entries may omit
    "k"/"in"/"out" (default 1s); bit widths default to 8.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise WorkloadSchemaError(f"not valid JSON: {e}") from e
    if not isinstance(document, dict):
        raise WorkloadSchemaError("top level must be an object")
    unknown = set(document) - _TOP_KEYS
    if unknown:
        raise WorkloadSchemaError(f"unknown field '{sorted(unknown)[0]}'")
    name = document.get("name")
    if not isinstance(name, str) or not name:
        raise WorkloadSchemaError(f"field 'name' must be a non-empty string, got {name!r}")
    wb = _require_int(document, "weight_bits", "top level") if "weight_bits" in document else 8
    ab = _require_int(document, "activation_bits", "top level") if "activation_bits" in document else 8
    if wb < 1:
        raise WorkloadSchemaError(f"field 'weight_bits' must be positive, got {wb}")
    if ab < 1:
        raise WorkloadSchemaError(f"field 'activation_bits' must be positive, got {ab}")
    raw_layers = document.get("layers")
    if not isinstance(raw_layers, list):
        raise WorkloadSchemaError("field 'layers' must be a list")
    if not raw_layers:
        raise WorkloadValidationError("field 'layers' must be non-empty")

    layers = []
    for i, obj in enumerate(raw_layers):
        where = f"layer {i}"
        if not isinstance(obj, dict):
            raise WorkloadSchemaError(f"{where}: must be an object")
        unknown = set(obj) - _LAYER_KEYS
        if unknown:
            raise WorkloadSchemaError(f"{where}: unknown field '{sorted(unknown)[0]}'")
        kind_s = obj.get("kind")
        try:
            kind = LayerKind(kind_s)
        except ValueError:
            raise WorkloadSchemaError(
                f"{where}: field 'kind' must be one of conv/dwconv/fc, got {kind_s!r}") from None
        cin = _require_int(obj, "cin", where)
        cout = _require_int(obj, "cout", where)
        fc = kind == LayerKind.FC
        k = _pair(obj, "k", where, default=(1, 1) if fc else None)
        inp = _pair(obj, "in", where, default=(1, 1) if fc else None)
        out = _pair(obj, "out", where, default=(1, 1) if fc else None)
        layer = Layer(kind, k[0], k[1], cin, cout, inp[0], inp[1], out[0], out[1])
        _validate_layer(layer, i)
        layers.append(layer)

    return Workload(name=name, layers=tuple(layers), weight_bits=wb, activation_bits=ab)


def serialize_workload(workload: Workload) -> dict:
    """Inverse of parse_workload (canonical form: FC entries omit k/in/out)."""
    layers = []
    for l in workload.layers:
        if l.kind == LayerKind.FC:
            layers.append({"kind": "fc", "cin": l.in_channels, "cout": l.out_channels})
        else:
            layers.append({
                "kind": l.kind.value,
                "k": [l.kernel_h, l.kernel_w],
                "cin": l.in_channels,
                "cout": l.out_channels,
                "in": [l.in_h, l.in_w],
                "out": [l.out_h, l.out_w],
            })
    return {
        "name": workload.name,
        "weight_bits": workload.weight_bits,
        "activation_bits": workload.activation_bits,
        "layers": layers,
    }


def load_workload(path) -> Workload:
    with open(path, "r", encoding="utf-8") as f:
        return parse_workload(f.read())


BUNDLED_NAMES = ("vgg16", "resnet18", "alexnet", "mobilenetv3_large")


def load_bundled(name: str) -> Workload:
    if name not in BUNDLED_NAMES:
        raise KeyError(f"no bundled workload '{name}' (have {', '.join(BUNDLED_NAMES)})")
    text = resources.files("imcdse.data").joinpath(f"{name}.json").read_text("utf-8")
    return parse_workload(text)


def load_default_workloads() -> tuple[Workload, ...]:
    """The four bundled CNNs, in the canonical protocol order."""
    return tuple(load_bundled(n) for n in BUNDLED_NAMES)
