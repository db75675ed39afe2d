#!/usr/bin/env python3
"""Tour of the bundled CNN workloads and what they ask of a crossbar chip.

Every network is an ordered list of MVM-bearing layers; each layer turns
into a stored weight matrix (rows x columns, possibly replicated per
channel for depthwise convolutions).  This script prints the per-network
totals and shows how the bits-per-cell choice changes the footprint.
"""

from imcdse import (load_default_workloads, layer_storage_demand,
                    layer_mvm_count, layer_activation_bytes, total_cell_demand)

workloads = load_default_workloads()

print("=== bundled workloads ===")
for w in workloads:
    mvms = sum(layer_mvm_count(l) for l in w.layers)
    peak = max(sum(layer_activation_bytes(l, w.activation_bits)) for l in w.layers)
    print(f"{w.name:>20}: {len(w.layers):3d} layers, "
          f"{total_cell_demand(w, w.weight_bits)/1e6:7.2f}M weights, "
          f"{mvms:>9,} MVMs/inference, peak layer traffic {peak/1024:.0f} KiB")

print("\n=== storage vs bits per cell (total cells) ===")
header = " ".join(f"{b}b/cell".rjust(10) for b in (1, 2, 3, 4))
print(f"{'':>20}  {header}")
for w in workloads:
    cells = [f"{total_cell_demand(w, b)/1e6:9.1f}M" for b in (1, 2, 3, 4)]
    print(f"{w.name:>20}: {' '.join(cells)}")

print("\n=== first layers of vgg16, mapped at 2 bits/cell ===")
vgg = workloads[0]
print(f"{'kind':>8} {'rows':>6} {'cols':>6} {'reps':>5} {'MVMs':>7}")
for layer in vgg.layers[:5]:
    d = layer_storage_demand(layer, 2, vgg.weight_bits)
    print(f"{layer.kind.value:>8} {d.rows_req:>6} {d.cols_req:>6} "
          f"{d.replicas:>5} {layer_mvm_count(layer):>7,}")
print("...")
