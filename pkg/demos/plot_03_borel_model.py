"""
The Borel model of the edge-sphere action
=========================================

Each edge gets a homogeneous space of dimension 2k - 1 built from k + 2 copies
of U(k). A rank-r torus acts through weight matrices, and the model of the
Borel construction has one odd generator per numerator factor and degree.
"""

from almostfree.borel import (
    assemble_action,
    borel_model,
    build_torus_inclusion,
    claim1_kernel_check,
    sphere_data,
    verify_volume_differential,
)
from almostfree.graph import path_graph

for k in (1, 2, 3, 10):
    data = sphere_data(k)
    print(f"k={k}: dim {data.numerator_dimension} - {data.denominator_dimension} = {data.dimension}")

# Weight matrices of one edge: block i puts t_a on the first i rows.
inc = build_torus_inclusion((1, 2), 2, 2)
for i, W in enumerate(inc.blocks):
    print(f"block {i}:", W.tolist())

# Only vol_1 - vol_2 - ... - vol_(k+2) is closed modulo decomposables.
print(claim1_kernel_check(2))

# Its differential carries the edge relation in the torus variables.
G = path_graph(3)
model = borel_model(assemble_action(G, 2))
for edge in G.edges:
    print(verify_volume_differential(G, 2, edge, model))
