"""
Encoding a graph and deciding almost-freeness
=============================================

A graph becomes a pure Sullivan algebra: one degree-2 generator per vertex
and one odd generator per edge whose differential is the complete
homogeneous polynomial of degree k in the two endpoint variables.
"""

from almostfree import decide_almost_free, encode_shifted, format_algebra
from almostfree.graph import complete_graph, cycle_graph

# The triangle with k = 2 (three colours). Degree of each y is 2k - 1 = 3.
A = encode_shifted(complete_graph(3), 2)
print(format_algebra(A))

# The triangle is 3-colourable, so the ideal of edge relations has a nonzero
# point and the action is not almost free. The witness is that colouring.
print(decide_almost_free(complete_graph(3), 2).report())

# K4 needs four colours: the ideal is zero-dimensional and the action is almost free.
print(decide_almost_free(complete_graph(4), 2).report())

# Both decision procedures agree; the brute-force one is exponential in n.
for method in ("groebner", "certificate_search"):
    d = decide_almost_free(cycle_graph(5), 2, method)
    print(f"C5 via {method}: {d.verdict.value} in {d.elapsed:.4f}s")
