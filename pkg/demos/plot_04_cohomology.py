"""
Cohomology and Hilbert functions
================================

For a pure algebra the cohomology splits by the number of odd factors.
Finite total dimension is what almost-freeness means; the degreewise ranks
below are evidence, the Gröbner basis is the proof.
"""

from almostfree.graph import complete_graph
from almostfree.oracle import buchberger, cohomology_dims, default_cutoff, ideal_from_algebra, quotient_hilbert
from almostfree.reduction import encode_shifted

# K4, k = 2: finite cohomology, Poincaré duality in dimension 14
A = encode_shifted(complete_graph(4), 2)
dims = cohomology_dims(A, default_cutoff(A))
print("K4:", [dims[n] for n in sorted(dims)])

# K3, k = 2: the quotient ring never dies out
B = encode_shifted(complete_graph(3), 2)
I = ideal_from_algebra(B)
gb = buchberger(I)
print(gb.dump())
h = quotient_hilbert(I, gb, 20)
print("K3 quotient, even degrees:", [h[n] for n in range(0, 21, 2)])
