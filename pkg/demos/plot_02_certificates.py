"""
Checking colouring certificates over a cyclotomic field
=======================================================

A colouring c sends x_v to zeta^c(v) with zeta a primitive (k+1)-th root of
unity. The map commutes with d exactly when each edge relation vanishes, and
sum_l zeta^(a(k-l) + b l) vanishes exactly when a != b.
"""

import itertools

from almostfree.certificate import Assignment, assignment_from_coloring, verify_morphism
from almostfree.cyclotomic import CyclotomicScalar, cyclotomic_polynomial
from almostfree.graph import complete_graph
from almostfree.reduction import encode_shifted

# Phi_3 = 1 + x + x^2, coefficients listed from the constant term
print("Phi_3:", [str(c) for c in cyclotomic_polynomial(3)])

z = CyclotomicScalar.zeta_power(3, 1)
print("1 + z + z^2 =", 1 + z + z * z)

A = encode_shifted(complete_graph(3), 2)

# a proper colouring is accepted
print(verify_morphism(A, assignment_from_coloring({1: 0, 2: 1, 3: 2}, 2)))

# a clash is rejected, and the offending edge is named
print(verify_morphism(A, Assignment(3, {1: 0, 2: 0, 3: 2})))

# exhaustive agreement with propriety on the triangle
accepted = sum(
    verify_morphism(A, Assignment(3, dict(zip((1, 2, 3), cols)))).accepted
    for cols in itertools.product(range(3), repeat=3)
)
print("accepted colourings of K3:", accepted, "(3! = 6 proper ones)")
