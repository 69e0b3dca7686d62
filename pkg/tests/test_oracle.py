import random
from fractions import Fraction

import pytest
import sympy

from almostfree.graph import Graph, complete_graph, cycle_graph, random_graph
from almostfree.oracle import (
    BudgetExceeded,
    PolyIdeal,
    buchberger,
    cohomology_dims,
    default_cutoff,
    ideal_from_algebra,
    is_zero_dimensional,
    quotient_hilbert,
    quotient_top_degree,
)
from almostfree.reduction import encode_shifted

K2 = Graph(2, ((1, 2),))


def _to_sympy(f, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(syms, m)]) for m, c in f.items())


def _monic(exprs, syms, order):
    out = set()
    for e in exprs:
        p = sympy.Poly(e, *syms)
        out.add(sympy.expand(p.as_expr() / p.LC(order=order)))
    return out


@pytest.mark.parametrize("order", ["grevlex", "grlex"])
def test_groebner_matches_sympy(order):
    rng = random.Random(7)
    for _ in range(12):
        G = random_graph(rng.choice([3, 4, 5]), rng.uniform(0.4, 1.0), rng)
        if not G.edges:
            continue
        I = ideal_from_algebra(encode_shifted(G, 2))
        syms = sympy.symbols(I.names)
        ours = buchberger(I, order)
        ref = sympy.groebner([_to_sympy(f, syms) for f in I.generators], *syms, order=order)
        assert _monic(map(lambda f: _to_sympy(f, syms), ours.polys), syms, order) == _monic(ref.exprs, syms, order)


def test_k2_basis():
    gb = buchberger(ideal_from_algebra(encode_shifted(K2, 2)))
    assert len(gb.polys) == 1
    assert not is_zero_dimensional(gb)


def test_k4_zero_dimensional():
    gb = buchberger(ideal_from_algebra(encode_shifted(complete_graph(4), 2)))
    assert is_zero_dimensional(gb)
    top = quotient_top_degree(gb)
    assert top is not None and top > 0


def test_triangle_not_zero_dimensional():
    gb = buchberger(ideal_from_algebra(encode_shifted(complete_graph(3), 2)))
    assert not is_zero_dimensional(gb)
    assert quotient_top_degree(gb) is None


def test_reduce_members_to_zero():
    I = ideal_from_algebra(encode_shifted(cycle_graph(5), 2))
    gb = buchberger(I)
    for f in I.generators:
        assert gb.reduce(f) == {}


def test_budget_exceeded():
    I = ideal_from_algebra(encode_shifted(complete_graph(5), 2))
    with pytest.raises(BudgetExceeded):
        buchberger(I, budget=1)


def test_unknown_order():
    with pytest.raises(ValueError):
        buchberger(PolyIdeal(1, [{(1,): Fraction(1)}]), order="lex-ish")


def test_nonhomogeneous_rejected():
    with pytest.raises(ValueError):
        PolyIdeal(1, [{(1,): Fraction(1), (0,): Fraction(1)}])


def test_dump_header():
    gb = buchberger(ideal_from_algebra(encode_shifted(K2, 2)))
    assert gb.dump().splitlines()[0] == "groebner order=grevlex nvars=2"
    assert gb.dump().splitlines()[1] == "x1^2 + x1*x2 + x2^2"


def test_hilbert_edge():
    A = encode_shifted(K2, 2)
    I = ideal_from_algebra(A)
    h = quotient_hilbert(I, buchberger(I), 10)
    assert [h[n] for n in range(0, 11, 2)] == [1, 2, 2, 2, 2, 2]
    assert all(h[n] == 0 for n in range(1, 11, 2))


def test_hilbert_order_independent():
    for G in (complete_graph(4), cycle_graph(5), complete_graph(3)):
        I = ideal_from_algebra(encode_shifted(G, 2))
        assert quotient_hilbert(I, buchberger(I, "grevlex"), 14) == quotient_hilbert(I, buchberger(I, "grlex"), 14)


def test_cohomology_edge_k2():
    dims = cohomology_dims(encode_shifted(K2, 2), cutoff=12)
    assert dims[0] == 1 and dims[2] == 2 and dims[4] == 2
    assert dims[1] == dims[3] == 0


def test_cohomology_single_vertex_polynomial_ring():
    dims = cohomology_dims(encode_shifted(Graph(1), 2), cutoff=12)
    assert dims == {n: (1 if n % 2 == 0 else 0) for n in range(13)}


def test_cohomology_k4_poincare_duality():
    dims = cohomology_dims(encode_shifted(complete_graph(4), 2), cutoff=20)
    top = max(n for n, d in dims.items() if d)
    assert top == 14
    assert all(dims[n] == dims[top - n] for n in range(top + 1))
    assert sum((-1) ** n * d for n, d in dims.items()) == 0


def test_wordlength_zero_matches_hilbert():
    for G in (complete_graph(3), complete_graph(4), cycle_graph(4)):
        A = encode_shifted(G, 2)
        I = ideal_from_algebra(A)
        h = quotient_hilbert(I, buchberger(I), 12)
        assert cohomology_dims(A, cutoff=12, wordlength=0) == h


def test_default_cutoff():
    # K4, k=2: six odd generators of degree 3, four even ones
    assert default_cutoff(encode_shifted(complete_graph(4), 2)) == 18 - 4 + 6


def test_cohomology_budget():
    with pytest.raises(BudgetExceeded):
        cohomology_dims(encode_shifted(complete_graph(4), 2), cutoff=20, budget=10)
