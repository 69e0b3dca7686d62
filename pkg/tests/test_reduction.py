import random

import pytest

from almostfree.algebra import check_well_formed, format_algebra
from almostfree.graph import (
    Graph,
    complete_graph,
    components,
    cycle_graph,
    induced_subgraph,
    is_colorable,
    random_graph,
)
from almostfree.reduction import (
    Decision,
    EncodingError,
    EncodingParams,
    Method,
    Verdict,
    decide_almost_free,
    encode_original,
    encode_shifted,
)

K2 = Graph(2, ((1, 2),))


def test_shifted_k2():
    A = encode_shifted(K2, 2)
    y = A.algebra.generators[A.algebra.index("y_1_2")]
    assert y.degree == 3
    assert A.dgen("y_1_2") == A.algebra.parse("x1^2 + x1*x2 + x2^2")
    assert A.dgen("x1").is_zero() and A.dgen("x2").is_zero()


def test_shifted_edgeless():
    A = encode_shifted(Graph(2), 2)
    assert [g.name for g in A.generators] == ["x1", "x2"]
    assert all(img.is_zero() for img in A.images)


def test_shifted_triangle_k3():
    A = encode_shifted(complete_graph(3), 3)
    odd = [g for g in A.generators if g.is_odd]
    assert [g.name for g in odd] == ["y_1_2", "y_1_3", "y_2_3"]
    assert all(g.degree == 5 for g in odd)
    assert A.dgen("y_1_3") == A.algebra.parse("x1^3 + x1^2*x3 + x1*x3^2 + x3^3")
    assert check_well_formed(A) == []


def test_original_k2_graph():
    A = encode_original(K2, 3)
    assert A.algebra.generators[2].degree == 3
    assert A.dgen("y_1_2") == A.algebra.parse("x1^2 + x1*x2 + x2^2")


def test_index_shift_identity():
    rng = random.Random(8)
    graphs = [complete_graph(3), cycle_graph(5)] + [random_graph(5, 0.5, rng) for _ in range(10)]
    for G in graphs:
        for k in (3, 4, 5):
            assert format_algebra(encode_original(G, k)) == format_algebra(encode_shifted(G, k - 1))


@pytest.mark.parametrize("variant, k", [("shifted", 1), ("shifted", 0), ("original", 2)])
def test_k_range_rejected(variant, k):
    with pytest.raises(EncodingError, match="k >="):
        EncodingParams(variant, k)


def test_encoder_size_linear_in_edges_and_k():
    G = complete_graph(6)
    for k in (2, 3, 5, 8):
        A = encode_shifted(G, k)
        assert sum(len(img.terms) for img in A.images) == G.m * (k + 1)


def test_decide_k4_almost_free():
    d = decide_almost_free(complete_graph(4), 2)
    assert d.verdict is Verdict.ALMOST_FREE and d.witness is None


def test_decide_triangle_not_almost_free():
    d = decide_almost_free(complete_graph(3), 2)
    assert d.verdict is Verdict.NOT_ALMOST_FREE
    assert d.witness == {1: 0, 2: 1, 3: 2}


def test_decide_five_cycle():
    for method in Method:
        d = decide_almost_free(cycle_graph(5), 2, method)
        assert d.verdict is Verdict.NOT_ALMOST_FREE


def test_edgeless_not_almost_free():
    for method in Method:
        assert decide_almost_free(Graph(1), 2, method).verdict is Verdict.NOT_ALMOST_FREE


def test_decide_rejects_k1():
    with pytest.raises(EncodingError):
        decide_almost_free(K2, 1)


def test_methods_agree_with_colouring_oracle():
    rng = random.Random(4)
    for _ in range(25):
        G = random_graph(rng.choice([4, 5, 6]), rng.uniform(0.4, 1.0), rng)
        for k in (2, 3):
            # almost free iff no component can be coloured (plain colourability when connected)
            expected = all(is_colorable(induced_subgraph(G, part)[0], k + 1) is None for part in components(G))
            for method in Method:
                assert decide_almost_free(G, k, method).almost_free == expected


def test_grlex_order_gives_same_verdict():
    for G in (complete_graph(4), cycle_graph(5), complete_graph(5)):
        a = decide_almost_free(G, 2, order="grevlex")
        b = decide_almost_free(G, 2, order="grlex")
        assert a.verdict == b.verdict


def test_decision_invariant_enforced():
    with pytest.raises(ValueError):
        Decision(Verdict.NOT_ALMOST_FREE, Method.GROEBNER, 2, witness=None)
    with pytest.raises(ValueError):
        Decision(Verdict.ALMOST_FREE, Method.GROEBNER, 2, witness={1: 0})


def test_report_lists_witness():
    text = decide_almost_free(complete_graph(3), 2).report()
    assert "verdict: NotAlmostFree" in text
    assert "witness: 1:0 2:1 3:2" in text


def test_disconnected_witness_sends_other_component_to_zero():
    G = Graph(6, complete_graph(4).edges + ((5, 6),))
    for method in Method:
        d = decide_almost_free(G, 2, method)
        assert d.verdict is Verdict.NOT_ALMOST_FREE
        assert all(d.witness[v] is None for v in (1, 2, 3, 4))
        assert d.witness[5] != d.witness[6]
    assert "1:- 2:- 3:- 4:-" in d.report()


def test_isolated_vertex_breaks_almost_freeness():
    G = Graph(5, complete_graph(4).edges)
    assert decide_almost_free(complete_graph(4), 2).almost_free
    assert decide_almost_free(G, 2).witness == {1: None, 2: None, 3: None, 4: None, 5: 0}
