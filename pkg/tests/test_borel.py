import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from almostfree.algebra import check_well_formed
from almostfree.borel import (
    ConstructionError,
    assemble_action,
    borel_model,
    bridge_check,
    build_edge_sphere,
    build_torus_inclusion,
    check_borel,
    claim1_kernel_check,
    elementary_of_forms,
    format_action,
    monomial_symmetric_in_elementary,
    parse_action,
    pure_torus_part,
    sphere_data,
    verify_volume_differential,
    weyl_average,
)
from almostfree.graph import Graph, complete_graph, path_graph, random_graph

K2 = Graph(2, ((1, 2),))


@pytest.mark.parametrize("k", range(1, 51))
def test_sphere_dimension(k):
    data = sphere_data(k)
    assert data.numerator_dimension == (k + 2) * k * k
    assert data.denominator_dimension == (k - 1) ** 2 + (k + 1) * k * k
    assert data.dimension == 2 * k - 1


def test_edge_sphere_rejects_small_k():
    with pytest.raises(ConstructionError):
        build_edge_sphere(1)


def test_block_layout_k2():
    data = build_edge_sphere(2)
    assert [(b.label, b.rank, b.factors) for b in data.blocks] == [
        ("0", 1, (1, 2, 3, 4)),
        ("2", 2, (1, 2)),
        ("3", 2, (1, 3)),
        ("4", 2, (1, 4)),
    ]
    assert data.blocks_into(3) == [0, 2]


def test_torus_inclusion_k2():
    inc = build_torus_inclusion((1, 3), 2, 3)
    assert [W.tolist() for W in inc.blocks] == [
        [[0, 0, 1], [0, 0, 1]],
        [[1, 0, 0], [0, 0, 1]],
        [[1, 0, 0], [1, 0, 0]],
    ]
    assert not inc.factor_matrix(1).any()
    assert np.array_equal(inc.factor_matrix(3), inc.blocks[1])


@pytest.mark.parametrize("edge, r", [((2, 2), 3), ((3, 1), 3), ((1, 4), 3)])
def test_torus_inclusion_rejects(edge, r):
    with pytest.raises(ConstructionError):
        build_torus_inclusion(edge, 2, r)


def test_each_block_row_has_one_weight():
    for k in (2, 3, 4):
        inc = build_torus_inclusion((1, 2), k, 2)
        for i, W in enumerate(inc.blocks):
            assert (W.sum(axis=1) == 1).all()
            assert W[:, 0].sum() == i and W[:, 1].sum() == k - i


def test_assemble_action():
    action = assemble_action(complete_graph(3), 3)
    assert action.r == 3 and action.edges == [(1, 2), (1, 3), (2, 3)]
    assert all(len(s.blocks) == 4 for s in action.spheres)
    with pytest.raises(ConstructionError):
        assemble_action(K2, 1)


def test_action_roundtrip():
    action = assemble_action(path_graph(3), 2)
    text = format_action(action)
    assert text.startswith("action k=2 r=3\nsphere 1 2\nblock 0\n")
    again = parse_action(text)
    assert again == action
    assert format_action(again) == text


def test_action_parse_errors():
    with pytest.raises(ConstructionError):
        parse_action("")
    with pytest.raises(ConstructionError):
        parse_action("action k=2\n")
    with pytest.raises(ConstructionError):
        parse_action("action k=2 r=2\nsphere 1 2\nblock 1\n")


# -- symmetric functions ---------------------------------------------------------


def _expand_e(n, powers):
    out = {(0,) * n: 1}
    for q, p in enumerate(powers, start=1):
        eq = {tuple(1 if i in S else 0 for i in range(n)): 1 for S in itertools.combinations(range(n), q)}
        for _ in range(p):
            nxt = {}
            for a, c in out.items():
                for b, d in eq.items():
                    m = tuple(x + y for x, y in zip(a, b))
                    nxt[m] = nxt.get(m, 0) + c * d
            out = nxt
    return out


@pytest.mark.parametrize("n, lam", [(2, (1,)), (2, (2,)), (2, (1, 1)), (3, (2, 1)), (3, (3,)), (3, (2, 2, 1)), (4, (2, 1, 1))])
def test_monomial_symmetric_conversion(n, lam):
    padded = tuple(sorted(lam, reverse=True)) + (0,) * (n - len(lam))
    target = {perm: 1 for perm in set(itertools.permutations(padded))}
    total = {}
    for powers, c in monomial_symmetric_in_elementary(n, lam):
        for m, v in _expand_e(n, powers).items():
            total[m] = total.get(m, 0) + c * v
    assert {m: v for m, v in total.items() if v} == target


def test_elementary_of_forms():
    # e_2(u0 + u1, u2) = u0*u2 + u1*u2
    e2 = elementary_of_forms([{0: 1, 1: 1}, {2: 1}], 2)
    assert e2 == {(1, 0, 1): 1, (0, 1, 1): 1}


def test_weyl_average_symmetrises():
    # u0*u2 with blocks {0,1} and {2}: average is (1/2) m_(1) * m_(1)
    avg = weyl_average({(1, 0, 1): Fraction(1)}, [slice(0, 2), slice(2, 3)])
    assert avg == {((1,), (1,)): Fraction(1, 2)}


# -- models and checks -------------------------------------------------------------


def test_homogeneous_model_k2():
    model = borel_model(build_edge_sphere(2))
    names = [g.name for g in model.generators]
    assert names[:3] == ["c0_1", "c2_1", "c2_2"]
    odd = [(g.name, g.degree) for g in model.generators if g.is_odd]
    assert odd == [(f"v{f}_{m}", 2 * m - 1) for f in range(1, 5) for m in (1, 2)]
    assert model.dgen("v2_2") == model.algebra.parse("1/2*c0_1*c2_1 + c2_2")
    assert model.dgen("v2_1") == model.algebra.parse("c0_1 + c2_1")
    assert check_well_formed(model) == []


def test_edge_model_torus_terms():
    model = borel_model(assemble_action(K2, 2))
    d = model.dgen("v2_1_e1_2")
    assert pure_torus_part(model, d) == -model.algebra.parse("2*t2")
    assert pure_torus_part(model, model.dgen("v1_2_e1_2")).is_zero()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_volume_kernel(k):
    report = claim1_kernel_check(k)
    assert report.passed, str(report)
    kernel = report.data["kernel"]
    assert len(kernel) == 1
    v = kernel[0]
    assert [x / v[0] for x in v] == [Fraction(1)] + [Fraction(-1)] * (k + 1)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("G", [K2, complete_graph(3), path_graph(3)], ids=["K2", "K3", "P3"])
def test_volume_differential(G, k):
    model = borel_model(assemble_action(G, k))
    for edge in G.edges:
        report = verify_volume_differential(G, k, edge, model)
        assert report.passed and report.data["sign"] == -1
        a, b = edge
        expected = sum((model.gen(f"t{a}") ** (k - l) * model.gen(f"t{b}") ** l for l in range(k + 1)), model.algebra.zero())
        assert report.data["part"] == expected


def test_volume_differential_non_edge():
    with pytest.raises(ConstructionError):
        verify_volume_differential(path_graph(3), 2, (1, 3))


def test_bridge_random_graphs():
    rng = random.Random(3)
    for _ in range(5):
        G = random_graph(4, 0.6, rng)
        report = bridge_check(G, 2)
        assert report.passed
        assert report.data["sign"] in (1, None)


def test_check_borel_all_pass():
    reports = check_borel(path_graph(3), 2)
    assert all(reports), "\n".join(map(str, reports))
    assert str(reports[0]).startswith("PASS")
