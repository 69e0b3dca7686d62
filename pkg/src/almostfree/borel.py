"""Torus actions on products of homogeneous spheres and their Borel models.

Each edge (a, b) of a graph gets a sphere

    U(k)^(k+2) / (U(k-1) x U(k)_2 x ... x U(k)_(k+2))

where U(k-1) sits diagonally in every numerator factor and U(k)_i sits in
factors 1 and i. A rank-r torus acts from the left through the maximal tori
of numerator factors 2..k+2; block i = 0..k (factor i+2) receives t_a on its
first i coordinates and t_b on the remaining k-i. Factor 1 is never used.

The model of the Borel construction is Λ(t) ⊗ Λ(v) ⊗ H*(BH) with

    d v_(f,m) = e_m(H-side roots of factor f) - e_m(T-side weights of factor f).

H-side roots are sums of the roots of every denominator block mapping into
factor f. That sum is not Weyl-invariant on its own, so the pullback is
averaged over the Weyl group of H before it is rewritten in Chern classes.
Top Chern classes and pure torus terms are unaffected by the averaging.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .algebra import Element, FreeAlgebra, Monomial, SullivanAlgebra
from .graph import Graph
from .linalg import nullspace


class ConstructionError(ValueError):
    pass


# -- homogeneous space --------------------------------------------------------


@dataclass(frozen=True)
class DenominatorBlock:
    label: str  # "0" for U(k-1), "i" for U(k)_i
    rank: int
    factors: tuple[int, ...]  # numerator factors (1-based) it maps into


@dataclass(frozen=True)
class HomogeneousSpaceData:
    k: int
    blocks: tuple[DenominatorBlock, ...]

    @property
    def numerator_factors(self) -> int:
        return self.k + 2

    @property
    def numerator_dimension(self) -> int:
        return self.numerator_factors * self.k**2

    @property
    def denominator_dimension(self) -> int:
        return sum(b.rank**2 for b in self.blocks)

    @property
    def dimension(self) -> int:
        return self.numerator_dimension - self.denominator_dimension

    def blocks_into(self, f: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if f in b.factors]


def sphere_data(k: int) -> HomogeneousSpaceData:
    """Block structure for any k >= 1 (U(0) is the trivial group)."""
    if k < 1:
        raise ConstructionError("k must be positive")
    n = k + 2
    blocks = [DenominatorBlock("0", k - 1, tuple(range(1, n + 1)))]
    blocks += [DenominatorBlock(str(i), k, (1, i)) for i in range(2, n + 1)]
    return HomogeneousSpaceData(k, tuple(blocks))


def build_edge_sphere(k: int) -> HomogeneousSpaceData:
    if k < 2:
        raise ConstructionError(f"edge spheres need k >= 2, got k = {k}")
    data = sphere_data(k)
    assert data.dimension == 2 * k - 1
    return data


# -- torus inclusions -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EdgeInclusion:
    """Weights of S^1_a x S^1_b inside the left torus of one edge sphere.

    ``blocks[i]`` is the k x r weight matrix into numerator factor i + 2.
    """

    edge: tuple[int, int]
    k: int
    r: int
    blocks: tuple[np.ndarray, ...]

    def factor_matrix(self, f: int) -> np.ndarray:
        if f == 1:
            return np.zeros((self.k, self.r), dtype=np.int64)
        return self.blocks[f - 2]

    def __eq__(self, other):
        return (
            isinstance(other, EdgeInclusion)
            and (self.edge, self.k, self.r) == (other.edge, other.k, other.r)
            and all(np.array_equal(x, y) for x, y in zip(self.blocks, other.blocks))
        )


def build_torus_inclusion(edge: tuple[int, int], k: int, r: int) -> EdgeInclusion:
    a, b = edge
    if a == b:
        raise ConstructionError("edge endpoints must differ")
    if not (1 <= a < b <= r):
        raise ConstructionError(f"edge {edge} must satisfy 1 <= a < b <= r = {r}")
    if k < 2:
        raise ConstructionError(f"k must be >= 2, got {k}")
    blocks = []
    for i in range(k + 1):
        W = np.zeros((k, r), dtype=np.int64)
        W[:i, a - 1] = 1
        W[i:, b - 1] = 1
        blocks.append(W)
    return EdgeInclusion((a, b), k, r, tuple(blocks))


@dataclass(frozen=True)
class TorusActionData:
    k: int
    r: int
    spheres: tuple[EdgeInclusion, ...] = field(default=())

    @property
    def sphere(self) -> HomogeneousSpaceData:
        return build_edge_sphere(self.k)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [s.edge for s in self.spheres]


def assemble_action(G: Graph, k: int) -> TorusActionData:
    if k < 2:
        raise ConstructionError(f"k must be >= 2, got {k}")
    return TorusActionData(k, G.n, tuple(build_torus_inclusion(e, k, G.n) for e in G.edges))


def format_action(action: TorusActionData) -> str:
    lines = [f"action k={action.k} r={action.r}"]
    for s in action.spheres:
        lines.append(f"sphere {s.edge[0]} {s.edge[1]}")
        for i, W in enumerate(s.blocks):
            lines.append(f"block {i}")
            lines += [" ".join(str(int(x)) for x in row) for row in W]
    return "\n".join(lines) + "\n"


def parse_action(text: str) -> TorusActionData:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][0] != "action":
        raise ConstructionError("missing 'action k=<k> r=<r>' header")
    try:
        params = dict(p.split("=") for p in lines[0][1:])
        k, r = int(params["k"]), int(params["r"])
    except (ValueError, KeyError):
        raise ConstructionError("bad action header") from None
    spheres = []
    pos = 1
    while pos < len(lines):
        if lines[pos][0] != "sphere":
            raise ConstructionError(f"expected 'sphere', got {' '.join(lines[pos])!r}")
        edge = (int(lines[pos][1]), int(lines[pos][2]))
        pos += 1
        blocks = []
        for i in range(k + 1):
            if lines[pos] != ["block", str(i)]:
                raise ConstructionError(f"expected 'block {i}'")
            rows = lines[pos + 1 : pos + 1 + k]
            blocks.append(np.array([[int(x) for x in row] for row in rows], dtype=np.int64).reshape(k, r))
            pos += 1 + k
        spheres.append(EdgeInclusion(edge, k, r, tuple(blocks)))
    return TorusActionData(k, r, tuple(spheres))


# -- symmetric functions ----------------------------------------------------------


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _elementary_polys(n: int) -> list[dict]:
    """e_0..e_n in n variables as exponent-tuple dicts."""
    out = []
    for q in range(n + 1):
        poly = {}
        for S in itertools.combinations(range(n), q):
            poly[tuple(1 if i in S else 0 for i in range(n))] = 1
        out.append(poly)
    return out


@lru_cache(maxsize=None)
def monomial_symmetric_in_elementary(n: int, partition: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """m_partition(u_1..u_n) written as a polynomial in e_1..e_n.

    Returned as pairs ``(exponents of e_1..e_n, integer coefficient)``.
    """
    lam = tuple(sorted(partition, reverse=True)) + (0,) * (n - len(partition))
    if len(lam) > n:
        raise ValueError("partition longer than the number of variables")
    f = {perm: 1 for perm in set(itertools.permutations(lam))}
    es = _elementary_polys(n)
    result = []
    while f:
        lead = max(f)
        c = f[lead]
        powers = tuple(lead[q] - (lead[q + 1] if q + 1 < n else 0) for q in range(n))
        if any(p < 0 for p in powers):
            raise ValueError("polynomial is not symmetric")
        term = {(0,) * n: 1}
        for q, p in enumerate(powers):
            for _ in range(p):
                term = _poly_mul(term, es[q + 1])
        for m, v in term.items():
            w = f.get(m, 0) - c * v
            if w:
                f[m] = w
            else:
                f.pop(m, None)
        result.append((powers, c))
    return tuple(result)


def _distinct_permutations(exps: tuple[int, ...]) -> int:
    count = factorial(len(exps))
    for v in set(exps):
        count //= factorial(exps.count(v))
    return count


def elementary_of_forms(forms: list[dict[int, int]], m: int) -> dict[tuple[int, ...], Fraction]:
    """e_m of linear forms (variable index -> coefficient), expanded as exponent-tuple dict."""
    nvars = 1 + max((v for L in forms for v in L), default=-1)
    zero = (0,) * nvars
    E = [{zero: Fraction(1)}] + [{} for _ in range(m)]
    for L in forms:
        lin = {tuple(1 if i == v else 0 for i in range(nvars)): Fraction(c) for v, c in L.items() if c}
        for j in range(m, 0, -1):
            if E[j - 1]:
                prod = _poly_mul(E[j - 1], lin)
                for mono, c in prod.items():
                    w = E[j].get(mono, 0) + c
                    if w:
                        E[j][mono] = w
                    else:
                        E[j].pop(mono, None)
    return E[m]


def weyl_average(poly: dict[tuple[int, ...], Fraction], block_slices: list[slice]) -> dict[tuple, Fraction]:
    """Average over permutations of the roots inside each block.

    Returns a dict keyed by one partition per block, with value the
    coefficient of the product of monomial symmetric functions.
    """
    out: dict[tuple, Fraction] = {}
    for mono, c in poly.items():
        key = []
        weight = 1
        for sl in block_slices:
            exps = mono[sl]
            key.append(tuple(sorted((e for e in exps if e), reverse=True)))
            weight *= _distinct_permutations(tuple(exps))
        key = tuple(key)
        v = out.get(key, 0) + Fraction(c) / weight
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


# -- Borel model --------------------------------------------------------------------


def _suffix(edge) -> str:
    return "" if edge is None else f"_e{edge[0]}_{edge[1]}"


def vol_name(f: int, k: int, edge=None) -> str:
    return odd_name(f, k, edge)


def odd_name(f: int, m: int, edge=None) -> str:
    return f"v{f}_{m}{_suffix(edge)}"


def chern_name(label: str, q: int, edge=None) -> str:
    return f"c{label}_{q}{_suffix(edge)}"


def torus_name(j: int) -> str:
    return f"t{j}"


class BorelModel(SullivanAlgebra):
    """A Sullivan algebra that remembers which generators belong to which sphere."""

    def __init__(self, algebra, differential, k: int, r: int, edges: list):
        super().__init__(algebra, differential)
        self.k = k
        self.r = r
        self.edges = edges

    def vol(self, f: int, edge=None) -> Element:
        return self.gen(vol_name(f, self.k, edge))

    def volume_combination(self, edge=None) -> Element:
        """vol_1 - vol_2 - ... - vol_(k+2) for one sphere."""
        e = self.vol(1, edge)
        for f in range(2, self.k + 3):
            e = e - self.vol(f, edge)
        return e

    def torus_ids(self) -> set[int]:
        return {self.algebra.index(torus_name(j)) for j in range(1, self.r + 1)}


def _sphere_generators(data: HomogeneousSpaceData, edge) -> list[tuple[str, int]]:
    gens = []
    for b in data.blocks:
        gens += [(chern_name(b.label, q, edge), 2 * q) for q in range(1, b.rank + 1)]
    for f in range(1, data.numerator_factors + 1):
        gens += [(odd_name(f, m, edge), 2 * m - 1) for m in range(1, data.k + 1)]
    return gens


def _sphere_differentials(
    alg: FreeAlgebra, data: HomogeneousSpaceData, edge, inclusion: EdgeInclusion | None
) -> dict[str, Element]:
    k = data.k
    # flat root indices per block
    offsets, slices, start = [], [], 0
    for b in data.blocks:
        offsets.append(start)
        slices.append(slice(start, start + b.rank))
        start += b.rank
    nroots = start
    chern_ids = [[alg.index(chern_name(b.label, q, edge)) for q in range(1, b.rank + 1)] for b in data.blocks]
    torus = [alg.gen(torus_name(j)) for j in range(1, (inclusion.r if inclusion else 0) + 1)]

    diffs = {}
    for f in range(1, data.numerator_factors + 1):
        # coordinate p of factor f receives root p of every block mapping into it
        forms = []
        for p in range(k):
            L = {}
            for bi in data.blocks_into(f):
                if p < data.blocks[bi].rank:
                    L[offsets[bi] + p] = 1
            forms.append(L)
        weights = inclusion.factor_matrix(f) if inclusion is not None else None
        t_forms = []
        if weights is not None:
            for row in weights:
                form = alg.zero()
                for j, w in enumerate(row):
                    if w:
                        form = form + torus[j] * int(w)
                t_forms.append(form)
        # e_m of the torus weights, all degrees at once
        t_elem = [alg.one()] + [alg.zero()] * k
        for form in t_forms:
            for j in range(k, 0, -1):
                t_elem[j] = t_elem[j] + t_elem[j - 1] * form
        for m in range(1, k + 1):
            raw = elementary_of_forms(forms, m)
            raw = {mono + (0,) * (nroots - len(mono)): c for mono, c in raw.items()}
            avg = weyl_average(raw, slices)
            h_side = {}
            for key, coeff in avg.items():
                term = {Monomial((), ()): Fraction(coeff)}
                for bi, lam in enumerate(key):
                    if not lam:
                        continue
                    expansion = monomial_symmetric_in_elementary(data.blocks[bi].rank, lam)
                    poly = {}
                    for powers, c in expansion:
                        even = tuple((chern_ids[bi][q], p) for q, p in enumerate(powers) if p)
                        poly[Monomial(even, ())] = Fraction(c)
                    term = (alg.element(term) * alg.element(poly)).terms
                for mono, c in term.items():
                    v = h_side.get(mono, 0) + c
                    if v:
                        h_side[mono] = v
                    else:
                        h_side.pop(mono, None)
            diffs[odd_name(f, m, edge)] = alg.element(h_side) - t_elem[m]
    return diffs


def borel_model(source: TorusActionData | HomogeneousSpaceData) -> BorelModel:
    """Model of the Borel construction; a bare homogeneous space gets the trivial torus."""
    if isinstance(source, HomogeneousSpaceData):
        data, r, spheres = source, 0, [(None, None)]
    else:
        data, r = source.sphere, source.r
        spheres = [(s.edge, s) for s in source.spheres]
    gens = [(torus_name(j), 2) for j in range(1, r + 1)]
    for edge, _ in spheres:
        gens += _sphere_generators(data, edge)
    alg = FreeAlgebra(gens)
    diffs = {}
    for edge, inclusion in spheres:
        diffs.update(_sphere_differentials(alg, data, edge, inclusion))
    return BorelModel(alg, diffs, data.k, r, [e for e, _ in spheres])


# -- verification -----------------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    passed: bool
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def __str__(self):
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}"
        return "\n".join([head] + [f"  {ln}" for ln in self.lines])


def linear_part(e: Element) -> dict[int, Fraction]:
    """Coefficients of single generators in ``e`` (the image modulo decomposables)."""
    out = {}
    for mono, c in e.terms.items():
        if not mono.odd and len(mono.even) == 1 and mono.even[0][1] == 1:
            out[mono.even[0][0]] = c
        elif not mono.even and len(mono.odd) == 1:
            out[mono.odd[0]] = c
    return out


def claim1_kernel_check(k: int, model: BorelModel | None = None) -> CheckReport:
    """Linear part of d on the top odd generators of the bare homogeneous space."""
    data = build_edge_sphere(k)
    model = model or borel_model(data)
    alg = model.algebra
    n = data.numerator_factors
    top = {b.label: alg.index(chern_name(b.label, k, None)) for b in data.blocks if b.rank == k}
    rows = [top[str(i)] for i in range(2, n + 1)]
    matrix = [[Fraction(0)] * n for _ in rows]
    lines = []
    ok = True
    for f in range(1, n + 1):
        lin = linear_part(model.d(model.vol(f)))
        stray = set(lin) - set(rows)
        if stray:
            ok = False
            lines.append(f"d vol{f} has linear terms outside the top classes: {sorted(alg.generators[g].name for g in stray)}")
        for r_i, g in enumerate(rows):
            matrix[r_i][f - 1] = lin.get(g, Fraction(0))
        expected = {top[str(i)]: 1 for i in range(2, n + 1)} if f == 1 else {top[str(f)]: 1}
        got = {g: c for g, c in lin.items()}
        if got != expected:
            ok = False
            lines.append(f"linear part of d vol{f} is {got}, expected {expected}")
        else:
            hit = " + ".join(alg.generators[g].name for g in sorted(expected))
            lines.append(f"linear part of d vol{f} = {hit}")
    kernel = nullspace(matrix)
    target = [Fraction(1)] + [Fraction(-1)] * (n - 1)
    found = None
    if len(kernel) == 1:
        v = kernel[0]
        if v[0]:
            found = [x / v[0] for x in v]
    if found != target:
        ok = False
        lines.append(f"kernel basis {kernel} is not spanned by vol1 - vol2 - ... - vol{n}")
    else:
        lines.append(f"kernel is 1-dimensional, spanned by vol1 - vol2 - ... - vol{n}")
    return CheckReport(f"volume kernel k={k}", ok, lines, {"kernel": kernel, "matrix": matrix})


def _edge_relation(model: BorelModel, a: int, b: int) -> Element:
    alg = model.algebra
    ta, tb = alg.gen(torus_name(a)), alg.gen(torus_name(b))
    total = alg.zero()
    k = model.k
    for l in range(k + 1):
        total = total + ta ** (k - l) * tb**l
    return total


def pure_torus_part(model: BorelModel, e: Element) -> Element:
    tids = model.torus_ids()
    keep = {m: c for m, c in e.terms.items() if not m.odd and all(g in tids for g, _ in m.even)}
    return model.algebra.element(keep)


def verify_volume_differential(G: Graph, k: int, edge: tuple[int, int], model: BorelModel | None = None) -> CheckReport:
    """Pure torus part of d(vol_1 - vol_2 - ... - vol_(k+2)) on the sphere of ``edge``."""
    if edge not in G.edges:
        raise ConstructionError(f"{edge} is not an edge of the graph")
    model = model or borel_model(assemble_action(G, k))
    a, b = edge
    part = pure_torus_part(model, model.d(model.volume_combination(edge)))
    expected = -_edge_relation(model, a, b)
    if part == expected:
        sign = 1
    elif part == -expected:
        sign = -1
    else:
        sign = 0
    lines = [f"pure torus part: {part}", f"expected: {expected}"]
    if sign == -1:
        lines.append("matches with the opposite global sign")
    return CheckReport(f"volume differential edge {edge} k={k}", sign != 0, lines, {"sign": sign, "part": part})


def bridge_check(G: Graph, k: int, model: BorelModel | None = None) -> CheckReport:
    """Every sphere's pure torus part equals the encoder's d y_(a,b) under t -> x, with one global sign."""
    from .reduction import encode_shifted, y_name

    model = model or borel_model(assemble_action(G, k))
    enc = encode_shifted(G, k)
    x_of = {model.algebra.index(torus_name(j)): enc.algebra.index(f"x{j}") for j in range(1, G.n + 1)}
    signs = set()
    lines = []
    for a, b in G.edges:
        part = pure_torus_part(model, model.d(model.volume_combination((a, b))))
        moved = enc.algebra.element(
            {Monomial(tuple(sorted((x_of[g], e) for g, e in m.even)), ()): c for m, c in part.terms.items()}
        )
        dy = enc.dgen(y_name(a, b))
        if moved == dy:
            signs.add(1)
        elif moved == -dy:
            signs.add(-1)
        else:
            signs.add(0)
            lines.append(f"edge ({a}, {b}): {moved} vs {dy}")
    ok = 0 not in signs and len(signs) <= 1
    sign = signs.pop() if len(signs) == 1 else None
    lines.append(f"global sign: {sign}")
    return CheckReport(f"bridge to encoder k={k}", ok, lines, {"sign": sign})


def check_borel(G: Graph, k: int) -> list[CheckReport]:
    """Volume kernel check, well-formedness and the volume differential on every edge."""
    from .algebra import check_well_formed

    model = borel_model(assemble_action(G, k))
    reports = [claim1_kernel_check(k)]
    violations = check_well_formed(model)
    reports.append(CheckReport(f"well-formed Borel model k={k}", not violations, [str(v) for v in violations[:5]]))
    vols = [verify_volume_differential(G, k, e, model) for e in G.edges]
    reports += vols
    signs = {r.data["sign"] for r in vols}
    if len(signs) > 1:
        reports.append(CheckReport("uniform global sign", False, [f"signs {sorted(signs)}"]))
    reports.append(bridge_check(G, k, model))
    return reports
