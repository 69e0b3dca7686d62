"""Graph -> Sullivan algebra encoders and the almost-freeness decision."""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import FreeAlgebra, Monomial, SullivanAlgebra
from .graph import Coloring, Graph, components, induced_subgraph, is_colorable, is_connected


class EncodingError(ValueError):
    pass


class Verdict(enum.Enum):
    ALMOST_FREE = "AlmostFree"
    NOT_ALMOST_FREE = "NotAlmostFree"


class Method(enum.Enum):
    GROEBNER = "groebner"
    CERTIFICATE_SEARCH = "certificate_search"


@dataclass(frozen=True)
class EncodingParams:
    variant: str  # "original" | "shifted"
    k: int

    def __post_init__(self):
        if self.variant not in ("original", "shifted"):
            raise EncodingError(f"unknown encoder variant {self.variant!r}")
        low = 3 if self.variant == "original" else 2
        if self.k < low:
            raise EncodingError(f"the {self.variant} encoding needs k >= {low}, got k = {self.k}")

    def encode(self, G: Graph) -> SullivanAlgebra:
        if self.variant == "original":
            return encode_original(G, self.k)
        return encode_shifted(G, self.k)


def x_name(i: int) -> str:
    return f"x{i}"


def y_name(a: int, b: int) -> str:
    return f"y_{a}_{b}"


def _edge_algebra(G: Graph, odd_degree: int) -> FreeAlgebra:
    gens = [(x_name(i), 2) for i in G.vertices]
    gens += [(y_name(a, b), odd_degree) for a, b in G.edges]
    return FreeAlgebra(gens)


def _binary_form(alg: FreeAlgebra, a: int, b: int, exponents) -> dict:
    """Sum of x_a^i x_b^j over the given ``(i, j)`` pairs, as a term map."""
    ia, ib = a - 1, b - 1
    terms = {}
    for i, j in exponents:
        even = tuple(p for p in ((ia, i), (ib, j)) if p[1])
        terms[Monomial(even, ())] = Fraction(1)
    return terms


def encode_shifted(G: Graph, k: int) -> SullivanAlgebra:
    """x_i in degree 2, closed; y_(a,b) in degree 2k-1 with d y = sum_{l=0..k} x_a^(k-l) x_b^l."""
    if k < 2:
        raise EncodingError(f"the shifted encoding needs k >= 2, got k = {k}")
    alg = _edge_algebra(G, 2 * k - 1)
    diff = {
        y_name(a, b): alg.element(_binary_form(alg, a, b, ((k - l, l) for l in range(k + 1))))
        for a, b in G.edges
    }
    return SullivanAlgebra(alg, diff)


def encode_original(G: Graph, k: int) -> SullivanAlgebra:
    """The unshifted family: deg y = 2k-3 and d y = sum_{l=1..k} x_a^(k-l) x_b^(l-1)."""
    if k < 3:
        raise EncodingError(f"the original encoding needs k >= 3, got k = {k}")
    alg = _edge_algebra(G, 2 * k - 3)
    diff = {
        y_name(a, b): alg.element(_binary_form(alg, a, b, ((k - l, l - 1) for l in range(1, k + 1))))
        for a, b in G.edges
    }
    return SullivanAlgebra(alg, diff)


def edge_generators(A: SullivanAlgebra) -> dict[tuple[int, int], str]:
    """Edge -> generator name for an encoded algebra."""
    out = {}
    for g in A.generators:
        if g.is_odd:
            parts = g.name.split("_")
            if len(parts) != 3 or parts[0] != "y":
                raise EncodingError(f"{g.name} is not an edge generator")
            out[(int(parts[1]), int(parts[2]))] = g.name
    return out


def vertex_generators(A: SullivanAlgebra) -> dict[int, str]:
    out = {}
    for g in A.generators:
        if not g.is_odd:
            if not (g.name.startswith("x") and g.name[1:].isdigit()):
                raise EncodingError(f"{g.name} is not a vertex generator")
            out[int(g.name[1:])] = g.name
    return out


# -- decision ----------------------------------------------------------------


def format_witness(witness: dict[int, int | None]) -> str:
    """``v:colour`` pairs; ``v:-`` marks a vertex sent to zero rather than coloured."""
    return " ".join(f"{v}:{'-' if c is None else c}" for v, c in sorted(witness.items()))


@dataclass
class Decision:
    verdict: Verdict
    method: Method
    k: int
    witness: Coloring | None = None
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.verdict is Verdict.NOT_ALMOST_FREE) != (self.witness is not None):
            raise ValueError("NotAlmostFree needs a witness, AlmostFree must not carry one")

    @property
    def almost_free(self) -> bool:
        return self.verdict is Verdict.ALMOST_FREE

    def report(self) -> str:
        lines = [
            f"verdict: {self.verdict.value}",
            f"method: {self.method.value}",
            f"k: {self.k}",
        ]
        if self.witness is not None:
            lines.append(f"witness: {format_witness(self.witness)}")
        for key, value in self.details.items():
            lines.append(f"{key}: {value}")
        lines.append(f"time: {self.elapsed:.6f}s")
        return "\n".join(lines) + "\n"


class InconsistencyError(RuntimeError):
    """The algebraic and combinatorial sides disagreed; should never happen."""


def certificate_search(G: Graph, k: int) -> Coloring | None:
    """Try every (k+1)-colouring in turn and return the first one the morphism verifier accepts.

    If none exists and ``G`` is disconnected, a component is searched on its
    own and the other vertices are sent to 0 (value ``None``).
    """
    from .certificate import Assignment, verify_morphism

    A = encode_shifted(G, k)
    m = k + 1
    for colors in itertools.product(range(m), repeat=G.n):
        asg = Assignment(m, dict(zip(G.vertices, colors)))
        if verify_morphism(A, asg).accepted:
            return dict(zip(G.vertices, colors))
    parts = components(G)
    if len(parts) > 1:
        return _component_witness(G, parts, lambda H: certificate_search(H, k))
    return None


def _component_witness(G: Graph, parts, colour) -> dict[int, int | None] | None:
    for part in parts:
        H, old = induced_subgraph(G, part)
        col = colour(H)
        if col is not None:
            out: dict[int, int | None] = dict.fromkeys(G.vertices)
            out.update({old[v]: c for v, c in col.items()})
            return out
    return None


def decide_almost_free(G: Graph, k: int, method: Method | str = Method.GROEBNER, **kw) -> Decision:
    """Almost free iff the encoded Borel model has finite-dimensional cohomology."""
    from .certificate import assignment_from_coloring, verify_morphism
    from .oracle import buchberger, ideal_from_algebra, is_zero_dimensional

    method = Method(method)
    if k < 2:
        raise EncodingError(f"the shifted encoding needs k >= 2, got k = {k}")
    start = time.perf_counter()
    A = encode_shifted(G, k)
    details = {}
    if method is Method.GROEBNER:
        I = ideal_from_algebra(A)
        gb = buchberger(I, order=kw.get("order", "grevlex"), budget=kw.get("budget"))
        finite = is_zero_dimensional(gb, I.nvars)
        details["groebner_size"] = len(gb.polys)
        witness = None
        if not finite:
            witness = is_colorable(G, k + 1)
            if witness is None and not is_connected(G):
                witness = _component_witness(G, components(G), lambda H: is_colorable(H, k + 1))
            if witness is None:
                raise InconsistencyError("positive-dimensional ideal but no colouring found")
            check = verify_morphism(A, assignment_from_coloring(witness, k))
            if not check.accepted:
                raise InconsistencyError(f"witness rejected by the verifier: {check.reason}")
    else:
        witness = certificate_search(G, k)
        finite = witness is None
    verdict = Verdict.ALMOST_FREE if finite else Verdict.NOT_ALMOST_FREE
    return Decision(verdict, method, k, witness, time.perf_counter() - start, details)
