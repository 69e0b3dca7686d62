"""Finite-dimensionality of encoded algebras.

The decision goes through a reduced Gröbner basis of the ideal generated by
the differentials of the odd generators (Buchberger with the Gebauer–Möller
pair criteria). Degreewise cohomology and Hilbert functions are evidence only.

Polynomials here are plain dicts ``exponent tuple -> Fraction`` in the
even generators, which all sit in cohomological degree 2, so polynomial
degree is half the cohomological degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import Monomial, SullivanAlgebra, differential_matrix
from .linalg import integer_rank, _primitive_columns

Poly = dict[tuple[int, ...], Fraction]

ORDERS: dict[str, Callable] = {
    "grevlex": lambda a: (sum(a), tuple(-x for x in reversed(a))),
    "grlex": lambda a: (sum(a), a),
}


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class PolyIdeal:
    nvars: int
    generators: list[Poly]
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.names:
            self.names = [f"x{i + 1}" for i in range(self.nvars)]
        for f in self.generators:
            if len({sum(m) for m in f}) > 1:
                raise ValueError("ideal generators must be homogeneous")


@dataclass
class GroebnerBasis:
    order: str
    nvars: int
    polys: list[Poly]
    names: list[str]
    pairs_reduced: int = 0

    @property
    def leading_monomials(self) -> list[tuple[int, ...]]:
        key = ORDERS[self.order]
        return [max(f, key=key) for f in self.polys]

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, _basis_entries(self.polys, ORDERS[self.order]), ORDERS[self.order])

    def dump(self) -> str:
        lines = [f"groebner order={self.order} nvars={self.nvars}"]
        lines += [format_poly(f, self.names, self.order) for f in self.polys]
        return "\n".join(lines) + "\n"


def format_poly(f: Poly, names: list[str], order: str = "grevlex") -> str:
    if not f:
        return "0"
    key = ORDERS[order]
    out = []
    for m in sorted(f, key=key, reverse=True):
        c = f[m]
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        if out:
            out.append(("- " if c < 0 else "+ ") + body)
        else:
            out.append(("-" if c < 0 else "") + body)
    return " ".join(out)


def ideal_from_algebra(A: SullivanAlgebra) -> PolyIdeal:
    """Ideal in the even generators spanned by the differentials of the odd ones."""
    gens = A.generators
    evens = [g for g in gens if not g.is_odd]
    pos = {g.id: i for i, g in enumerate(evens)}
    for g in evens:
        if g.degree != 2:
            raise ValueError(f"even generator {g.name} is not in degree 2")
        if A.images[g.id]:
            raise ValueError(f"even generator {g.name} is not closed")
    polys = []
    for g in gens:
        if not g.is_odd:
            continue
        f: Poly = {}
        for mono, c in A.images[g.id].terms.items():
            if mono.odd:
                raise ValueError(f"d {g.name} is not in the even subalgebra")
            v = [0] * len(evens)
            for gid, e in mono.even:
                v[pos[gid]] = e
            f[tuple(v)] = c
        if f:
            polys.append(f)
    return PolyIdeal(len(evens), polys, [g.name for g in evens])


# -- polynomial helpers --------------------------------------------------------


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _basis_entries(polys, key):
    out = []
    for p in polys:
        lm = max(p, key=key)
        out.append((lm, p[lm], p))
    return out


def normal_form(f: Poly, basis, key) -> Poly:
    """Full reduction of ``f`` by ``basis`` entries ``(lm, lc, poly)``."""
    f = dict(f)
    rem: Poly = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, lc, p in basis:
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                q = c / lc
                for pm, pc in p.items():
                    t = tuple(x + y for x, y in zip(pm, shift))
                    v = f.get(t, 0) - q * pc
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(f: Poly, key) -> Poly:
    lc = f[max(f, key=key)]
    return {m: c / lc for m, c in f.items()}


def s_polynomial(f: Poly, g: Poly, key) -> Poly:
    lf, lg = max(f, key=key), max(g, key=key)
    L = _lcm(lf, lg)
    out: Poly = {}
    for p, lm, scale in ((f, lf, 1 / f[lf]), (g, lg, -1 / g[lg])):
        shift = tuple(x - y for x, y in zip(L, lm))
        for m, c in p.items():
            t = tuple(x + y for x, y in zip(m, shift))
            v = out.get(t, 0) + scale * c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


# -- Buchberger -----------------------------------------------------------------


def buchberger(I: PolyIdeal, order: str = "grevlex", budget: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``I``.

    ``budget`` caps the number of S-pair reductions; exceeding it raises
    :class:`BudgetExceeded` instead of running on.
    """
    if order not in ORDERS:
        raise ValueError(f"unknown monomial order {order!r}")
    key = ORDERS[order]
    polys: list[Poly] = []
    lms: list[tuple[int, ...]] = []
    G: list[int] = []
    B: set[tuple[int, int]] = set()

    def update(h: int):
        nonlocal G, B
        lh = lms[h]
        C = list(G)
        D: list[int] = []
        while C:
            g1 = C.pop()
            L = _lcm(lms[g1], lh)
            if _disjoint(lms[g1], lh) or not any(_divides(_lcm(lms[g2], lh), L) for g2 in C + D):
                D.append(g1)
        E = [(g, h) for g in D if not _disjoint(lms[g], lh)]
        kept = set()
        for g1, g2 in B:
            L = _lcm(lms[g1], lms[g2])
            if not _divides(lh, L) or _lcm(lms[g1], lh) == L or _lcm(lms[g2], lh) == L:
                kept.add((g1, g2))
        B = kept | set(E)
        G = [g for g in G if not _divides(lh, lms[g])] + [h]

    def add(p: Poly):
        p = _monic(p, key)
        polys.append(p)
        lms.append(max(p, key=key))
        update(len(polys) - 1)

    for f in I.generators:
        h = normal_form(f, _basis_entries([polys[g] for g in G], key), key)
        if h:
            add(h)

    steps = 0
    while B:
        pair = min(B, key=lambda p: (key(_lcm(lms[p[0]], lms[p[1]])), p))
        B.discard(pair)
        steps += 1
        if budget is not None and steps > budget:
            raise BudgetExceeded(f"Buchberger exceeded {budget} pair reductions")
        s = s_polynomial(polys[pair[0]], polys[pair[1]], key)
        h = normal_form(s, _basis_entries([polys[g] for g in G], key), key)
        if h:
            add(h)

    reduced = _interreduce([polys[g] for g in G], key)
    gb = GroebnerBasis(order, I.nvars, reduced, list(I.names), steps)
    entries = _basis_entries(reduced, key)
    for f in I.generators:
        if normal_form(f, entries, key):
            raise AssertionError("ideal generator does not reduce to zero modulo its Gröbner basis")
    return gb


def _interreduce(polys: list[Poly], key) -> list[Poly]:
    polys = [_monic(p, key) for p in polys]
    lms = [max(p, key=key) for p in polys]
    minimal = []
    for i, p in enumerate(polys):
        if any(j != i and _divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i) for j in range(len(polys))):
            continue
        minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = _basis_entries(minimal[:i] + minimal[i + 1:], key)
        lm = max(p, key=key)
        tail = {m: c for m, c in p.items() if m != lm}
        red = normal_form(tail, others, key)
        red[lm] = Fraction(1)
        out.append(red)
    out.sort(key=lambda p: key(max(p, key=key)))
    return out


def is_zero_dimensional(gb: GroebnerBasis, r: int | None = None) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    r = gb.nvars if r is None else r
    found = set()
    for lm in gb.leading_monomials:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            found.add(support[0])
    return all(i in found for i in range(r))


def _standard_count(lms, nvars: int, d: int) -> int:
    count = 0
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        if not any(_divides(lm, m) for lm in lms):
            count += 1
    return count


def quotient_hilbert(I: PolyIdeal, gb: GroebnerBasis, cutoff: int) -> dict[int, int]:
    """dim of Q[x]/I in each cohomological degree 0..cutoff, counted as standard monomials."""
    lms = gb.leading_monomials
    return {n: (_standard_count(lms, I.nvars, n // 2) if n % 2 == 0 else 0) for n in range(cutoff + 1)}


def quotient_top_degree(gb: GroebnerBasis) -> int | None:
    """Highest cohomological degree with a nonzero standard monomial; ``None`` if infinite."""
    if not is_zero_dimensional(gb):
        return None
    lms = gb.leading_monomials
    pure = {}
    for lm in lms:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            pure[i] = min(pure.get(i, lm[i]), lm[i])
    bound = sum(e - 1 for e in pure.values())
    top = 0
    for d in range(bound + 1):
        if _standard_count(lms, gb.nvars, d):
            top = d
    return 2 * top


# -- cohomology --------------------------------------------------------------------


def default_cutoff(A: SullivanAlgebra) -> int:
    """Formal-dimension estimate (sum of odd degrees minus the number of even generators) plus 6."""
    odd = sum(g.degree for g in A.generators if g.is_odd)
    even = sum(1 for g in A.generators if not g.is_odd)
    return max(odd - even, 0) + 6


def is_pure(A: SullivanAlgebra) -> bool:
    for g in A.generators:
        img = A.images[g.id]
        if not g.is_odd and img:
            return False
        if g.is_odd and any(m.odd for m in img.terms):
            return False
    return True


def _word_length(m: Monomial) -> int:
    return len(m.odd)


def cohomology_dims(
    A: SullivanAlgebra,
    cutoff: int | None = None,
    budget: int = 250_000,
    wordlength: int | None = None,
) -> dict[int, int]:
    """dim H^n for 0 <= n <= cutoff via exact ranks of the degreewise differential.

    Pure algebras are split by the number of odd factors, which d lowers by
    one; ``wordlength`` restricts to one such piece (0 gives the classes
    represented by polynomials in the even generators).
    """
    if cutoff is None:
        cutoff = default_cutoff(A)
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    for n in range(cutoff + 2):
        size = A.algebra.basis_size(n)
        if size > budget:
            raise BudgetExceeded(f"degree {n} has {size} basis monomials (budget {budget})")
    pure = is_pure(A)
    if not pure and wordlength is not None:
        raise ValueError("word-length splitting needs a pure algebra")

    bases = {}

    def pieces(n):
        if n not in bases:
            basis = A.monomial_basis(n) if n >= 0 else []
            split = {}
            for m in basis:
                split.setdefault(_word_length(m) if pure else 0, []).append(m)
            bases[n] = split
        return bases[n]

    ranks = {}

    def rank(n, j):
        # rank of d restricted to word length j in degree n (target: word length j - 1)
        if (n, j) in ranks:
            return ranks[(n, j)]
        src = pieces(n).get(j, [])
        tgt = pieces(n + 1).get(j - 1 if pure else 0, [])
        if not src or not tgt:
            r = 0
        else:
            M = differential_matrix(A, n, source=src, target=tgt)
            r = integer_rank(_primitive_columns(M.cols))
        ranks[(n, j)] = r
        return r

    dims = {}
    for n in range(cutoff + 1):
        total = 0
        js = [wordlength] if wordlength is not None else list(pieces(n))
        for j in js:
            size = len(pieces(n).get(j, []))
            if not size:
                continue
            incoming = rank(n - 1, j + 1 if pure else 0) if n > 0 else 0
            total += size - rank(n, j) - incoming
        dims[n] = total
    return dims
