"""Free graded-commutative algebras over the rationals and Sullivan differentials.

Monomials are stored in a single normal form: even generators as sorted
``(id, exponent)`` pairs, odd generators as a strictly increasing tuple of ids.
The sign of a product is the parity of the transpositions needed to merge the
odd parts, so ``y1*y2 == -(y2*y1)`` and ``y1*y1 == 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .linalg import SparseMatrix


class AlgebraError(ValueError):
    """Structural misuse: mixed generator sets, unknown names, bad degrees."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    degree: int

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


class Monomial(NamedTuple):
    even: tuple[tuple[int, int], ...]
    odd: tuple[int, ...]


ONE = Monomial((), ())

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
    """Product of two monomials as ``(sign, monomial)``; ``(0, None)`` if it vanishes."""
    sign = 1
    if a.odd and b.odd:
        # merge the sorted odd parts, counting how far each id of b jumps left
        i = 0
        la = len(a.odd)
        odd = []
        bj = b.odd
        j = 0
        inversions = 0
        while i < la and j < len(bj):
            x, y = a.odd[i], bj[j]
            if x == y:
                return 0, None
            if x < y:
                odd.append(x)
                i += 1
            else:
                odd.append(y)
                inversions += la - i
                j += 1
        odd.extend(a.odd[i:])
        odd.extend(bj[j:])
        if inversions & 1:
            sign = -1
        odd_t = tuple(odd)
    else:
        odd_t = a.odd or b.odd
    if a.even and b.even:
        exps = dict(a.even)
        for g, e in b.even:
            exps[g] = exps.get(g, 0) + e
        even = tuple(sorted(exps.items()))
    else:
        even = a.even or b.even
    return sign, Monomial(even, odd_t)


class FreeAlgebra:
    """The free graded-commutative algebra on an ordered list of generators.

    Generator order fixes the ids and with them the canonical monomial order.
    """

    def __init__(self, generators: Iterable[tuple[str, int]]):
        gens = []
        index = {}
        for i, (name, degree) in enumerate(generators):
            if not _NAME_RE.match(name):
                raise AlgebraError(f"invalid generator name {name!r}")
            if name in index:
                raise AlgebraError(f"duplicate generator {name!r}")
            if int(degree) < 1:
                raise AlgebraError(f"generator {name!r} must have positive degree")
            gens.append(Generator(i, name, int(degree)))
            index[name] = i
        self.generators: tuple[Generator, ...] = tuple(gens)
        self._index = index
        self._key = tuple((g.name, g.degree) for g in gens)
        self._hash = hash(self._key)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FreeAlgebra) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeAlgebra({inner})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    # -- element constructors -------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {ONE: Fraction(1)})

    def scalar(self, c) -> Element:
        c = Fraction(c)
        return Element(self, {ONE: c} if c else {})

    def gen(self, name_or_id: str | int) -> Element:
        g = self.generators[name_or_id] if isinstance(name_or_id, int) else self.generators[self.index(name_or_id)]
        return Element(self, {self.generator_monomial(g.id): Fraction(1)})

    def gens(self, *names: str) -> tuple[Element, ...]:
        return tuple(self.gen(n) for n in names)

    def generator_monomial(self, gid: int) -> Monomial:
        if self.generators[gid].is_odd:
            return Monomial((), (gid,))
        return Monomial(((gid, 1),), ())

    def monomial(self, exponents: Mapping[str, int]) -> Monomial:
        """Monomial from a name -> exponent map; odd exponents must be 0 or 1."""
        even, odd = [], []
        for name, e in exponents.items():
            g = self.generators[self.index(name)]
            if e == 0:
                continue
            if g.is_odd:
                if e != 1:
                    raise AlgebraError(f"odd generator {name} squared is zero")
                odd.append(g.id)
            else:
                even.append((g.id, int(e)))
        return Monomial(tuple(sorted(even)), tuple(sorted(odd)))

    def element(self, terms: Mapping[Monomial, object]) -> Element:
        return Element(self, {m: Fraction(c) for m, c in terms.items() if c})

    # -- degrees and bases ----------------------------------------------------

    def monomial_degree(self, m: Monomial) -> int:
        gens = self.generators
        return sum(gens[g].degree * e for g, e in m.even) + sum(gens[g].degree for g in m.odd)

    def exponent_vector(self, m: Monomial) -> tuple[int, ...]:
        v = [0] * len(self.generators)
        for g, e in m.even:
            v[g] = e
        for g in m.odd:
            v[g] = 1
        return tuple(v)

    def iter_basis(self, n: int) -> Iterator[Monomial]:
        """Monomials of total degree ``n`` in descending lexicographic order of exponent vectors."""
        if n < 0:
            return
        gens = self.generators
        count = len(gens)
        # smallest degree available from position i onwards, for pruning
        tail_min = [0] * (count + 1)
        tail_min[count] = 0
        for i in range(count - 1, -1, -1):
            d = gens[i].degree
            tail_min[i] = d if i == count - 1 else min(d, tail_min[i + 1])

        even: list[tuple[int, int]] = []
        odd: list[int] = []

        def rec(i: int, remaining: int) -> Iterator[Monomial]:
            if remaining == 0:
                yield Monomial(tuple(even), tuple(odd))
                return
            if i == count or remaining < tail_min[i]:
                return
            g = gens[i]
            d = g.degree
            if g.is_odd:
                if d <= remaining:
                    odd.append(i)
                    yield from rec(i + 1, remaining - d)
                    odd.pop()
                yield from rec(i + 1, remaining)
            else:
                for e in range(remaining // d, 0, -1):
                    even.append((i, e))
                    yield from rec(i + 1, remaining - e * d)
                    even.pop()
                yield from rec(i + 1, remaining)

        yield from rec(0, n)

    def monomial_basis(self, n: int) -> list[Monomial]:
        return list(self.iter_basis(n))

    def basis_size(self, n: int) -> int:
        """Dimension of the degree-``n`` piece via the Poincaré series, without enumeration."""
        if n < 0:
            return 0
        series = [1] + [0] * n
        for g in self.generators:
            d = g.degree
            if g.is_odd:
                for j in range(n, d - 1, -1):
                    series[j] += series[j - d]
            else:
                for j in range(d, n + 1):
                    series[j] += series[j - d]
        return series[n]

    # -- text ----------------------------------------------------------------

    def format_monomial(self, m: Monomial) -> str:
        factors = [(g, e) for g, e in m.even] + [(g, 1) for g in m.odd]
        factors.sort()
        parts = []
        for g, e in factors:
            name = self.generators[g].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def sort_key(self, m: Monomial):
        return (-self.monomial_degree(m), tuple(-e for e in self.exponent_vector(m)))

    def parse(self, text: str) -> Element:
        return _PolyParser(self, text).parse()


class Element:
    """An immutable element of a :class:`FreeAlgebra`: a map monomial -> nonzero rational."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: dict[Monomial, Fraction]):
        self.algebra = algebra
        self.terms = terms

    def _check(self, other: Element):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements live in different algebras")

    def _coerce(self, other) -> Element | None:
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.algebra.zero()
            return Element(self.algebra, {m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.algebra.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element; ``None`` for zero. Raises on mixed degrees."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        key = self.algebra.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = self.algebra.format_monomial(m)
            neg = c < 0
            a = -c if neg else c
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"Element({self})"


def multiply(a: Element, b: Element) -> Element:
    """Graded-commutative product with the Koszul sign rule."""
    a._check(b)
    terms: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = _mono_mul(ma, mb)
            if not sign:
                continue
            v = terms.get(m, 0) + (ca * cb if sign > 0 else -ca * cb)
            if v:
                terms[m] = v
            else:
                del terms[m]
    return Element(a.algebra, terms)


def _times_monomial(e: Element, m: Monomial, scale: int, out: dict):
    """Accumulate ``scale * e * m`` into ``out``."""
    for me, c in e.terms.items():
        sign, p = _mono_mul(me, m)
        if not sign:
            continue
        v = out.get(p, 0) + (c * scale if sign > 0 else -c * scale)
        if v:
            out[p] = v
        else:
            del out[p]


class SullivanAlgebra:
    """Generators with degrees plus a differential given on generators.

    ``differential`` maps generator names (or ids) to elements; unlisted
    generators are closed. The differential is extended to the whole algebra
    as a derivation of degree +1.
    """

    def __init__(self, algebra: FreeAlgebra, differential: Mapping[str | int, Element] | None = None):
        self.algebra = algebra
        images = [algebra.zero()] * len(algebra)
        for key, value in (differential or {}).items():
            gid = key if isinstance(key, int) else algebra.index(key)
            if not isinstance(value, Element):
                value = algebra.scalar(value)
            if value.algebra != algebra:
                raise AlgebraError(f"differential of {algebra.generators[gid].name} lives in another algebra")
            images[gid] = value
        self.images: tuple[Element, ...] = tuple(images)
        self._cache: dict[Monomial, dict[Monomial, Fraction]] = {}

    @classmethod
    def from_spec(cls, generators: Iterable[tuple[str, int]], differential: Mapping[str, str] | None = None):
        """Build from ``(name, degree)`` pairs and differentials written as polynomial strings."""
        A = FreeAlgebra(generators)
        return cls(A, {name: A.parse(text) for name, text in (differential or {}).items()})

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.algebra.generators

    def d(self, e: Element) -> Element:
        return apply_differential(self, e)

    def dgen(self, name: str | int) -> Element:
        gid = name if isinstance(name, int) else self.algebra.index(name)
        return self.images[gid]

    def gen(self, name: str) -> Element:
        return self.algebra.gen(name)

    def _d_monomial(self, m: Monomial, cache: bool = True) -> dict[Monomial, Fraction]:
        cached = self._cache.get(m)
        if cached is not None:
            return cached
        out: dict[Monomial, Fraction] = {}
        images = self.images
        for idx, (g, e) in enumerate(m.even):
            dg = images[g]
            if not dg.terms:
                continue
            rest = list(m.even)
            if e == 1:
                del rest[idx]
            else:
                rest[idx] = (g, e - 1)
            _times_monomial(dg, Monomial(tuple(rest), m.odd), e, out)
        for pos, g in enumerate(m.odd):
            dg = images[g]
            if not dg.terms:
                continue
            rest = Monomial(m.even, m.odd[:pos] + m.odd[pos + 1:])
            # dg has even degree, so moving it to the front only costs the
            # Leibniz sign of the odd factors before it
            _times_monomial(dg, rest, -1 if pos & 1 else 1, out)
        if cache and len(self._cache) < 50_000:
            self._cache[m] = out
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SullivanAlgebra)
            and self.algebra == other.algebra
            and all(a.terms == b.terms for a, b in zip(self.images, other.images))
        )

    def __repr__(self):
        return f"SullivanAlgebra({len(self.algebra)} generators)"

    def monomial_basis(self, n: int) -> list[Monomial]:
        return self.algebra.monomial_basis(n)

    def differential_matrix(self, n: int) -> SparseMatrix:
        return differential_matrix(self, n)


def apply_differential(A: SullivanAlgebra, e: Element) -> Element:
    """Extend ``A``'s differential to ``e`` as a derivation of degree +1."""
    if e.algebra != A.algebra:
        raise AlgebraError("element does not belong to this Sullivan algebra")
    out: dict[Monomial, Fraction] = {}
    for m, c in e.terms.items():
        for p, v in A._d_monomial(m).items():
            w = out.get(p, 0) + c * v
            if w:
                out[p] = w
            else:
                del out[p]
    return Element(A.algebra, out)


def monomial_basis(A: SullivanAlgebra | FreeAlgebra, n: int) -> list[Monomial]:
    alg = A.algebra if isinstance(A, SullivanAlgebra) else A
    return alg.monomial_basis(n)


def differential_matrix(A: SullivanAlgebra, n: int, *, source=None, target=None) -> SparseMatrix:
    """Matrix of ``d: Λ^n -> Λ^{n+1}`` in the canonical monomial bases (columns = source)."""
    src = A.monomial_basis(n) if source is None else source
    tgt = A.monomial_basis(n + 1) if target is None else target
    row_of = {m: i for i, m in enumerate(tgt)}
    cols = []
    for m in src:
        col = {}
        for p, v in A._d_monomial(m, cache=False).items():
            try:
                col[row_of[p]] = v
            except KeyError:
                raise AlgebraError(f"d({A.algebra.format_monomial(m)}) leaves degree {n + 1}") from None
        cols.append(col)
    return SparseMatrix(len(tgt), len(src), cols)


def d_squared_by_matrices(A: SullivanAlgebra, cutoff: int, budget: int | None = None) -> Iterator[tuple[int, bool]]:
    """Yield ``(n, M(n+1) @ M(n) == 0)`` for ``n = 0..cutoff``, keeping two matrices alive at a time.

    With a ``budget``, a graded piece larger than it raises :class:`BasisTooLarge`.
    """
    prev = None
    for n in range(cutoff + 2):
        if budget is not None:
            size = A.algebra.basis_size(n)
            if size > budget:
                raise BasisTooLarge(n, size, budget)
        M = differential_matrix(A, n)
        if prev is not None:
            yield n - 1, (M @ prev).is_zero()
        prev = M


class BasisTooLarge(RuntimeError):
    def __init__(self, degree: int, size: int, budget: int):
        self.degree, self.size, self.budget = degree, size, budget
        super().__init__(f"degree {degree} has {size} basis monomials (budget {budget})")


@dataclass
class Violation:
    kind: str  # "degree", "d2", "reference"
    generator: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.generator}: {self.detail}"


def check_well_formed(A: SullivanAlgebra) -> list[Violation]:
    """Every violated Sullivan-algebra invariant; an empty list means valid."""
    report = []
    alg = A.algebra
    for g in alg.generators:
        dg = A.images[g.id]
        if dg.algebra != alg:
            report.append(Violation("reference", g.name, "image refers to generators outside the algebra"))
            continue
        degs = dg.degrees()
        if degs and degs != {g.degree + 1}:
            report.append(Violation("degree", g.name, f"d has degree {sorted(degs)}, expected {g.degree + 1}"))
    for g in alg.generators:
        dd = apply_differential(A, A.images[g.id])
        if dd:
            report.append(Violation("d2", g.name, f"d(d {g.name}) = {dd}"))
    return report


# -- polynomial text ---------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _PolyParser:
    def __init__(self, algebra: FreeAlgebra, text: str):
        self.algebra = algebra
        self.tokens = []
        for num, name, op in _TOKEN_RE.findall(text.strip()):
            if num:
                self.tokens.append(("num", int(num)))
            elif name:
                self.tokens.append(("name", name))
            elif op:
                if op not in "+-*^/()":
                    raise ParseError(f"unexpected character {op!r}")
                self.tokens.append(("op", op))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def parse(self) -> Element:
        if not self.tokens:
            raise ParseError("empty polynomial")
        e = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.tokens[self.pos][1]!r}")
        return e

    def expr(self) -> Element:
        total = self.algebra.zero()
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = total + self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term(self) -> Element:
        value = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                value = value * self.power()
            elif kind == "op" and val == "/":
                self.take()
                kind, num = self.take()
                if kind != "num" or num == 0:
                    raise ParseError("division only by a nonzero integer")
                value = value * Fraction(1, num)
            else:
                return value

    def power(self) -> Element:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, num = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** num
        return base

    def atom(self) -> Element:
        kind, val = self.take()
        if kind == "num":
            return self.algebra.scalar(val)
        if kind == "name":
            if val not in self.algebra:
                raise ParseError(f"unknown generator {val!r}")
            return self.algebra.gen(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError("unexpected end of polynomial" if kind is None else f"unexpected token {val!r}")


# -- algebra file format -----------------------------------------------------

HEADER = "sullivan v1"


def format_algebra(A: SullivanAlgebra) -> str:
    lines = [HEADER]
    for g in A.generators:
        lines.append(f"gen {g.name} {g.degree}")
    for g in A.generators:
        lines.append(f"d {g.name} = {A.images[g.id]}")
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> SullivanAlgebra:
    """Read the line-oriented ``sullivan v1`` format. Generator order fixes ids."""
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines or " ".join(lines[0][1].split()) != HEADER:
        raise ParseError(f"missing '{HEADER}' header", lines[0][0] if lines else 1)
    gens, diffs = [], []
    for lineno, ln in lines[1:]:
        word = ln.split(None, 1)[0]
        if word == "gen":
            parts = ln.split()
            if len(parts) != 3:
                raise ParseError("expected 'gen <name> <degree>'", lineno)
            try:
                degree = int(parts[2])
            except ValueError:
                raise ParseError(f"bad degree {parts[2]!r}", lineno) from None
            if diffs:
                raise ParseError("generator declared after differentials", lineno)
            gens.append((parts[1], degree, lineno))
        elif word == "d":
            m = re.match(r"d\s+([A-Za-z_][A-Za-z0-9_]*)\s*=(.*)\Z", ln)
            if not m:
                raise ParseError("expected 'd <name> = <polynomial>'", lineno)
            diffs.append((m.group(1), m.group(2), lineno))
        else:
            raise ParseError(f"unknown directive {word!r}", lineno)
    try:
        algebra = FreeAlgebra((n, d) for n, d, _ in gens)
    except AlgebraError as exc:
        bad = next((ln for n, d, ln in gens if str(n) in str(exc)), None)
        raise ParseError(str(exc), bad) from None
    images = {}
    for name, body, lineno in diffs:
        if name not in algebra:
            raise ParseError(f"differential of undeclared generator {name!r}", lineno)
        if name in images:
            raise ParseError(f"duplicate differential for {name!r}", lineno)
        try:
            images[name] = algebra.parse(body)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    return SullivanAlgebra(algebra, images)
