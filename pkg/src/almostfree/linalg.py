"""Exact sparse linear algebra over the rationals.

Rank is computed by fraction-free elimination on integer columns: each column
is scaled to a primitive integer vector, and eliminating a pivot from a column
cross-multiplies and then divides out the content, so entries stay integral
and small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class SparseMatrix:
    """Column-sparse rational matrix. ``cols[j]`` maps row index -> nonzero entry."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[dict[int, Fraction]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = [{i: Fraction(v) for i, v in c.items() if v} for c in cols]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> SparseMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{i: Fraction(rows[i][j]) for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j].get(i, Fraction(0))

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for col in other.cols:
            acc: dict[int, Fraction] = {}
            for k, b in col.items():
                for i, a in self.cols[k].items():
                    v = acc.get(i, 0) + a * b
                    if v:
                        acc[i] = v
                    else:
                        del acc[i]
            out.append(acc)
        return SparseMatrix(self.nrows, other.ncols, out)

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def rank(self) -> int:
        return integer_rank(_primitive_columns(self.cols))


def _primitive_columns(cols: Iterable[dict[int, Fraction]]) -> list[dict[int, int]]:
    out = []
    for col in cols:
        if not col:
            continue
        den = lcm(*(v.denominator for v in col.values()))
        ints = {i: int(v * den) for i, v in col.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        out.append({i: v // g for i, v in ints.items()})
    return out


def integer_rank(cols: list[dict[int, int]]) -> int:
    """Rank of integer columns by fraction-free column echelon reduction.

    Pivots are keyed by their largest row index; columns are processed
    sparsest first to limit fill-in.
    """
    pivots: dict[int, dict[int, int]] = {}
    for col in sorted(cols, key=len):
        v = dict(col)
        while v:
            lead = max(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            a = p[lead]
            b = v[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            # v <- a*v - b*p, then strip content
            w = {i: a * x for i, x in v.items()} if a != 1 else dict(v)
            for i, x in p.items():
                y = w.get(i, 0) - b * x
                if y:
                    w[i] = y
                else:
                    w.pop(i, None)
            c = 0
            for x in w.values():
                c = gcd(c, x)
                if c == 1:
                    break
            if c > 1:
                w = {i: x // c for i, x in w.items()}
            v = w
    return len(pivots)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a small dense matrix and its pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel of a small dense rational matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis
