"""Simple undirected graphs, DIMACS ``.col`` I/O and the brute-force colouring oracle."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

Coloring = dict[int, int]


class DimacsError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Graph:
    """Vertices ``1..n``; edges are pairs ``(a, b)`` with ``a < b``, kept sorted."""

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            a, b = min(a, b), max(a, b)
            if not (1 <= a and b <= self.n):
                raise ValueError(f"edge ({a}, {b}) out of range 1..{self.n}")
            seen.add((a, b))
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        return cls(n, tuple(edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def __str__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, i % n + 1) for i in range(1, n + 1)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def random_graph(n: int, p: float, rng: random.Random | None = None) -> Graph:
    rng = rng or random.Random()
    return Graph(n, tuple(e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p))


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled simple graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def components(G: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, in order of least vertex."""
    adj = G.neighbours()
    seen: set[int] = set()
    out = []
    for s in G.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def induced_subgraph(G: Graph, vertices: list[int]) -> tuple[Graph, dict[int, int]]:
    """``G`` restricted to ``vertices``, relabelled 1..len; also returns new -> old labels."""
    new = {v: i for i, v in enumerate(sorted(vertices), 1)}
    edges = tuple((new[a], new[b]) for a, b in G.edges if a in new and b in new)
    return Graph(len(new), edges), {i: v for v, i in new.items()}


def is_connected(G: Graph) -> bool:
    return len(components(G)) <= 1


def validate(G: Graph, require_connected: bool = True) -> list[str]:
    """Problems with ``G`` as an instance of the colouring problem; empty if none."""
    report = []
    if len(set(G.edges)) != len(G.edges) or any(a >= b for a, b in G.edges):
        report.append("graph is not simple")
    if require_connected and not is_connected(G):
        report.append("graph is disconnected")
    return report


# -- colouring ---------------------------------------------------------------


def is_proper(G: Graph, coloring: Mapping[int, int]) -> bool:
    if any(v not in coloring for v in G.vertices):
        return False
    return all(coloring[a] != coloring[b] for a, b in G.edges)


def is_colorable(G: Graph, c: int) -> Coloring | None:
    """A proper ``c``-colouring of ``G`` or ``None``.

    Backtracking over vertices in order of decreasing degree (ties by index),
    colours tried in ascending order, so the witness is deterministic.
    """
    if c < 1:
        raise ValueError("need at least one colour")
    adj = G.neighbours()
    order = sorted(G.vertices, key=lambda v: (-len(adj[v]), v))
    coloring: Coloring = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {coloring[w] for w in adj[v] if w in coloring}
        for col in range(c):
            if col not in used:
                coloring[v] = col
                if place(i + 1):
                    return True
                del coloring[v]
        return False

    if not place(0):
        return None
    assert is_proper(G, coloring)
    return dict(sorted(coloring.items()))


def exhaustive_colorable(G: Graph, c: int) -> bool:
    """Reference oracle: try all ``c**n`` assignments."""
    return any(
        all(col[a - 1] != col[b - 1] for a, b in G.edges)
        for col in itertools.product(range(c), repeat=G.n)
    )


def chromatic_number(G: Graph) -> int:
    if G.n == 0:
        return 0
    c = 1
    while is_colorable(G, c) is None:
        c += 1
    return c


# -- formats ----------------------------------------------------------------


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``.col`` text. Duplicate edges collapse; loops are rejected."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsError("duplicate 'p' line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError("expected 'p edge <n> <m>'", lineno)
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise DimacsError("non-integer in 'p' line", lineno) from None
            if n < 0:
                raise DimacsError("negative vertex count", lineno)
        elif tag == "e":
            if n is None:
                raise DimacsError("edge before 'p' line", lineno)
            if len(parts) != 3:
                raise DimacsError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsError("non-integer vertex", lineno) from None
            for w in (u, v):
                if not 1 <= w <= n:
                    raise DimacsError(f"vertex {w} out of range 1..{n}", lineno)
            if u == v:
                raise DimacsError(f"loop at vertex {u}", lineno)
            edges.append((min(u, v), max(u, v)))
        else:
            raise DimacsError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise DimacsError("missing 'p' line")
    return Graph(n, tuple(edges))


def format_dimacs(G: Graph, comment: str | None = None) -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p edge {G.n} {G.m}")
    lines += [f"e {a} {b}" for a, b in G.edges]
    return "\n".join(lines) + "\n"


def format_coloring(coloring: Mapping[int, int]) -> str:
    return "".join(f"v {v} {c}\n" for v, c in sorted(coloring.items()))


def parse_coloring(text: str) -> Coloring:
    out: Coloring = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] != "v" or len(parts) != 3:
            raise DimacsError("expected 'v <vertex> <color>'", lineno)
        v, c = int(parts[1]), int(parts[2])
        if v in out:
            raise DimacsError(f"vertex {v} coloured twice", lineno)
        out[v] = c
    return out
