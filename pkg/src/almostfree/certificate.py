"""Polynomial-time verification of colouring certificates.

A colouring with k+1 colours becomes the algebra map x_i -> zeta^color(i) * z
into Q(zeta_{k+1})[z], odd generators -> 0. It commutes with the differentials
exactly when every d y_(a,b) is sent to zero. A vertex may also be sent to 0
(exponent ``None``); that is how disconnected graphs get witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .algebra import SullivanAlgebra
from .cyclotomic import CyclotomicScalar
from .graph import Coloring, Graph, is_proper


class CertificateError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Assignment:
    """x_i -> zeta_m^exponents[i] * z, or x_i -> 0 when the exponent is ``None``."""

    m: int
    exponents: Mapping[int, int | None]

    def __post_init__(self):
        if self.m < 1:
            raise CertificateError("root order must be positive")


@dataclass(frozen=True)
class Check:
    accepted: bool
    reason: str
    edge: tuple[int, int] | None = None

    def __bool__(self):
        return self.accepted


def assignment_from_coloring(col: Mapping[int, int | None], k: int) -> Assignment:
    for v, c in col.items():
        if c is not None and not 0 <= c <= k:
            raise CertificateError(f"colour {c} of vertex {v} outside 0..{k}")
    return Assignment(k + 1, dict(col))


def edge_image(A: SullivanAlgebra, y: str, asg: Assignment) -> CyclotomicScalar:
    """Coefficient of z^deg in the image of d y; d y must be a polynomial in degree-2 generators."""
    alg = A.algebra
    total = CyclotomicScalar.rational(asg.m, 0)
    for mono, c in A.dgen(y).terms.items():
        if mono.odd:
            raise CertificateError(f"d {y} involves odd generators")
        e = 0
        for gid, p in mono.even:
            g = alg.generators[gid]
            if g.degree != 2:
                raise CertificateError(f"d {y} involves {g.name} of degree {g.degree}")
            x = asg.exponents[int(g.name[1:])]
            if x is None:
                break
            e += x * p
        else:
            total = total + CyclotomicScalar.zeta_power(asg.m, e) * c
    return total


def verify_morphism(A: SullivanAlgebra, asg: Assignment) -> Check:
    """Accept iff x_i -> zeta^{e_i} z, y -> 0 commutes with the differentials."""
    from .reduction import edge_generators, vertex_generators

    vertices = vertex_generators(A)
    missing = sorted(v for v in vertices if v not in asg.exponents)
    if missing:
        raise CertificateError(f"no value assigned to vertex {missing[0]}")
    if all(asg.exponents[v] is None for v in vertices):
        return Check(False, "trivial morphism: every degree-2 generator goes to 0")
    for edge, y in edge_generators(A).items():
        if edge_image(A, y, asg):
            return Check(False, f"d {y} is not sent to zero: edge ({edge[0]}, {edge[1]})", edge)
    return Check(True, "all edge relations vanish")


def verify_is_proper_iff(col: Coloring, G: Graph, k: int) -> bool:
    """True when the algebraic verdict and the combinatorial propriety check agree."""
    from .reduction import encode_shifted

    algebraic = verify_morphism(encode_shifted(G, k), assignment_from_coloring(col, k)).accepted
    return algebraic == is_proper(G, col)


@dataclass(frozen=True)
class Certificate:
    k: int
    values: Mapping[int, int]
    raw: bool = False  # True: values are exponents, not colours

    def assignment(self) -> Assignment:
        if self.raw:
            return Assignment(self.k + 1, dict(self.values))
        return assignment_from_coloring(self.values, self.k)


def parse_certificate(text: str) -> Certificate:
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, p) for i, p in lines if p and p[0] != "c"]
    if not lines:
        raise CertificateError("empty certificate")
    lineno, head = lines[0]
    if len(head) != 2 or head[0] != "cert" or not head[1].startswith("k="):
        raise CertificateError("expected 'cert k=<k>'", lineno)
    try:
        k = int(head[1][2:])
    except ValueError:
        raise CertificateError("bad k", lineno) from None
    values: dict[int, int] = {}
    kinds = set()
    for lineno, parts in lines[1:]:
        if len(parts) != 3 or parts[0] not in ("v", "e"):
            raise CertificateError("expected 'v <vertex> <color>' or 'e <vertex> <exponent>'", lineno)
        kinds.add(parts[0])
        try:
            v, c = int(parts[1]), int(parts[2])
        except ValueError:
            raise CertificateError("non-integer entry", lineno) from None
        if v in values:
            raise CertificateError(f"vertex {v} assigned twice", lineno)
        values[v] = c
    if len(kinds) > 1:
        raise CertificateError("mixes colouring and exponent lines")
    return Certificate(k, values, raw=kinds == {"e"})


def format_certificate(cert: Certificate) -> str:
    tag = "e" if cert.raw else "v"
    return f"cert k={cert.k}\n" + "".join(f"{tag} {v} {c}\n" for v, c in sorted(cert.values.items()))
