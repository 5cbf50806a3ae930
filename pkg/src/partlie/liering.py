"""The truncated monomial ring and the Lie ring built on partitions.

Monomials live in ``Z_m[x_1, ..., x_n]`` modulo the ideal generated by all
``x_i^m``: any product pushing an exponent to ``m`` collapses to zero.  The
Lie ring has basis elements ``x^L d_k`` (a monomial times the k-th partial
derivative symbol) where the exponent partition has parts below ``k`` and
multiplicities below ``m``; the bracket differentiates one side's monomial
by the other side's derivative index, smaller index first and with a sign
flip when the roles are reversed.

The basis-level idealizer of a set ``H`` collects the basis elements whose
bracket with every member of ``H`` is zero or a scalar multiple of a member.
It is computed against a cached sparse table of all non-vanishing basis
brackets, so repeated calls for the same ``(m, n)`` are cheap.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cache
from itertools import product
from typing import Iterable

from .partitions import MultiplicityBound, Partition


@dataclass(frozen=True)
class Monomial:
    """A power monomial ``x^L``, or the ring zero when ``partition is None``."""

    partition: Partition | None = Partition()

    @classmethod
    def zero(cls) -> "Monomial":
        return cls(None)

    @classmethod
    def one(cls) -> "Monomial":
        return cls(Partition())

    @classmethod
    def variable(cls, i: int) -> "Monomial":
        return cls(Partition.from_parts([i]))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Monomial":
        return cls(Partition(tuple(exponents)))

    @property
    def is_zero(self) -> bool:
        return self.partition is None

    def exponent(self, i: int) -> int:
        return 0 if self.partition is None else self.partition.multiplicity(i)

    @property
    def degree(self) -> int:
        if self.partition is None:
            raise ValueError("the zero monomial has no degree")
        return self.partition.total_parts

    @property
    def weight(self) -> int:
        if self.partition is None:
            raise ValueError("the zero monomial has no weight")
        return self.partition.weight

    def to_text(self) -> str:
        if self.partition is None:
            return "0"
        if self.partition.is_empty:
            return "1"
        factors = []
        for i in self.partition.support:
            e = self.partition.multiplicity(i)
            factors.append(f"x{i}" if e == 1 else f"x{i}^{e}")
        return "*".join(factors)

    def __str__(self) -> str:
        return self.to_text()


ZERO_MONOMIAL = Monomial(None)


def monomial_mul(a: Monomial, b: Monomial, bound: MultiplicityBound) -> Monomial:
    """Product in the truncated ring; zero once any exponent reaches m."""
    if a.partition is None or b.partition is None:
        return ZERO_MONOMIAL
    merged = _add_trunc(a.partition.mults, b.partition.mults, bound.m)
    if merged is None:
        return ZERO_MONOMIAL
    return Monomial(Partition(merged))


def partial_derivative(k: int, a: Monomial, bound: MultiplicityBound) -> tuple[int, Monomial]:
    """k-th partial derivative as a ``(coefficient, monomial)`` pair."""
    if k < 1:
        raise ValueError("derivative index must be positive")
    if a.partition is None:
        return 0, ZERO_MONOMIAL
    e = a.partition.multiplicity(k)
    if e == 0:
        return 0, ZERO_MONOMIAL
    return e % bound.m, Monomial(a.partition.remove(k))


@dataclass(frozen=True)
class BasisElement:
    """``x^L d_k``: exponent partition plus derivative index."""

    partition: Partition
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("derivative index must be positive")

    def validate(self, bound: MultiplicityBound) -> None:
        """Raise unless the partition fits in parts <= k-1 < n with mults < m."""
        if self.k > bound.n:
            raise ValueError(f"derivative index {self.k} exceeds n={bound.n}")
        if not self.partition.fits(bound.m, self.k - 1):
            raise ValueError(
                f"partition {self.partition} not admissible below index {self.k}"
            )

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.k, self.partition.parts)

    def to_json(self) -> dict:
        return {"parts": self.partition.to_json(), "k": self.k}

    @classmethod
    def from_json(cls, data: dict) -> "BasisElement":
        return cls(Partition.from_json(data["parts"]), int(data["k"]))

    def to_text(self) -> str:
        if self.partition.is_empty:
            return f"d{self.k}"
        return f"{Monomial(self.partition).to_text()} d{self.k}"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class LieElement:
    """A finite combination of basis elements with coefficients in 1..m-1.

    ``terms`` is canonically sorted with no zero coefficients; the empty
    tuple is the zero element.
    """

    terms: tuple[tuple[BasisElement, int], ...] = ()

    @classmethod
    def build(cls, terms: Iterable[tuple[BasisElement, int]], m: int) -> "LieElement":
        acc: dict[BasisElement, int] = {}
        for elem, coeff in terms:
            acc[elem] = (acc.get(elem, 0) + coeff) % m
        cleaned = [(e, c) for e, c in acc.items() if c]
        cleaned.sort(key=lambda t: t[0].sort_key())
        return cls(tuple(cleaned))

    @classmethod
    def of(cls, elem: BasisElement, coeff: int = 1) -> "LieElement":
        if coeff == 0:
            return cls()
        return cls(((elem, coeff),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> frozenset[BasisElement]:
        return frozenset(e for e, _ in self.terms)

    def add(self, other: "LieElement", m: int) -> "LieElement":
        return LieElement.build(self.terms + other.terms, m)

    def scale(self, c: int, m: int) -> "LieElement":
        return LieElement.build(((e, coeff * c) for e, coeff in self.terms), m)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "elem": e.to_json()} for e, c in self.terms]

    @classmethod
    def from_json(cls, data: list[dict], m: int) -> "LieElement":
        return cls.build(
            ((BasisElement.from_json(t["elem"]), int(t["coeff"])) for t in data), m
        )

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.terms:
            bits.append(e.to_text() if c == 1 else f"{c} {e.to_text()}")
        return " + ".join(bits)

    def __str__(self) -> str:
        return self.to_text()


ZERO = LieElement()


@dataclass(frozen=True)
class HomogeneousSet:
    """A set of basis elements, all valid for the attached bound."""

    elements: frozenset[BasisElement]
    bound: MultiplicityBound

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", frozenset(self.elements))
        for e in self.elements:
            e.validate(self.bound)

    def __contains__(self, elem: BasisElement) -> bool:
        return elem in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[BasisElement]:
        return sorted(self.elements, key=BasisElement.sort_key)


# -- raw tuple arithmetic used by the bracket and the cached tables --------


def _add_trunc(a: tuple[int, ...], b: tuple[int, ...], m: int) -> tuple[int, ...] | None:
    """Entrywise sum of multiplicity vectors, None once an entry reaches m."""
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        s = out[i] + v
        if s >= m:
            return None
        out[i] = s
    return tuple(out)


def _dec(a: tuple[int, ...], j: int) -> tuple[int, ...]:
    """Decrement entry ``j`` (1-based); assumes it is positive."""
    out = list(a)
    out[j - 1] -= 1
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _raw_bracket(
    lam: tuple[int, ...], k: int, the: tuple[int, ...], j: int, m: int
) -> tuple[int, tuple[int, ...], int] | None:
    """Bracket of ``x^lam d_k`` with ``x^the d_j`` as ``(coeff, mults, index)``."""
    if j == k:
        return None
    if j < k:
        lj = lam[j - 1] if j <= len(lam) else 0
        if lj == 0:
            return None
        gamma = _add_trunc(_dec(lam, j), the, m)
        if gamma is None:
            return None
        return lj % m, gamma, k
    tk = the[k - 1] if k <= len(the) else 0
    if tk == 0:
        return None
    gamma = _add_trunc(lam, _dec(the, k), m)
    if gamma is None:
        return None
    return (m - tk) % m, gamma, j


def bracket_basis(
    u: BasisElement, v: BasisElement, bound: MultiplicityBound
) -> tuple[int, BasisElement] | None:
    """Bracket of two basis elements; None when it vanishes.

    A non-vanishing result is a single scalar multiple of a basis element:
    the smaller derivative index differentiates the other side's monomial
    (with a sign flip when it sits on the right), the product is truncated,
    and the larger index survives.
    """
    raw = _raw_bracket(u.partition.mults, u.k, v.partition.mults, v.k, bound.m)
    if raw is None:
        return None
    coeff, gamma, idx = raw
    result = BasisElement(Partition(gamma), idx)
    if __debug__:
        result.validate(bound)
    return coeff, result


def bracket(a: LieElement, b: LieElement, bound: MultiplicityBound) -> LieElement:
    """Bilinear extension of the basis bracket."""
    acc: dict[BasisElement, int] = {}
    m = bound.m
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            r = bracket_basis(ea, eb, bound)
            if r is None:
                continue
            c, g = r
            acc[g] = (acc.get(g, 0) + ca * cb * c) % m
    return LieElement.build(acc.items(), m)


def partitions_bounded(m: int, max_part: int) -> list[Partition]:
    """All partitions with parts <= max_part and multiplicities < m."""
    out = [
        Partition(vec) for vec in product(range(m), repeat=max_part)
    ]
    out.sort(key=lambda p: p.parts)
    return out


def enumerate_basis(bound: MultiplicityBound) -> list[BasisElement]:
    """The full basis in canonical order: by derivative index, then partition."""
    out: list[BasisElement] = []
    for k in range(1, bound.n + 1):
        out.extend(BasisElement(p, k) for p in partitions_bounded(bound.m, k - 1))
    return out


class _Context:
    """Per-bound caches: the basis, its index, and all non-zero brackets.

    ``rows[i]`` holds two parallel tuples ``(hs, gs)``: bracketing basis
    element ``i`` with element ``hs[t]`` gives a non-zero multiple of
    element ``gs[t]``; every other bracket of ``i`` vanishes.
    """

    def __init__(self, bound: MultiplicityBound) -> None:
        self.bound = bound
        self.basis = enumerate_basis(bound)
        self.index = {b: i for i, b in enumerate(self.basis)}
        info = [(b.partition.mults, b.k) for b in self.basis]
        self.info = info
        index_mk = {mk: i for i, mk in enumerate(info)}
        n, m = bound.n, bound.m

        layers: dict[int, list[int]] = {k: [] for k in range(1, n + 1)}
        for i, (_, k) in enumerate(info):
            layers[k].append(i)
        withvar: dict[tuple[int, int], list[int]] = {}
        for j in range(1, n + 1):
            for v in range(1, j):
                withvar[(j, v)] = [
                    i for i in layers[j] if v <= len(info[i][0]) and info[i][0][v - 1]
                ]

        rows: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        for lam, k in info:
            hs: list[int] = []
            gs: list[int] = []
            for j in range(1, min(k, len(lam) + 1)):
                if not lam[j - 1]:
                    continue
                dec = _dec(lam, j)
                for vi in layers[j]:
                    gamma = _add_trunc(dec, info[vi][0], m)
                    if gamma is not None:
                        hs.append(vi)
                        gs.append(index_mk[(gamma, k)])
            for j in range(k + 1, n + 1):
                for vi in withvar[(j, k)]:
                    gamma = _add_trunc(lam, _dec(info[vi][0], k), m)
                    if gamma is not None:
                        hs.append(vi)
                        gs.append(index_mk[(gamma, j)])
            rows.append((tuple(hs), tuple(gs)))
        self.rows = rows


@cache
def _context(bound: MultiplicityBound) -> _Context:
    return _Context(bound)


def _thread_cap() -> int:
    """Worker cap from PARTLIE_THREADS; 0 or unset picks a serial default."""
    raw = os.environ.get("PARTLIE_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        return 1
    return cap if cap >= 1 else 1


def _surviving(ctx: _Context, member: bytearray, lo: int, hi: int) -> list[int]:
    keep = []
    rows = ctx.rows
    for b in range(lo, hi):
        ok = True
        hs, gs = rows[b]
        for h, g in zip(hs, gs):
            if member[h] and not member[g]:
                ok = False
                break
        if ok:
            keep.append(b)
    return keep


def idealizer(H: HomogeneousSet) -> HomogeneousSet:
    """Basis elements whose bracket with every member of ``H`` stays in ``H``.

    Membership is up to scalars, so only the basis element of each bracket
    matters.  The per-candidate tests are independent; PARTLIE_THREADS > 1
    splits them over a thread pool.
    """
    ctx = _context(H.bound)
    member = bytearray(len(ctx.basis))
    for e in H.elements:
        member[ctx.index[e]] = 1
    size = len(ctx.basis)
    cap = min(_thread_cap(), size) or 1
    if cap <= 1 or size < 256:
        keep = _surviving(ctx, member, 0, size)
    else:
        step = -(-size // cap)
        chunks = [(i, min(i + step, size)) for i in range(0, size, step)]
        with ThreadPoolExecutor(max_workers=cap) as pool:
            parts = pool.map(lambda c: _surviving(ctx, member, *c), chunks)
        keep = [i for part in parts for i in part]
    return HomogeneousSet(frozenset(ctx.basis[i] for i in keep), H.bound)


def homogeneous_membership(z: LieElement, H: HomogeneousSet) -> bool:
    """True when every basis element appearing in ``z`` lies in ``H``."""
    return all(e in H.elements for e, _ in z.terms)
