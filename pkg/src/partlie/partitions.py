"""Integer partitions with bounded part multiplicities.

A partition is stored as its multiplicity vector: entry ``i - 1`` holds the
multiplicity of the part ``i``, trailing zeros trimmed.  Everything here works
inside the family of partitions whose parts repeat at most ``m - 1`` times;
``m = 2`` recovers partitions into distinct parts.  The module provides
enumeration, the counting sequences derived from it, the refinement calculus
(replacing one part by smaller parts summing to it) and the excludant
bookkeeping used by the idealizer chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator, NamedTuple


@dataclass(frozen=True)
class Partition:
    """A partition in multiplicity-vector form.

    ``mults[i - 1]`` is the multiplicity of the part ``i``.  The vector is
    canonical: all entries are non-negative and trailing zeros are trimmed,
    so equal partitions compare and hash equal.
    """

    mults: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        mults = tuple(self.mults)
        if any(v < 0 for v in mults):
            raise ValueError("multiplicities must be non-negative")
        while mults and mults[-1] == 0:
            mults = mults[:-1]
        object.__setattr__(self, "mults", mults)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build from a list of parts with repetition, e.g. ``[3, 3, 1]``."""
        parts = list(parts)
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive integers")
        mults = [0] * max(parts, default=0)
        for p in parts:
            mults[p - 1] += 1
        return cls(tuple(mults))

    @property
    def weight(self) -> int:
        """Sum of the parts with multiplicity."""
        return sum(i * v for i, v in enumerate(self.mults, start=1))

    @property
    def total_parts(self) -> int:
        """Number of parts counted with multiplicity."""
        return sum(self.mults)

    @property
    def max_part(self) -> int:
        """Largest part, 0 for the empty partition."""
        return len(self.mults)

    @property
    def support(self) -> tuple[int, ...]:
        """Distinct parts in ascending order."""
        return tuple(i for i, v in enumerate(self.mults, start=1) if v)

    @property
    def is_empty(self) -> bool:
        return not self.mults

    @property
    def parts(self) -> tuple[int, ...]:
        """Parts in descending order with repetition."""
        out: list[int] = []
        for i in range(len(self.mults), 0, -1):
            out.extend([i] * self.mults[i - 1])
        return tuple(out)

    def multiplicity(self, part: int) -> int:
        if 1 <= part <= len(self.mults):
            return self.mults[part - 1]
        return 0

    def add(self, part: int, count: int = 1) -> "Partition":
        """A new partition with ``count`` extra copies of ``part``."""
        if part < 1 or count < 0:
            raise ValueError("part must be positive, count non-negative")
        mults = list(self.mults) + [0] * max(0, part - len(self.mults))
        mults[part - 1] += count
        return Partition(tuple(mults))

    def remove(self, part: int, count: int = 1) -> "Partition":
        """A new partition with ``count`` copies of ``part`` removed."""
        if self.multiplicity(part) < count:
            raise ValueError(f"partition has fewer than {count} copies of part {part}")
        mults = list(self.mults)
        mults[part - 1] -= count
        return Partition(tuple(mults))

    def fits(self, m: int, max_part: int | None = None) -> bool:
        """True when every multiplicity is < m and every part <= max_part."""
        if any(v > m - 1 for v in self.mults):
            return False
        return max_part is None or self.max_part <= max_part

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: Iterable[int]) -> "Partition":
        return cls.from_parts(data)

    def to_text(self) -> str:
        return "+".join(str(p) for p in self.parts) if self.mults else "0"

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        text = text.strip()
        if text == "0" or not text:
            return cls()
        return cls.from_parts(int(tok) for tok in text.split("+"))

    def __str__(self) -> str:
        return self.to_text()


EMPTY = Partition()


@dataclass(frozen=True)
class MultiplicityBound:
    """Ambient parameters: parts repeat at most ``m - 1`` times, ``n`` variables."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def delta(self) -> int:
        """1 in the distinct-parts case ``m = 2``, else 0."""
        return 1 if self.m == 2 else 0


class ShapeFlags(NamedTuple):
    is_triangular: bool
    is_weak_triangular: bool


@dataclass(frozen=True)
class ExcludantProfile:
    """Missing indices of a partition relative to the full monomial.

    ``excludants`` is the ascending list of ``(index, deficit)`` pairs with
    deficit in ``[1, m - 1]``; adding ``deficit`` copies of each index to the
    partition reconstructs the maximal multiplicity vector on ``1..n-1``.
    """

    excludants: tuple[tuple[int, int], ...]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.excludants)

    def __len__(self) -> int:
        return len(self.excludants)


def weight(p: Partition) -> int:
    """Weight of a partition: the integer it partitions."""
    return p.weight


def _descending_key(p: Partition) -> tuple[int, ...]:
    return p.parts


def enumerate_partitions(total: int, m: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``total`` with multiplicities < m and parts <= max_part.

    ``max_part=None`` leaves the part size unconstrained.  The result is in
    canonical order: descending-part lists, lexicographically largest first.
    """
    if total < 0:
        raise ValueError("total must be non-negative")
    if m < 2:
        raise ValueError("m must be at least 2")
    cap = total if max_part is None else min(max_part, total)
    out: list[Partition] = []
    acc: list[int] = []

    def rec(remaining: int, part: int) -> None:
        if remaining == 0:
            out.append(Partition.from_parts(acc))
            return
        for p in range(min(part, remaining), 0, -1):
            for count in range(min(m - 1, remaining // p), 0, -1):
                acc.extend([p] * count)
                rec(remaining - p * count, p - 1)
                del acc[len(acc) - count:]

    rec(total, cap)
    return out


@cache
def count_p(m: int, i: int) -> int:
    """Number of partitions of ``i`` into at least two parts, multiplicities < m.

    Computed by exhaustive enumeration; this function is the reference count
    the chain verifiers are compared against.
    """
    if m < 2 or i < 1:
        raise ValueError("need m >= 2 and i >= 1")
    return sum(1 for p in enumerate_partitions(i, m) if p.total_parts >= 2)


@cache
def count_q(m: int, i: int) -> int:
    """Partial sum of :func:`count_p` up to ``i``."""
    if m < 2 or i < 1:
        raise ValueError("need m >= 2 and i >= 1")
    return sum(count_p(m, j) for j in range(1, i + 1))


def _decompositions(
    total: int, max_part: int, cap: tuple[int, ...]
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Ways to write ``total`` as a_1*j_1 + ... with j_i <= max_part distinct
    and a_i <= cap[j_i - 1]; yields ``((part, count), ...)`` descending."""
    if total == 0:
        yield ()
        return
    for part in range(min(max_part, total), 0, -1):
        top = min(cap[part - 1], total // part)
        for count in range(top, 0, -1):
            for rest in _decompositions(total - part * count, part - 1, cap):
                yield ((part, count),) + rest


def _refinements(p: Partition, m: int, a: int | None) -> list[Partition]:
    if a is not None and a < 2:
        raise ValueError("a must be at least 2")
    found: set[Partition] = set()
    for j in p.support:
        cap = tuple(m - 1 - p.multiplicity(i) for i in range(1, j))
        base = p.remove(j)
        for decomp in _decompositions(j, j - 1, cap):
            if a is not None and sum(c for _, c in decomp) != a:
                continue
            theta = base
            for part, count in decomp:
                theta = theta.add(part, count)
            found.add(theta)
    return sorted(found, key=_descending_key, reverse=True)


def refinements(p: Partition, bound: MultiplicityBound, a: int | None = None) -> list[Partition]:
    """Partitions obtained by replacing one copy of a part by smaller parts.

    One copy of a part ``j`` is removed and parts ``j_1 < ... < j_l < j`` are
    inserted with multiplicities ``a_i`` summing (weighted) to ``j``, subject
    to ``a_i <= m - 1 - multiplicity(j_i)``.  With ``a`` given only
    refinements with ``sum(a_i) == a`` are kept; ``a=None`` keeps all.
    Duplicates are removed and the result is in canonical descending order.
    """
    return _refinements(p, bound.m, a)


def _has_two_refinement(p: Partition, m: int) -> bool:
    for j in p.support:
        for q in range(1, j // 2 + 1):
            r = j - q
            if q == r:
                if p.multiplicity(q) <= m - 3:
                    return True
            elif p.multiplicity(q) <= m - 2 and p.multiplicity(r) <= m - 2:
                return True
    return False


def is_unrefinable(p: Partition, bound: MultiplicityBound) -> bool:
    """True when no refinement exists.

    Equivalent to the absence of a 2-refinement: any refinement factors into
    single-split steps, so testing splits of one part into two suffices.
    """
    return not _has_two_refinement(p, bound.m)


@cache
def _steps(mults: tuple[int, ...], m: int) -> int:
    best = 0
    for theta in _refinements(Partition(mults), m, a=2):
        best = max(best, 1 + _steps(theta.mults, m))
    return best


def refinability_steps(p: Partition, bound: MultiplicityBound) -> int:
    """Length of the longest chain of 2-refinements starting at ``p``.

    0 for unrefinable partitions.  Computed by memoized search over the
    refinement DAG; every maximal chain necessarily ends at an unrefinable
    partition since each step strictly increases the number of parts.
    """
    return _steps(p.mults, bound.m)


def excludant_profile(p: Partition, bound: MultiplicityBound) -> ExcludantProfile:
    """Deficits of ``p`` relative to the full multiplicity vector on 1..n-1."""
    m, n = bound.m, bound.n
    if p.max_part >= n:
        raise ValueError("partition has a part >= n; excludants are undefined")
    if not p.fits(m):
        raise ValueError("partition has a multiplicity >= m")
    ex = tuple(
        (i, m - 1 - p.multiplicity(i)) for i in range(1, n) if p.multiplicity(i) < m - 1
    )
    return ExcludantProfile(ex)


def excludant_condition(
    p: Partition, k: int, bound: MultiplicityBound
) -> tuple[int | None, int | None]:
    """Indices of the excludant conditions satisfied by the pair ``(p, k)``.

    Returns ``(strong, weak)``: ``strong`` is the least i with
    ``n < k + e_i`` and ``weak`` the least i with ``n < k + e_1 + ... + e_i``,
    ``None`` when no such index exists.  ``weak <= strong`` whenever both
    exist, since the prefix sums dominate the individual excludants.
    """
    if not 1 <= k <= bound.n:
        raise ValueError("k must lie in 1..n")
    indices = excludant_profile(p, bound).indices
    strong = next((i for i, e in enumerate(indices, start=1) if bound.n < k + e), None)
    weak = None
    prefix = 0
    for i, e in enumerate(indices, start=1):
        prefix += e
        if bound.n < k + prefix:
            weak = i
            break
    return strong, weak


def shape_predicates(p: Partition) -> ShapeFlags:
    """Whether ``p`` is {1, 2, ..., t} (triangular) or {2, 3, ..., t} (weak)."""
    mults = p.mults
    triangular = bool(mults) and all(v == 1 for v in mults)
    weak_triangular = (
        len(mults) >= 2 and mults[0] == 0 and all(v == 1 for v in mults[1:])
    )
    return ShapeFlags(triangular, weak_triangular)
