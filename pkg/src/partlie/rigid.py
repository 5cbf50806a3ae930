"""Rigid commutator calculus for the distinct-parts case.

A rigid commutator is a purely combinatorial token: a base index ``b`` plus
a set of punctured indices below it, stored as a bitmask.  The bracket of
two tokens either removes the smaller base from the union of punctures or
collapses to the trivial token.  Mapping ``x^L d_k`` to the token based at
``k`` and punctured at the support of ``L`` is a bijection that carries
Lie brackets to token brackets whenever the Lie bracket survives or the
supports are disjoint, and it transports the idealizer chain to a chain of
token-set normalizers; both facts are verified here by exhaustive sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chain import ChainReport, idealizer_chain
from .liering import BasisElement, bracket_basis, enumerate_basis
from .partitions import MultiplicityBound, Partition
from .verification import VerificationResult


def _mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        if i < 1:
            raise ValueError("puncture indices must be positive")
        out |= 1 << (i - 1)
    return out


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class RigidCommutator:
    """Token based at ``base`` and punctured below it; base 0 is trivial."""

    base: int = 0
    punctures: int = 0

    def __post_init__(self) -> None:
        if self.base < 0 or self.punctures < 0:
            raise ValueError("base and puncture mask must be non-negative")
        if self.base == 0 and self.punctures:
            raise ValueError("the trivial commutator has no punctures")
        if self.base >= 1 and self.punctures >> (self.base - 1):
            raise ValueError("punctures must lie strictly below the base")

    @classmethod
    def of(cls, base: int, punctures: Iterable[int] = ()) -> "RigidCommutator":
        return cls(base, _mask(punctures))

    @property
    def is_trivial(self) -> bool:
        return self.base == 0

    @property
    def puncture_set(self) -> tuple[int, ...]:
        return _bits(self.punctures)

    def to_json(self) -> dict:
        if self.is_trivial:
            return {"trivial": True}
        return {"base": self.base, "punctures": list(self.puncture_set)}

    @classmethod
    def from_json(cls, data: dict) -> "RigidCommutator":
        if data.get("trivial"):
            return TRIVIAL
        return cls.of(int(data["base"]), data.get("punctures", ()))

    def to_text(self) -> str:
        if self.is_trivial:
            return "[]"
        inner = ",".join(str(i) for i in self.puncture_set)
        return f"[{self.base};|{inner}]"

    def __str__(self) -> str:
        return self.to_text()


TRIVIAL = RigidCommutator(0, 0)


def rigid_bracket(a: RigidCommutator, b: RigidCommutator) -> RigidCommutator:
    """Token bracket: keep the larger base and drop the smaller one from the
    merged punctures, trivial unless the smaller base was punctured."""
    if a.is_trivial or b.is_trivial:
        return TRIVIAL
    union = a.punctures | b.punctures
    lo = min(a.base, b.base)
    if not (union >> (lo - 1)) & 1:
        return TRIVIAL
    return RigidCommutator(max(a.base, b.base), union & ~(1 << (lo - 1)))


def to_rigid(u: BasisElement | None) -> RigidCommutator:
    """The token for a basis element; None (the zero element) maps to trivial.

    Defined only on the distinct-parts side: partitions with a repeated part
    are rejected.
    """
    if u is None:
        return TRIVIAL
    if not u.partition.fits(2):
        raise ValueError("only multiplicity-free partitions have a token (m = 2)")
    return RigidCommutator(u.k, _mask(u.partition.support))


def from_rigid(r: RigidCommutator) -> BasisElement | None:
    """Inverse of :func:`to_rigid`."""
    if r.is_trivial:
        return None
    return BasisElement(Partition.from_parts(r.puncture_set), r.base)


def enumerate_rigid(n: int) -> list[RigidCommutator]:
    """All non-trivial tokens with base at most ``n``, in canonical order."""
    if n < 1:
        raise ValueError("n must be positive")
    return [
        RigidCommutator(b, mask) for b in range(1, n + 1) for mask in range(1 << (b - 1))
    ]


def check_bracket_preservation(n: int) -> VerificationResult:
    """Exhaustively compare Lie and token brackets over all ordered pairs.

    The comparison applies whenever the Lie bracket is non-zero or the two
    supports are disjoint; outside that hypothesis the two sides may
    legitimately differ (a truncated product against a punctured survivor).
    """
    bound = MultiplicityBound(2, n)
    basis = enumerate_basis(bound)
    failures: list[str] = []
    checked = 0
    for u in basis:
        mu = _mask(u.partition.support)
        fu = RigidCommutator(u.k, mu)
        for v in basis:
            mv = _mask(v.partition.support)
            lie = bracket_basis(u, v, bound)
            if lie is None and mu & mv:
                continue
            checked += 1
            lhs = to_rigid(lie[1] if lie is not None else None)
            rhs = rigid_bracket(fu, RigidCommutator(v.k, mv))
            if lhs != rhs:
                failures.append(f"mismatch at [{u}, {v}]: {lhs} vs {rhs}")
                break
        if failures:
            break
    return VerificationResult("bracket-preservation", not failures, checked, failures)


def _check_closure(pairs: set[tuple[int, int]], n: int) -> str | None:
    """Closure under bracketing and normalization by the bare generators."""
    for b1, m1 in pairs:
        for b2, m2 in pairs:
            r = _raw_rigid(b1, m1, b2, m2)
            if r is not None and r not in pairs:
                return f"not closed: [{RigidCommutator(b1, m1)}, {RigidCommutator(b2, m2)}]"
    for i in range(1, n + 1):
        for b, mask in pairs:
            r = _raw_rigid(i, 0, b, mask)
            if r is not None and r not in pairs:
                return f"not normalized by generator {i}"
    return None


def _raw_rigid(b1: int, m1: int, b2: int, m2: int) -> tuple[int, int] | None:
    union = m1 | m2
    lo = b1 if b1 < b2 else b2
    if not (union >> (lo - 1)) & 1:
        return None
    return (b1 if b1 > b2 else b2), union & ~(1 << (lo - 1))


def rigid_set_normalizer(
    S: Iterable[RigidCommutator], n: int
) -> set[RigidCommutator]:
    """Tokens whose bracket with every member of ``S`` stays in ``S``.

    ``S`` must consist of non-trivial tokens with base at most ``n``, be
    closed under the bracket up to the trivial token, and be normalized by
    the bare generators; a violation is a caller bug and raises.
    """
    pairs: set[tuple[int, int]] = set()
    for r in S:
        if r.is_trivial or r.base > n:
            raise ValueError(f"{r} is not a non-trivial token with base <= {n}")
        pairs.add((r.base, r.punctures))
    problem = _check_closure(pairs, n)
    if problem is not None:
        raise ValueError(problem)
    out: set[RigidCommutator] = set()
    for b in range(1, n + 1):
        for mask in range(1 << (b - 1)):
            ok = True
            for bs, ms in pairs:
                r = _raw_rigid(b, mask, bs, ms)
                if r is not None and r not in pairs:
                    ok = False
                    break
            if ok:
                out.add(RigidCommutator(b, mask))
    return out


def verify_chain_correspondence(
    n: int, depth: int, report: ChainReport | None = None
) -> VerificationResult:
    """Iterate the token-set normalizer and compare with the mapped chain.

    Both sides start from the bare generators; at every step up to ``depth``
    the normalizer of the previous token set must be exactly the image of
    the corresponding idealizer-chain term.
    """
    bound = MultiplicityBound(2, n)
    if report is None:
        report = idealizer_chain(bound, depth)
    if report.bound != bound or report.depth < depth:
        raise ValueError("report missing the required steps")
    failures: list[str] = []
    checked = 0
    current = {to_rigid(e) for e in report.step(-1).basis_set.elements}
    for i in range(0, depth + 1):
        current = rigid_set_normalizer(current, n)
        expected = {to_rigid(e) for e in report.step(i).basis_set.elements}
        checked += 1
        if current != expected:
            sample = sorted(
                current ^ expected, key=lambda r: (r.base, r.punctures)
            )[0]
            failures.append(f"step {i} differs, first difference {sample}")
            break
    return VerificationResult(
        "chain-correspondence", not failures, checked, failures, data={"depth": depth}
    )
