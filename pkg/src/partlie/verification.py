"""Structural checks for the bracket and the basis-level idealizer.

Each check sweeps a stated finite domain (all pairs, all monomials, or a
seeded random sample) and reports the first counterexample if any.  They are
used both by the test suite and by the command line ``verify properties``
subcommand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .liering import (
    BasisElement,
    HomogeneousSet,
    LieElement,
    Monomial,
    _context,
    _raw_bracket,
    bracket,
    bracket_basis,
    enumerate_basis,
    homogeneous_membership,
    idealizer,
    monomial_mul,
    partial_derivative,
    partitions_bounded,
)
from .partitions import MultiplicityBound, Partition


@dataclass
class VerificationResult:
    """Outcome of one machine check: pass/fail plus counterexamples."""

    name: str
    passed: bool
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: PASS ({self.checked} checks)"
        head = self.failures[0] if self.failures else "unspecified failure"
        return f"{self.name}: FAIL ({head})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "data": self.data,
        }


def check_antisymmetry_and_grading(bound: MultiplicityBound) -> VerificationResult:
    """[u, v] = -[v, u] and the result lives in the higher layer, all pairs."""
    ctx = _context(bound)
    info = ctx.info
    m = bound.m
    failures: list[str] = []
    checked = 0
    for lam, k in info:
        for the, j in info:
            checked += 1
            r1 = _raw_bracket(lam, k, the, j, m)
            r2 = _raw_bracket(the, j, lam, k, m)
            if r1 is None or r2 is None:
                if r1 is not r2:
                    failures.append(
                        f"one-sided vanishing for ({lam},{k}) vs ({the},{j})"
                    )
                    break
                continue
            c1, g1, u1 = r1
            c2, g2, u2 = r2
            if g1 != g2 or u1 != u2 or (c1 + c2) % m != 0:
                failures.append(f"antisymmetry broken at ({lam},{k}),({the},{j})")
                break
            if u1 != max(k, j):
                failures.append(f"grading broken at ({lam},{k}),({the},{j})")
                break
        if failures:
            break
    return VerificationResult("antisymmetry+grading", not failures, checked, failures)


def check_weight_lemma(bound: MultiplicityBound) -> VerificationResult:
    """Non-zero brackets land at index max(j,k) with weight shifted by -min(j,k)."""
    ctx = _context(bound)
    info = ctx.info
    m = bound.m
    failures: list[str] = []
    checked = 0
    for lam, k in info:
        wl = sum(i * v for i, v in enumerate(lam, start=1))
        for the, j in info:
            r = _raw_bracket(lam, k, the, j, m)
            if r is None:
                continue
            checked += 1
            _, gamma, u = r
            wt = sum(i * v for i, v in enumerate(gamma, start=1))
            wt_the = sum(i * v for i, v in enumerate(the, start=1))
            if u != max(j, k) or wt != wl + wt_the - min(j, k):
                failures.append(f"weight relation broken at ({lam},{k}),({the},{j})")
                break
        if failures:
            break
    return VerificationResult("weight-lemma", not failures, checked, failures)


def check_injectivity(bound: MultiplicityBound) -> VerificationResult:
    """For fixed right operand, distinct non-vanishing brackets have distinct images."""
    ctx = _context(bound)
    info = ctx.info
    m = bound.m
    failures: list[str] = []
    checked = 0
    for the, j in info:
        seen: dict[tuple[tuple[int, ...], int], tuple] = {}
        for lam, k in info:
            r = _raw_bracket(lam, k, the, j, m)
            if r is None:
                continue
            checked += 1
            key = (r[1], r[2])
            if key in seen and seen[key] != (lam, k):
                failures.append(
                    f"collision against ({the},{j}): ({lam},{k}) vs {seen[key]}"
                )
                break
            seen[key] = (lam, k)
        if failures:
            break
    return VerificationResult("bracket-injectivity", not failures, checked, failures)


def check_leibniz(bound: MultiplicityBound) -> VerificationResult:
    """d_k(ab) = d_k(a) b + a d_k(b) over all reduced monomial pairs."""
    m, n = bound.m, bound.n
    monomials = [Monomial(p) for p in partitions_bounded(m, n)]
    failures: list[str] = []
    checked = 0

    def as_term(coeff: int, mono: Monomial) -> dict:
        if coeff % m == 0 or mono.is_zero:
            return {}
        return {mono.partition: coeff % m}

    for a in monomials:
        for b in monomials:
            ab = monomial_mul(a, b, bound)
            for k in range(1, n + 1):
                checked += 1
                lhs = as_term(*partial_derivative(k, ab, bound))
                ca, da = partial_derivative(k, a, bound)
                cb, db = partial_derivative(k, b, bound)
                rhs: dict = {}
                for c, mono in ((ca, monomial_mul(da, b, bound)), (cb, monomial_mul(a, db, bound))):
                    if c % m and not mono.is_zero:
                        key = mono.partition
                        rhs[key] = (rhs.get(key, 0) + c) % m
                        if rhs[key] == 0:
                            del rhs[key]
                if lhs != rhs:
                    failures.append(f"Leibniz broken for {a}, {b}, k={k}")
                    break
            if failures:
                break
        if failures:
            break
    return VerificationResult("leibniz", not failures, checked, failures)


def random_lie_element(
    rng: random.Random, basis: list[BasisElement], m: int, max_terms: int = 3
) -> LieElement:
    """A random combination of up to ``max_terms`` basis elements."""
    count = rng.randint(1, max_terms)
    picks = rng.sample(basis, min(count, len(basis)))
    return LieElement.build(((e, rng.randint(1, m - 1)) for e in picks), m)


def check_jacobi(
    bound: MultiplicityBound, samples: int = 1000, seed: int = 0
) -> VerificationResult:
    """[[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on random triples."""
    rng = random.Random(seed)
    basis = enumerate_basis(bound)
    m = bound.m
    failures: list[str] = []
    for t in range(samples):
        a = random_lie_element(rng, basis, m)
        b = random_lie_element(rng, basis, m)
        c = random_lie_element(rng, basis, m)
        total = bracket(bracket(a, b, bound), c, bound)
        total = total.add(bracket(bracket(b, c, bound), a, bound), m)
        total = total.add(bracket(bracket(c, a, bound), b, bound), m)
        if not total.is_zero:
            failures.append(f"Jacobi broken at sample {t}: a={a}, b={b}, c={c}")
            break
    return VerificationResult("jacobi", not failures, samples, failures)


def _idealizes(z: LieElement, H: HomogeneousSet) -> bool:
    """Brute force: [z, h] stays in the span of H for every h in H."""
    for h in H.sorted_elements():
        w = bracket(z, LieElement.of(h), H.bound)
        if not all(e in H.elements for e, _ in w.terms):
            return False
    return True


def scaled_idealizer_exceptions(H: HomogeneousSet) -> set[tuple[int, BasisElement]]:
    """Scalar multiples ``c*b`` idealizing span(H) although ``b`` is not in the
    basis-level idealizer.

    Empty whenever ``m`` is prime.  For composite ``m`` a zero divisor ``c``
    can annihilate every offending bracket coefficient, e.g. ``2*x2^2 d4``
    against the degree-one set at ``m = 4``.
    """
    m = H.bound.m
    basic = idealizer(H).elements
    out: set[tuple[int, BasisElement]] = set()
    for b in enumerate_basis(H.bound):
        if b in basic:
            continue
        for c in range(2, m):
            if _idealizes(LieElement.of(b, c), H):
                out.add((c, b))
    return out


def check_homogeneity(
    H: HomogeneousSet, samples: int = 500, seed: int = 0
) -> VerificationResult:
    """Idealizing the span of ``H`` is a termwise condition on random elements.

    For every sampled ``z``: ``z`` idealizes span(H), checked by brute
    bilinear brackets against the generators, exactly when each of its terms
    ``c*b`` does.  When ``m`` is prime this is further equivalent to every
    term's basis element lying in the basis-level idealizer, so membership in
    the idealizer's span is checked too; for composite ``m`` the scaled
    exceptions returned by :func:`scaled_idealizer_exceptions` are the
    precise correction, and the sampled check takes them into account.
    """
    bound = H.bound
    m = bound.m
    rng = random.Random(seed)
    basis = enumerate_basis(bound)
    ideal = idealizer(H)
    exceptions = scaled_idealizer_exceptions(H)
    failures: list[str] = []
    for t in range(samples):
        z = random_lie_element(rng, basis, m, max_terms=4)
        brute = _idealizes(z, H)
        termwise = all(
            e in ideal.elements or (c, e) in exceptions for e, c in z.terms
        )
        if brute != termwise:
            failures.append(f"homogeneity broken at sample {t}: z={z}")
            break
        if not exceptions and brute != homogeneous_membership(z, ideal):
            failures.append(f"membership test diverges at sample {t}: z={z}")
            break
    return VerificationResult(
        "idealizer-homogeneity",
        not failures,
        samples,
        failures,
        data={"scaled_exceptions": sorted(f"{c}*{b}" for c, b in exceptions)},
    )
