"""The idealizer chain and the verifiers for its closed-form descriptions.

The chain starts from the abelian set of bare derivative symbols and applies
the basis-level idealizer repeatedly.  Its growth is governed by the
partition-counting sequences, its step ``n - 1`` (``n`` for multiplicities
above two) by unrefinable partitions with a minimum-excludant constraint,
and its step ``n`` in the distinct-parts case by the one-step excludant and
triangular conditions, with three sporadic exceptions at ``n = 8``.

The iterated idealizer is always the ground truth here; every closed form is
recomputed independently and compared against it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .liering import BasisElement, HomogeneousSet, enumerate_basis, idealizer
from .partitions import (
    MultiplicityBound,
    Partition,
    count_p,
    count_q,
    enumerate_partitions,
    excludant_condition,
    excludant_profile,
    is_unrefinable,
    refinability_steps,
    refinements,
    shape_predicates,
)
from .verification import VerificationResult


@dataclass(frozen=True)
class ChainStep:
    """One term of the chain: the full set plus what the step added."""

    index: int
    basis_set: HomogeneousSet
    new_elements: frozenset[BasisElement]
    per_layer_counts: dict[int, int]
    rank: int


@dataclass
class ChainReport:
    """The computed chain and, once verified, the growth comparisons."""

    bound: MultiplicityBound
    steps: list[ChainStep]
    growth_check: dict | None = None
    layer_check: list[dict] | None = None

    @property
    def depth(self) -> int:
        return self.steps[-1].index

    def step(self, index: int) -> ChainStep:
        if not -1 <= index <= self.depth:
            raise IndexError(f"chain step {index} not computed")
        return self.steps[index + 1]

    def ranks(self) -> dict[int, int]:
        return {s.index: s.rank for s in self.steps}

    def to_json(self) -> dict:
        out: dict = {
            "m": self.bound.m,
            "n": self.bound.n,
            "steps": [
                {
                    "i": s.index,
                    "rank": s.rank,
                    "per_layer": {str(k): v for k, v in sorted(s.per_layer_counts.items())},
                    "new_elements": [
                        e.to_json()
                        for e in sorted(s.new_elements, key=BasisElement.sort_key)
                    ],
                }
                for s in self.steps
            ],
        }
        if self.growth_check is not None:
            out["growth_check"] = self.growth_check
        if self.layer_check is not None:
            out["layer_check"] = self.layer_check
        return out

    def to_csv(self) -> str:
        """One row per step and layer: i,k,count,predicted,match.

        The prediction columns are filled inside the closed-form range
        ``1 <= i <= n - 1 - delta`` and left empty elsewhere.
        """
        m, n = self.bound.m, self.bound.n
        delta = self.bound.delta
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["i", "k", "count", "predicted", "match"])
        for s in self.steps:
            if s.index < 1:
                continue
            ks = set(s.per_layer_counts)
            if 1 <= s.index <= n - 1 - delta:
                ks.update(range(n - s.index + 1, n + 1))
            for k in sorted(ks):
                count = s.per_layer_counts.get(k, 0)
                if 1 <= s.index <= n - 1 - delta:
                    predicted = count_p(m, k + 1 + delta + s.index - n)
                    writer.writerow([s.index, k, count, predicted, count == predicted])
                else:
                    writer.writerow([s.index, k, count, "", ""])
        return buf.getvalue()


def initial_sets(bound: MultiplicityBound) -> tuple[HomogeneousSet, HomogeneousSet]:
    """The abelian starting set and its idealizer's closed form.

    The first holds the bare derivative symbols; the second adds every
    single-variable element ``x_j d_k`` with ``j < k``.
    """
    derivs = [BasisElement(Partition(), k) for k in range(1, bound.n + 1)]
    singles = [
        BasisElement(Partition.from_parts([j]), k)
        for k in range(1, bound.n + 1)
        for j in range(1, k)
    ]
    T = HomogeneousSet(frozenset(derivs), bound)
    U = HomogeneousSet(frozenset(derivs + singles), bound)
    return T, U


def _layer_counts(new: frozenset[BasisElement]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for e in new:
        counts[e.k] = counts.get(e.k, 0) + 1
    return counts


def idealizer_chain(bound: MultiplicityBound, depth: int) -> ChainReport:
    """Iterate the basis-level idealizer ``depth`` times past the start.

    Steps are indexed from -1 (the abelian start) through ``depth``.  The
    chain is ascending; once a step adds nothing the remaining steps repeat
    the same set with rank 0 and are not recomputed.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    T, U = initial_sets(bound)
    steps = [ChainStep(-1, T, frozenset(T.elements), _layer_counts(frozenset(T.elements)), len(T))]
    current = T
    stable = False
    for i in range(0, depth + 1):
        if stable:
            steps.append(ChainStep(i, current, frozenset(), {}, 0))
            continue
        nxt = idealizer(current)
        assert current.elements <= nxt.elements, "chain must be ascending"
        new = nxt.elements - current.elements
        if i == 0:
            assert nxt.elements == U.elements, "step 0 must be the degree-one set"
        steps.append(ChainStep(i, nxt, new, _layer_counts(new), len(new)))
        if not new:
            stable = True
        current = nxt
    return ChainReport(bound, steps)


def predicted_new_elements(bound: MultiplicityBound, i: int) -> frozenset[BasisElement]:
    """Closed form for the elements added at step ``i``.

    For ``n - i + 1 <= k <= n`` these are the basis elements whose partition
    has weight ``k + i - n + 1 + delta`` and at least two parts; the
    degree-at-most-one monomials of that weight already sit in step 0.
    """
    m, n = bound.m, bound.n
    delta = bound.delta
    if not 1 <= i <= n - 1 - delta:
        raise ValueError(f"closed form only valid for 1 <= i <= {n - 1 - delta}")
    out: set[BasisElement] = set()
    for k in range(n - i + 1, n + 1):
        wt = k + i - n + 1 + delta
        for p in enumerate_partitions(wt, m, max_part=k - 1):
            if p.total_parts >= 2:
                out.add(BasisElement(p, k))
    return frozenset(out)


def verify_growth(bound: MultiplicityBound, report: ChainReport) -> VerificationResult:
    """Compare computed ranks, layer counts and step sets with the closed forms.

    Checks every step in the valid range ``1 <= i <= n - 1 - delta``: the
    rank must be the partial-sum count, each layer must match the
    partition count, and the added set must equal the predicted set.
    """
    if report.bound != bound:
        raise ValueError("report was computed for a different bound")
    m, n = bound.m, bound.n
    delta = bound.delta
    imax = n - 1 - delta
    if report.depth < imax:
        raise ValueError(f"report depth {report.depth} below required {imax}")
    failures: list[str] = []
    rank_rows: list[dict] = []
    layer_rows: list[dict] = []
    checked = 0
    for i in range(1, imax + 1):
        step = report.step(i)
        expected_rank = count_q(m, i + 1 + delta)
        rank_rows.append(
            {"i": i, "rank": step.rank, "expected": expected_rank,
             "match": step.rank == expected_rank}
        )
        checked += 1
        if step.rank != expected_rank:
            failures.append(f"rank at step {i}: got {step.rank}, expected {expected_rank}")
        for k in range(n - i + 1, n + 1):
            expected = count_p(m, k + 1 + delta + i - n)
            got = step.per_layer_counts.get(k, 0)
            layer_rows.append(
                {"i": i, "k": k, "count": got, "expected": expected,
                 "match": got == expected}
            )
            checked += 1
            if got != expected:
                failures.append(
                    f"layer count at step {i}, k={k}: got {got}, expected {expected}"
                )
        predicted = predicted_new_elements(bound, i)
        checked += 1
        if step.new_elements != predicted:
            diff = step.new_elements.symmetric_difference(predicted)
            sample = sorted(diff, key=BasisElement.sort_key)[0]
            failures.append(f"set mismatch at step {i}, first difference {sample}")
    report.growth_check = {"passed": not failures, "ranks": rank_rows}
    report.layer_check = layer_rows
    return VerificationResult("growth", not failures, checked, failures)


def unrefinable_first_excludant_set(bound: MultiplicityBound) -> frozenset[BasisElement]:
    """Basis elements with unrefinable partition of weight ``k + 1`` whose
    minimum excludant ``e`` satisfies ``n < k + e``."""
    out: set[BasisElement] = set()
    for b in enumerate_basis(bound):
        p = b.partition
        if p.weight != b.k + 1:
            continue
        if not is_unrefinable(p, bound):
            continue
        strong, _ = excludant_condition(p, b.k, bound)
        if strong == 1:
            out.add(b)
    return frozenset(out)


def verify_unrefinable_step(
    bound: MultiplicityBound, report: ChainReport | None = None
) -> VerificationResult:
    """Check the first step past the closed-form range against the predicate set.

    Step ``n - delta`` must add exactly the unrefinable-partition elements
    of weight ``k + 1`` satisfying the first excludant condition.
    """
    if bound.n < 4:
        raise ValueError("needs n >= 4")
    istar = bound.n - bound.delta
    if report is None:
        report = idealizer_chain(bound, istar)
    if report.bound != bound or report.depth < istar:
        raise ValueError("report missing the required step")
    computed = report.step(istar).new_elements
    predicted = unrefinable_first_excludant_set(bound)
    failures = []
    only_computed = sorted(computed - predicted, key=BasisElement.sort_key)
    only_predicted = sorted(predicted - computed, key=BasisElement.sort_key)
    for e in only_computed:
        failures.append(f"step {istar} added unpredicted element {e}")
    for e in only_predicted:
        failures.append(f"step {istar} missing predicted element {e}")
    return VerificationResult(
        "unrefinable-step",
        not failures,
        len(computed | predicted),
        failures,
        data={"step": istar, "size": len(computed)},
    )


def one_step_excludant_condition(p: Partition, k: int, n: int) -> bool:
    """The distinct-parts side condition for membership at step ``n``.

    Requires weight ``k + 1``.  Holds when one of the following does, with
    ``e_1 < e_2 < ...`` the excludants of ``p`` relative to ``n``:

    - exactly one refinement step is possible and ``n < k + e_1``;
    - exactly one step is possible, the second excludant index is the least
      with ``n < k + e_i``, and every refinement keeps part ``e_1`` present;
    - exactly one step is possible, the third excludant index is the least
      strong index, the second is the least weak index, part ``e_1 + e_2``
      appears once, and the unique refinement replaces it by ``e_1, e_2``;
    - no refinement is possible and the second excludant index is the least
      with ``n < k + e_1 + ... + e_i``.
    """
    bound = MultiplicityBound(2, n)
    if p.weight != k + 1:
        raise ValueError("condition applies to partitions of weight k + 1")
    t = refinability_steps(p, bound)
    strong, weak = excludant_condition(p, k, bound)
    if t == 0:
        return weak == 2
    if t != 1:
        return False
    if strong == 1:
        return True
    indices = excludant_profile(p, bound).indices
    refs = refinements(p, bound)
    if strong == 2:
        e1 = indices[0]
        return all(theta.multiplicity(e1) == 1 for theta in refs)
    if strong == 3 and weak == 2:
        e1, e2 = indices[0], indices[1]
        if p.multiplicity(e1 + e2) != 1:
            return False
        expected = p.remove(e1 + e2).add(e1).add(e2)
        return refs == [expected]
    return False


#: The three elements at which the step-n description fails for n = 8.
N8_EXCEPTIONS = frozenset(
    {
        BasisElement(Partition.from_parts([7, 2]), 8),
        BasisElement(Partition.from_parts([5, 4]), 8),
        BasisElement(Partition.from_parts([4, 2]), 5),
    }
)


def nth_step_predicted_set(n: int) -> frozenset[BasisElement]:
    """Condition side of the step-``n`` description in the distinct-parts case."""
    bound = MultiplicityBound(2, n)
    out: set[BasisElement] = set()
    for b in enumerate_basis(bound):
        p, k = b.partition, b.k
        wt = p.weight
        if wt == k + 1:
            if one_step_excludant_condition(p, k, n):
                out.add(b)
        elif wt == k + 2 and k == n:
            flags = shape_predicates(p)
            if flags.is_triangular or flags.is_weak_triangular:
                out.add(b)
    return frozenset(out)


def verify_nth_step(n: int, report: ChainReport | None = None) -> VerificationResult:
    """Compare step ``n`` of the distinct-parts chain with its predicted set.

    The symmetric difference must be empty, except at ``n = 8`` where it
    must consist of exactly the three sporadic elements; the direction of
    each sporadic element is recorded in the result data.
    """
    if n < 5:
        raise ValueError("needs n >= 5")
    bound = MultiplicityBound(2, n)
    if report is None:
        report = idealizer_chain(bound, n)
    if report.bound != bound or report.depth < n:
        raise ValueError("report missing the required step")
    computed = report.step(n).new_elements
    predicted = nth_step_predicted_set(n)
    only_computed = sorted(computed - predicted, key=BasisElement.sort_key)
    only_predicted = sorted(predicted - computed, key=BasisElement.sort_key)
    diff = frozenset(only_computed) | frozenset(only_predicted)
    expected_diff = N8_EXCEPTIONS if n == 8 else frozenset()
    failures = []
    if diff != expected_diff:
        unexpected = sorted(diff ^ expected_diff, key=BasisElement.sort_key)
        failures.append(f"unexpected difference at step {n}: {unexpected[0]}")
    return VerificationResult(
        "nth-step",
        not failures,
        len(computed | predicted),
        failures,
        data={
            "computed_only": [str(e) for e in only_computed],
            "predicted_only": [str(e) for e in only_predicted],
            "step_size": len(computed),
        },
    )
