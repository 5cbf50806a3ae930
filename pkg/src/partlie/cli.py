"""Command-line front end.

Usage:
    partlie partitions --weight 6 --m 2          # enumerate partitions
    partlie sequence --m 2 --max-i 16            # counting sequence table
    partlie chain --m 2 --n 6 --depth 4          # idealizer chain report
    partlie verify growth --m 4 --n 6            # machine-check a theorem

Exit codes: 0 success, 1 a verification failed, 2 invalid flags,
3 requested depth exceeds the safety cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .chain import (
    ChainReport,
    idealizer_chain,
    verify_growth,
    verify_nth_step,
    verify_unrefinable_step,
)
from .liering import enumerate_basis
from .partitions import MultiplicityBound, count_p, count_q, enumerate_partitions
from .rigid import check_bracket_preservation, from_rigid, to_rigid, verify_chain_correspondence
from .verification import (
    VerificationResult,
    check_antisymmetry_and_grading,
    check_homogeneity,
    check_injectivity,
    check_jacobi,
    check_leibniz,
    check_weight_lemma,
)

VERIFY_CHECKS = ("growth", "unrefinable", "nth", "bijection", "properties")


@dataclass
class RunConfig:
    """Parsed invocation: one command plus its numeric and output options."""

    command: str
    m: int = 2
    n: int = 1
    depth: int | None = None
    depth_cap: int | None = None
    max_i: int = 16
    weight: int = 0
    max_part: int | None = None
    check: str = ""
    samples: int = 500
    seed: int = 0
    fmt: str = "text"
    out: str | None = None


def _int_at_least(minimum: int):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return value

    return convert


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partlie",
        description="Partitions, their Lie ring, and the idealizer chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", default=None, help="write output to this path")

    p = sub.add_parser("partitions", help="enumerate bounded-multiplicity partitions")
    p.add_argument("--weight", type=_int_at_least(0), required=True)
    p.add_argument("--m", type=_int_at_least(2), required=True)
    p.add_argument("--max-part", type=_int_at_least(1), default=None)
    add_common(p)

    p = sub.add_parser("sequence", help="counting sequences p and q")
    p.add_argument("--m", type=_int_at_least(2), required=True)
    p.add_argument("--max-i", type=_int_at_least(1), default=16)
    add_common(p)

    p = sub.add_parser("chain", help="compute the idealizer chain")
    p.add_argument("--m", type=_int_at_least(2), required=True)
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.add_argument("--depth", type=_int_at_least(0), default=None)
    p.add_argument(
        "--depth-cap",
        type=_int_at_least(0),
        default=None,
        help="safety cap on depth (default: basis size)",
    )
    add_common(p)

    p = sub.add_parser("verify", help="machine-check one of the statements")
    p.add_argument("check", choices=VERIFY_CHECKS)
    p.add_argument("--m", type=_int_at_least(2), default=2)
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.add_argument("--depth", type=_int_at_least(0), default=None)
    p.add_argument("--samples", type=_int_at_least(1), default=500)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)

    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_partitions(config: RunConfig) -> int:
    items = enumerate_partitions(config.weight, config.m, config.max_part)
    if config.fmt == "json":
        payload = {
            "weight": config.weight,
            "m": config.m,
            "max_part": config.max_part,
            "count": len(items),
            "partitions": [p.to_json() for p in items],
        }
        _emit(json.dumps(payload, indent=2), config.out)
    elif config.fmt == "csv":
        lines = ["partition"] + [p.to_text() for p in items]
        _emit("\n".join(lines) + "\n", config.out)
    else:
        _emit("\n".join(p.to_text() for p in items) or "(none)", config.out)
    return 0


def cmd_sequence(config: RunConfig) -> int:
    rows = [
        {"i": i, "p": count_p(config.m, i), "q": count_q(config.m, i)}
        for i in range(1, config.max_i + 1)
    ]
    if config.fmt == "json":
        _emit(json.dumps({"m": config.m, "rows": rows}, indent=2), config.out)
    elif config.fmt == "csv":
        lines = ["i,p,q"] + [f"{r['i']},{r['p']},{r['q']}" for r in rows]
        _emit("\n".join(lines) + "\n", config.out)
    else:
        lines = [f"# m = {config.m}", f"{'i':>4} {'p':>8} {'q':>10}"]
        lines += [f"{r['i']:>4} {r['p']:>8} {r['q']:>10}" for r in rows]
        _emit("\n".join(lines), config.out)
    return 0


def cmd_chain(config: RunConfig) -> int:
    bound = MultiplicityBound(config.m, config.n)
    depth = config.depth
    if depth is None:
        depth = config.n + 1 if config.m == 2 else config.n
    cap = config.depth_cap
    if cap is None:
        cap = len(enumerate_basis(bound))
    if depth > cap:
        sys.stderr.write(f"depth {depth} exceeds the safety cap {cap}\n")
        return 3
    report = idealizer_chain(bound, depth)
    if depth >= bound.n - 1 - bound.delta:
        verify_growth(bound, report)
    if config.fmt == "json":
        _emit(json.dumps(report.to_json(), indent=2), config.out)
    elif config.fmt == "csv":
        _emit(report.to_csv(), config.out)
    else:
        lines = [f"# idealizer chain, m={config.m}, n={config.n}"]
        for s in report.steps:
            layers = ", ".join(f"{k}:{v}" for k, v in sorted(s.per_layer_counts.items()))
            lines.append(f"step {s.index:>3}  rank {s.rank:>4}  layers {{{layers}}}")
        _emit("\n".join(lines), config.out)
    return 0


def _run_verify(config: RunConfig) -> list[VerificationResult]:
    bound = MultiplicityBound(config.m, config.n)
    if config.check == "growth":
        depth = config.depth
        if depth is None:
            depth = bound.n - 1 - bound.delta
        report = idealizer_chain(bound, depth)
        return [verify_growth(bound, report)]
    if config.check == "unrefinable":
        return [verify_unrefinable_step(bound)]
    if config.check == "nth":
        return [verify_nth_step(config.n)]
    if config.check == "bijection":
        depth = config.depth if config.depth is not None else config.n + 1
        results = [check_bracket_preservation(config.n)]
        results.append(verify_chain_correspondence(config.n, depth))
        results.append(_bijection_result(config.n))
        return results
    # properties: the structural sweeps at the requested bound
    results = [
        check_antisymmetry_and_grading(bound),
        check_weight_lemma(bound),
        check_injectivity(bound),
        check_leibniz(bound),
        check_jacobi(bound, config.samples, config.seed),
    ]
    report = idealizer_chain(bound, min(2, bound.n))
    for i in range(0, min(2, bound.n) + 1):
        results.append(
            check_homogeneity(report.step(i).basis_set, config.samples, config.seed)
        )
    return results


def _bijection_result(n: int) -> VerificationResult:
    from .rigid import enumerate_rigid

    bound = MultiplicityBound(2, n)
    basis = enumerate_basis(bound)
    images = {to_rigid(e) for e in basis}
    failures = []
    if len(images) != len(basis):
        failures.append("token images collide")
    if images != set(enumerate_rigid(n)):
        failures.append("token images miss part of the target set")
    for e in basis:
        if from_rigid(to_rigid(e)) != e:
            failures.append(f"round trip broken at {e}")
            break
    return VerificationResult("bijection", not failures, len(basis), failures)


def cmd_verify(config: RunConfig) -> int:
    try:
        results = _run_verify(config)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    passed = all(r.passed for r in results)
    if config.fmt == "json":
        _emit(json.dumps({"passed": passed, "results": [r.to_json() for r in results]}, indent=2), config.out)
    else:
        lines = [r.summary() for r in results]
        for r in results:
            for key in ("computed_only", "predicted_only", "scaled_exceptions"):
                if r.data.get(key):
                    lines.append(f"  {key}: {', '.join(r.data[key])}")
        lines.append("PASS" if passed else "FAIL")
        _emit("\n".join(lines), config.out)
    return 0 if passed else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = RunConfig(
        command=args.command,
        m=getattr(args, "m", 2),
        n=getattr(args, "n", 1),
        depth=getattr(args, "depth", None),
        depth_cap=getattr(args, "depth_cap", None),
        max_i=getattr(args, "max_i", 16),
        weight=getattr(args, "weight", 0),
        max_part=getattr(args, "max_part", None),
        check=getattr(args, "check", ""),
        samples=getattr(args, "samples", 500),
        seed=getattr(args, "seed", 0),
        fmt=args.fmt,
        out=args.out,
    )
    if config.command == "verify":
        if config.check in ("nth", "bijection") and config.m != 2:
            sys.stderr.write(f"error: verify {config.check} requires --m 2\n")
            return 2
        if config.check == "nth" and config.n < 5:
            sys.stderr.write("error: verify nth requires --n >= 5\n")
            return 2
        if config.check == "unrefinable" and config.n < 4:
            sys.stderr.write("error: verify unrefinable requires --n >= 4\n")
            return 2
        if config.check in ("nth", "bijection") and config.n < 3:
            sys.stderr.write(f"error: verify {config.check} requires --n >= 3\n")
            return 2
    try:
        if config.command == "partitions":
            return cmd_partitions(config)
        if config.command == "sequence":
            return cmd_sequence(config)
        if config.command == "chain":
            return cmd_chain(config)
        return cmd_verify(config)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
