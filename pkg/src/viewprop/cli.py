"""Command-line entry point: run a benchmark model and print statistics.

Exit codes: 0 on success, 1 on a model or usage error, 2 when an internal
invariant is violated (a reported solution fails re-validation, a contract
check trips, or ``--seed-check`` finds a counterexample).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import models
from .variables import ContractViolation

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="viewprop", description="Run a benchmark model with derived propagators.")
    p.add_argument("--model", help=f"one of {', '.join(models.BUILDERS)}")
    p.add_argument("--size", type=int, help="model size (defaults per model)")
    p.add_argument("--mode", choices=models.MODES, default="views")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", dest="search", action="store_const", const="all")
    g.add_argument("--first", dest="search", action="store_const", const="first")
    g.add_argument("--optimize", dest="search", action="store_const", const="optimize")
    p.add_argument("--stats", choices=("json", "text"), default="text")
    p.add_argument("--checked", action="store_true", help="enable contract checks in the engine")
    p.add_argument("--seed-check", action="store_true", help="run the quick oracle suite first")
    return p


def _record(model: models.Model, sols, stats) -> dict:
    rec = {
        "model": model.name,
        "size": model.size,
        "mode": model.mode,
        "solutions": stats.solutions,
        "failures": stats.failures,
        "propagations": stats.propagations,
        "nodes": stats.nodes,
        "wall_ms": round(stats.wall_time * 1000, 3),
    }
    if model.objective is not None and sols:
        rec["objective"] = models.objective_value(model, sols[-1])
    return rec


def _print_text(rec: dict) -> None:
    cols = ["model", "size", "mode", "solutions", "failures", "propagations", "nodes", "wall_ms"]
    if "objective" in rec:
        cols.append("objective")
    print("  ".join(f"{c:>12}" for c in cols))
    print("  ".join(f"{rec[c]!s:>12}" for c in cols))


def seed_check(out=sys.stderr) -> bool:
    """Quick oracle pass: hull classification and every claim on the small catalog entries."""
    from . import views as V
    from .oracle import CLAIMS, check_theorem, hull_property
    from .oracle.theorems import all_pairs, lab

    ok = True
    expect = {
        V.IDENTITY: (True, True), V.offset(3): (True, True), V.minus(): (True, True),
        V.scale(2): (True, False), V.scale(3): (True, False),
    }
    for spec, (inj, sur) in expect.items():
        h = hull_property(spec)
        good = (h.injective, h.surjective) == (inj, sur)
        ok &= good
        print(f"hull {spec!r}: injective={h.injective} surjective={h.surjective} {'ok' if good else 'MISMATCH'}", file=out)
    for e, v in all_pairs():
        if len(lab(e, v).domains()) > 4000:
            continue
        for claim in CLAIMS + ("completeness",):
            r = check_theorem(e, v, claim)
            if not r.passed:
                ok = False
                print(str(r), file=out)
    print(f"seed check {'passed' if ok else 'FAILED'}", file=out)
    return ok


def main(argv: list[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"viewprop: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.seed_check and not seed_check():
        return EXIT_INVARIANT
    if args.model is None:
        if args.seed_check:
            return EXIT_OK
        print("viewprop: --model is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        model = models.build(args.model, args.size, args.mode, checked=args.checked)
        search = args.search or ("optimize" if model.objective is not None else "all")
        sols, stats = models.solve(model, search)
    except models.ModelError as exc:
        print(f"viewprop: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        print(f"viewprop: contract violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    bad = [s for s in sols if not model.check(s)]
    rec = _record(model, sols, stats)
    if args.stats == "json":
        print(json.dumps(rec))
    else:
        _print_text(rec)
    if bad or stats.failures + stats.solutions > stats.nodes:
        print(f"viewprop: {len(bad)} reported solutions fail validation", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
