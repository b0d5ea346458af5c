"""Command-line interface.

Exit codes: 0 when every requested check passes, 1 when a mathematical check
fails (the report carries the witness), 2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .identities import worker_count
from .left_unit import CircleAlgebra, GradingMismatch
from .models import MODEL_REGISTRY, ParameterError, build_model
from .report import (
    CHECK_NAMES,
    RunConfig,
    decompose_report,
    dumps,
    example_report,
    left_unit_report,
    render_table,
    synthesize_report,
    verify_report,
)
from .scalar import Scalar
from .triple import TripleSystem

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gjts",
        description="Exact verification and Peirce decomposition of generalized Jordan triple systems.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, system=True, tripotent=False, checks=False):
        if system:
            src = sp.add_mutually_exclusive_group(required=True)
            src.add_argument("--model", choices=sorted(MODEL_REGISTRY), help="built-in model family")
            src.add_argument("--input", metavar="PATH", help="system JSON file (bare or as written by 'example')")
            sp.add_argument("--params", default="", help="comma-separated model parameters, e.g. 2,3")
        if tripotent:
            sp.add_argument("--tripotent", default="canonical", metavar="PATH|canonical",
                            help="JSON array of scalars, or 'canonical' for the model's or bundle's own")
        if checks:
            sp.add_argument("--check", default="", help=f"comma-separated subset of {','.join(CHECK_NAMES)} or 'all'")
        sp.add_argument("--mode", choices=["exhaustive", "sampled"], help="default: exhaustive up to dim 16")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=10_000)
        sp.add_argument("--format", choices=["json", "table"], default="table")
        sp.add_argument("--out", metavar="PATH", help="write the report here instead of standard output")

    common(sub.add_parser("verify", help="check the defining identities"), checks=True)
    common(sub.add_parser("decompose", help="Peirce decomposition of a tripotent"), tripotent=True)
    common(sub.add_parser("left-unit", help="circle algebra analysis for a left unit"), tripotent=True)
    syn = sub.add_parser("synthesize", help="build a triple system from a circle product")
    syn.add_argument("--input", required=True, metavar="PATH", help="circle-algebra JSON file")
    common(syn, system=False)
    ex = sub.add_parser("example", help="emit a built-in model as JSON")
    ex.add_argument("--model", required=True, choices=sorted(MODEL_REGISTRY))
    ex.add_argument("--params", default="")
    ex.add_argument("--format", choices=["json", "table"], default="json")
    ex.add_argument("--out", metavar="PATH")
    return p


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _params(raw: str) -> list[int]:
    if not raw.strip():
        return []
    try:
        return [int(x) for x in raw.split(",")]
    except ValueError:
        raise UsageError(f"--params must be comma-separated integers, got {raw!r}") from None


def _load_system(args):
    """Returns (system, canonical tripotent or None, descriptor or None, source text)."""
    if getattr(args, "model", None):
        params = _params(args.params)
        try:
            s, e, desc = build_model(args.model, params)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
        return s, e, desc, f"model:{args.model}({','.join(map(str, params))})"
    data = _read_json(args.input)
    canonical = None
    if isinstance(data, dict) and "system_json" in data:
        canonical = data.get("tripotent")
        data = data["system_json"]
    try:
        s = TripleSystem.from_json(data)
    except ValueError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    if canonical is not None:
        canonical = _parse_vector(canonical, s.dim, f"{args.input}: tripotent")
    return s, canonical, None, args.input


def _parse_vector(data, dim: int, where: str):
    if isinstance(data, dict) and "tripotent" in data:
        data = data["tripotent"]
    if not isinstance(data, list):
        raise UsageError(f"{where}: expected a JSON array of scalars")
    try:
        v = tuple(Scalar.from_json(x) for x in data)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{where}: {exc}") from None
    if len(v) != dim:
        raise UsageError(f"{where}: length {len(v)}, system dimension is {dim}")
    return v


def _tripotent(args, s, canonical):
    if args.tripotent == "canonical":
        if canonical is None:
            raise UsageError("no canonical tripotent for this input; pass --tripotent PATH")
        return canonical
    return _parse_vector(_read_json(args.tripotent), s.dim, args.tripotent)


def _config(args, source: str, checks=()) -> RunConfig:
    if getattr(args, "samples", 1) < 1:
        raise UsageError("--samples must be positive")
    return RunConfig(
        command=args.command,
        source=source,
        tripotent_source=getattr(args, "tripotent", "canonical"),
        mode=getattr(args, "mode", None),
        seed=getattr(args, "seed", 0),
        samples=getattr(args, "samples", 10_000),
        checks=tuple(checks),
        output=args.format,
        out_path=args.out,
    )


def _checks(raw: str) -> list[str]:
    if not raw:
        return []
    if raw == "all":
        return list(CHECK_NAMES)
    names = [x.strip() for x in raw.split(",")]
    for n in names:
        if n not in CHECK_NAMES:
            raise UsageError(f"unknown check {n!r}; choose from {', '.join(CHECK_NAMES)} or all")
    return names


def _build(args) -> dict:
    if args.command == "synthesize":
        data = _read_json(args.input)
        try:
            c = CircleAlgebra.from_json(data)
        except (ValueError, GradingMismatch) as exc:
            raise UsageError(f"{args.input}: {exc}") from None
        return synthesize_report(c, _config(args, args.input))

    s, canonical, desc, source = _load_system(args)
    if args.command == "example":
        return example_report(s, canonical, desc, _config(args, source))
    if args.command == "verify":
        return verify_report(s, _config(args, source, _checks(args.check)))
    e = _tripotent(args, s, canonical)
    cfg = _config(args, source)
    if args.command == "decompose":
        return decompose_report(s, e, cfg, desc)
    return left_unit_report(s, e, cfg)


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        worker_count()
        report = _build(args)
    except (UsageError, ValueError) as exc:
        print(f"gjts: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dumps(report) if args.format == "json" else render_table(report)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"gjts: error: {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def main() -> None:
    sys.exit(run())
