"""Command-line front end.

Exit codes: 0 success or verified, 1 negative mathematical result (no
witness, failed verification, reduction gave up), 2 usage, IO or parse error.
Documents go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence

from tverberg_kit.core.errors import (
    ConfigError,
    ExhaustionError,
    InputError,
    ParseError,
    PreconditionError,
    ReductionFailedError,
    TverbergKitError,
)
from tverberg_kit.core.rational import PointConfig, is_general_position
from tverberg_kit.finders.tverberg import TverbergWitness, brute_force_all, find_tverberg3
from tverberg_kit.finders.vkf import find_vkf3
from tverberg_kit.reduction.pipeline import run_reduction
from tverberg_kit.settings import Settings, load_settings
from tverberg_kit.utils.documents import (
    dump_document,
    parse_pointset,
    parse_witness,
    serialize_pointset,
    trace_document,
    tverberg_document,
    verify_document,
    vkf_document,
)
from tverberg_kit.utils.generate import generate_instance
from tverberg_kit.utils.render import render_svg
from tverberg_kit.utils.storage import new_run_id, save_trace
from tverberg_kit.utils.survey import run_survey, save_table, summarize

logger = logging.getLogger("tverberg_kit.cli")

LOG_FORMAT = "[tverberg_kit] %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _at_least(minimum: int):
    def parse(raw: str) -> int:
        try:
            value = int(raw)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {value}")
        return value

    return parse


def _add_jobs(p: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a jobs value given before the subcommand
    p.add_argument("--jobs", type=_at_least(1), default=argparse.SUPPRESS,
                   help="worker processes for candidate scans (TVK_JOBS)")


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


def _load_points(source: str) -> PointConfig:
    return parse_pointset(_read(source))


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _cmd_gen(args, settings: Settings) -> int:
    config = generate_instance(args.seed, args.count, args.dim, args.denom, attempts=settings.gen_attempts)
    _emit(serialize_pointset(config), args.out)
    return EXIT_OK


def _cmd_gp_check(args, settings: Settings) -> int:
    report = is_general_position(_load_points(args.points))
    _emit(json.dumps({"general_position": report.ok,
                      "violator": list(report.violator) if report.violator else None}))
    return EXIT_OK if report else EXIT_NEGATIVE


def _cmd_tverberg(args, settings: Settings) -> int:
    config = _load_points(args.points)
    if args.mode == "find":
        _emit(dump_document(tverberg_document(find_tverberg3(config, jobs=settings.jobs))))
        return EXIT_OK
    found = brute_force_all(config, jobs=settings.jobs)
    _emit(json.dumps([tverberg_document(TverbergWitness(parts, cert)) for parts, cert in found], indent=2))
    return EXIT_OK if found else EXIT_NEGATIVE


def _cmd_vkf(args, settings: Settings) -> int:
    config = _load_points(args.points)
    _emit(dump_document(vkf_document(find_vkf3(config, args.k, jobs=settings.jobs, fast=args.fast))))
    return EXIT_OK


def _cmd_reduce(args, settings: Settings) -> int:
    config = _load_points(args.points)
    trace = run_reduction(config, args.k, retries=settings.retries, jobs=settings.jobs, fast=args.fast)
    doc = trace_document(trace)
    text = dump_document(doc)
    if args.trace:
        Path(args.trace).write_text(text + "\n", encoding="utf-8")
    save_trace(doc, settings, new_run_id())
    _emit(text)
    return EXIT_OK


def _cmd_verify(args, settings: Settings) -> int:
    doc = parse_witness(_read(args.witness))
    config = _load_points(args.points)
    ok = verify_document(config, doc)
    _emit(json.dumps({"kind": doc.kind, "verified": ok}))
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_render(args, settings: Settings) -> int:
    config = _load_points(args.points)
    parts = point = None
    if args.witness:
        doc = parse_witness(_read(args.witness))
        if not verify_document(config, doc):
            logger.warning("rendering a witness that does not verify")
        parts, point = doc.parts, doc.cert.common_point
    render_svg(config, Path(args.svg), parts, point, title=args.title)
    return EXIT_OK


def _cmd_survey(args, settings: Settings) -> int:
    df = run_survey(args.kind, args.count, args.seed, settings, k=args.k)
    if args.out:
        save_table(df, Path(args.out))
    summary = summarize(df)
    _emit(summary.to_string(index=False))
    return EXIT_OK if int(summary["successes"].iloc[0]) == len(df) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tverberg-kit", description="Exact Tverberg / van Kampen-Flores toolkit")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--jobs", type=_at_least(1), help="worker processes for candidate scans (TVK_JOBS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="seeded random point set in general position")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--denom", type=int, default=100, help="denominator bound")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("gp-check", help="general position report")
    p.add_argument("points", nargs="?", default="-")
    p.set_defaults(func=_cmd_gp_check)

    p = sub.add_parser("tverberg", help="Tverberg 3-partitions")
    p.add_argument("mode", choices=("find", "oracle"))
    p.add_argument("points", nargs="?", default="-")
    _add_jobs(p)
    p.set_defaults(func=_cmd_tverberg)

    p = sub.add_parser("vkf", help="van Kampen-Flores triples")
    p.add_argument("mode", choices=("find",))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--fast", action="store_true", help="accept any witness")
    p.add_argument("points", nargs="?", default="-")
    _add_jobs(p)
    p.set_defaults(func=_cmd_vkf)

    p = sub.add_parser("reduce", help="Tverberg partition through the lifting")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--retries", type=_at_least(0), help="retry budget (TVK_RETRIES)")
    p.add_argument("--trace", help="also write the trace document here")
    p.add_argument("--fast", action="store_true")
    p.add_argument("points", nargs="?", default="-")
    _add_jobs(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="re-check a witness document")
    p.add_argument("witness", nargs="?", default="-")
    p.add_argument("--points", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="SVG of a planar point set and witness")
    p.add_argument("--svg", required=True)
    p.add_argument("--witness")
    p.add_argument("--title")
    p.add_argument("points", nargs="?", default="-")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("survey", help="seeded batch runs")
    p.add_argument("kind", choices=("tverberg", "vkf", "reduce"))
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--out", help="table output (.csv or .parquet)")
    _add_jobs(p)
    p.set_defaults(func=_cmd_survey)
    return parser


def _configure_logging(settings: Settings, verbose: int) -> None:
    level = getattr(logging, settings.log_level)
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = min(level, logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        settings = load_settings()
        overrides = {}
        if args.jobs is not None:
            overrides["jobs"] = args.jobs
        if getattr(args, "retries", None) is not None:
            overrides["retries"] = args.retries
        if overrides:
            settings = replace(settings, **overrides)
        _configure_logging(settings, args.verbose)
        return args.func(args, settings)
    except (ExhaustionError, ReductionFailedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (ParseError, InputError, ConfigError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TverbergKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def main(argv: Optional[List[str]] = None) -> int:
    """Console entry: load the repository ``.env`` and run the CLI."""
    from dotenv import load_dotenv

    load_dotenv(dotenv_path=Path(__file__).resolve().parents[2] / ".env")
    return cli_main(argv)
