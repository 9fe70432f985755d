"""Command line entry point: ``slpolar verify`` and ``slpolar describe``."""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
import sys
from typing import Any, Iterable, Sequence

from .algebra import build_sl
from .config import RunConfig
from .const import (
    ALL,
    ALL_CHECKS,
    CHECK_RICHARDSON_DENSITY,
    CONF_BOUND,
    CONF_CHECKS,
    CONF_COMPOSITIONS,
    CONF_FORMAT,
    CONF_JOBS,
    CONF_OUTPUT,
    CONF_RANKS,
    CONF_SAMPLES,
    CONF_SEED,
    DEFAULT_BOUND,
    DEFAULT_FORMAT,
    DEFAULT_JOBS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    FORMAT_JSON,
    FORMAT_MARKDOWN,
    MAX_EXHAUSTIVE_RANK,
    RICHARDSON_THRESHOLD,
    VERSION,
)
from .exceptions import ConfigError, SlPolarError
from .parabolic import build_parabolic
from .verify import CheckResult, run_all
from .weyl import LeviComposition, Root, compositions, coset_count, multinomial

_LOGGER = logging.getLogger(__name__)

# argparse destination -> configuration key
_FLAGS = {
    "rank": CONF_RANKS,
    "levi": CONF_COMPOSITIONS,
    "samples": CONF_SAMPLES,
    "seed": CONF_SEED,
    "bound": CONF_BOUND,
    "check": CONF_CHECKS,
    "out": CONF_OUTPUT,
    "format": CONF_FORMAT,
    "jobs": CONF_JOBS,
}
_OPTIONS = {key: f"--{flag}" for flag, key in _FLAGS.items()}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slpolar",
        description="Check polarization and parabolic statements for sl(n) in exact arithmetic.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress (-vv for debug)")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run checks over a grid of ranks and Levi compositions")
    verify.add_argument("--rank", action="append", type=int, metavar="N", help="rank n of sl(n); repeatable")
    verify.add_argument(
        "--levi", action="append", metavar="n1,n2,...", help="Levi composition; repeatable (default: all)"
    )
    verify.add_argument("--samples", type=int, help=f"random trials per cell (default {DEFAULT_SAMPLES})")
    verify.add_argument("--seed", type=int, help=f"master seed (default {DEFAULT_SEED})")
    verify.add_argument("--bound", type=int, help=f"sampling bound on numerators (default {DEFAULT_BOUND})")
    verify.add_argument(
        "--check", action="append", choices=[ALL, *ALL_CHECKS], help="check to run; repeatable (default all)"
    )
    verify.add_argument("--out", help="write the report here instead of stdout")
    verify.add_argument("--format", choices=[FORMAT_JSON, FORMAT_MARKDOWN], help=f"default {DEFAULT_FORMAT}")
    verify.add_argument("--jobs", type=int, help=f"worker processes (default {DEFAULT_JOBS})")

    describe = commands.add_parser("describe", help="print the root and parabolic data of sl(n)")
    describe.add_argument("--rank", type=int, required=True, metavar="N")
    describe.add_argument("--levi", action="append", metavar="n1,n2,...")
    return parser


def _to_config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RunConfig:
    user_input = {key: getattr(args, flag) for flag, key in _FLAGS.items() if getattr(args, flag) is not None}
    try:
        return RunConfig.from_input(user_input)
    except ConfigError as err:
        key, _, message = str(err).partition(": ")
        if key in _OPTIONS:
            parser.error(f"argument {_OPTIONS[key]}: {message}")
        parser.error(str(err))


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse ``verify`` arguments into a validated RunConfig."""
    parser = build_parser()
    args = parser.parse_args(list(argv))
    if args.command != "verify":
        parser.error("parse_args only handles the verify command")
    return _to_config(parser, args)


def _meta(config: RunConfig | None) -> dict[str, Any]:
    if config is None:
        return {"version": VERSION}
    return {
        "seed": config.seed,
        "samples": config.samples,
        "bound": config.bound,
        "ranks": list(config.ranks),
        "checks": list(config.checks),
        "grid": [{"n": n, "levi": str(levi)} for n, levi in config.grid()],
        "version": VERSION,
    }


def _markdown(results: Sequence[CheckResult], meta: dict[str, Any]) -> str:
    lines = ["# slpolar report", ""]
    lines.append(f"version {meta['version']}" + (f", seed {meta['seed']}" if "seed" in meta else ""))
    failed = sum(1 for result in results if not result.passed)
    lines.append(f"{len(results) - failed} of {len(results)} cells passed")
    for check in ALL_CHECKS:
        rows = [result for result in results if result.check_id == check]
        if not rows:
            continue
        lines += ["", f"## {check}", ""]
        if check == CHECK_RICHARDSON_DENSITY:
            lines += [f"Passing means a Richardson share of at least {RICHARDSON_THRESHOLD:.0%}.", ""]
        lines.append("| n | levi | trials | failures | filtered | ms | status |")
        lines.append("|---|------|--------|----------|----------|----|--------|")
        for result in rows:
            lines.append(
                f"| {result.n} | {result.levi or '-'} | {result.trials} | {result.failures} "
                f"| {result.filtered} | {result.elapsed_ms:.1f} | {'pass' if result.passed else 'FAIL'} |"
            )
    return "\n".join(lines) + "\n"


def emit_report(results: Sequence[CheckResult], fmt: str = FORMAT_JSON, config: RunConfig | None = None) -> bytes:
    """Render results as JSON or markdown, newline terminated."""
    meta = _meta(config)
    if fmt == FORMAT_MARKDOWN:
        return _markdown(results, meta).encode("utf-8")
    if fmt != FORMAT_JSON:
        raise ConfigError(f"unknown report format {fmt!r}")
    report = {"meta": meta, "results": [result.to_dict() for result in results]}
    return (json.dumps(report, indent=2) + "\n").encode("utf-8")


def load_report(data: bytes | str) -> tuple[dict[str, Any], list[CheckResult]]:
    """Read back a JSON report written by emit_report."""
    report = json.loads(data)
    return report["meta"], [CheckResult.from_dict(item) for item in report["results"]]


def _roots(roots: Iterable[Root]) -> str:
    return " ".join(str(root) for root in sorted(roots)) or "-"


def describe(n: int, levis: Sequence[LeviComposition] | None = None) -> str:
    """A plain text summary of sl(n) and its standard parabolics."""
    g = build_sl(n)
    lines = [
        f"sl({n}): dim {g.dim}, rank {g.rank}, b_g {len(g.b_indices)}, "
        f"invariant degrees {', '.join(str(d) for d in range(2, n + 1))}",
        f"basis: {' '.join(g.labels)}",
    ]
    for levi in levis or compositions(n):
        p = build_parabolic(g, levi)
        line = f"p_{levi}: dim p {p.p.rank}, dim l {p.l.rank}, dim p_u {p.pu.rank}, b_l {p.b_l}, |W/W_l| "
        if n > MAX_EXHAUSTIVE_RANK:
            line += f"multinomial {multinomial(levi)} (exhaustive checks unavailable)"
        else:
            line += f"{coset_count(levi)} (multinomial {multinomial(levi)})"
        lines.append(line)
        lines.append(f"  R_l: {_roots(p.r_l)}")
        lines.append(f"  R'_+: {_roots(p.r_prime_plus)}")
    return "\n".join(lines) + "\n"


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(sys.argv[1:] if argv is None else list(argv))
    _configure_logging(args.verbose)

    if args.command == "describe":
        try:
            levis = [LeviComposition.parse(text) for text in args.levi or ()]
            sys.stdout.write(describe(args.rank, levis or None))
        except SlPolarError as err:
            parser.error(str(err))
        return 0

    config = _to_config(parser, args)
    results = run_all(config)
    report = emit_report(results, config.format, config)
    if config.output_path is None:
        sys.stdout.buffer.write(report)
        sys.stdout.flush()
    else:
        try:
            Path(config.output_path).write_bytes(report)
        except OSError as err:
            _LOGGER.error("Could not write report to %s: %s", config.output_path, err)
            return 1
        _LOGGER.info("Wrote report to %s", config.output_path)
    failed = [result for result in results if not result.passed]
    for result in failed:
        _LOGGER.warning("%s failed on n=%s levi=%s", result.check_id, result.n, result.levi)
    return 0 if not failed else 1


if __name__ == "__main__":
    raise SystemExit(main())
