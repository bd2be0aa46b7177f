"""Command-line entry point: ``python -m skewgroup.harness <command> ...``."""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from ..radical import NonSplitError
from .batteries import (
    TARGETS,
    Context,
    battery_build,
    battery_fdim_conjecture,
    battery_dims,
    battery_functors,
    battery_skew_structure,
    battery_sgldim,
    battery_invariance,
)
from .cache import ReportCache
from .report import Check, Report, normalize_report, render_json, render_markdown
from .schema import SchemaError, list_fixtures, load_fixture, load_spec

__all__ = ["main", "build_parser", "EXIT_PASS", "EXIT_FAIL", "EXIT_SCHEMA", "EXIT_NONSPLIT", "EXIT_NOT_EXHAUSTIVE"]

EXIT_PASS, EXIT_FAIL, EXIT_SCHEMA, EXIT_NONSPLIT, EXIT_NOT_EXHAUSTIVE = 0, 1, 2, 3, 4

_OPTION_FLAGS = {"cutoff": "--cutoff", "length_bound": "--length-bound", "mult_bound": "--mult-bound", "budget": "--budget", "seed": "--seed"}


def _default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "skewgroup"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--fixture", metavar="NAME", help="bundled fixture name")
    src.add_argument("--spec", metavar="PATH", help="problem document (JSON)")
    common.add_argument("--cutoff", type=int, metavar="N", help="resolution cutoff (default 10)")
    common.add_argument("--length-bound", type=int, metavar="L", help="complex length bound (default 3)")
    common.add_argument("--mult-bound", type=int, metavar="M", help="PIM multiplicity bound (default 2)")
    common.add_argument("--budget", type=int, metavar="K", help="candidate budget (default 10^6)")
    common.add_argument("--seed", type=int, metavar="N", help="random seed (default 0)")
    common.add_argument("--format", choices=("json", "md"), default="json")
    common.add_argument("--cache-dir", metavar="PATH", help="cache directory (default $XDG_CACHE_HOME/skewgroup)")
    common.add_argument("--no-cache", action="store_true", help="disable the result cache")
    common.add_argument("--normalize", action="store_true", help="omit timings and cache statistics")
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="skewgroup", description="Homological invariants of skew group algebras over GF(p).")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="construct and verify Λ, ΛG, ΛS and Λ^S")
    sub.add_parser("dims", parents=[common], help="global and finitistic dimensions")
    sg = sub.add_parser("sgldim", parents=[common], help="bounded strong global dimension search")
    sg.add_argument("--target", choices=TARGETS, default="lambda")
    sg.add_argument("--force-search", action="store_true", help="search even when a closed form applies")
    sg.add_argument("--require-exhaustive", action="store_true", help="exit 4 unless the result is closed-form or exhaustive")
    vf = sub.add_parser("verify", parents=[common], help="finitistic/strong global dimension and structural batteries")
    vf.add_argument("--conjecture-2-7", action="store_true", dest="conjecture", help="also log the fdim conjecture instance")
    sub.add_parser("functors", parents=[common], help="split identities for modules and complexes")
    fx = sub.add_parser("fixtures", parents=[common], help="list bundled fixtures")
    fx.add_argument("--check", action="store_true", help="validate every bundled fixture")
    return parser


def _options(args) -> dict:
    return {k: getattr(args, k) for k in _OPTION_FLAGS if getattr(args, k) is not None}


def _load(args):
    opts = _options(args)
    if args.spec:
        return load_spec(args.spec, **opts)
    if args.fixture:
        return load_fixture(args.fixture, **opts)
    raise SchemaError([("", "give --fixture NAME or --spec PATH")])


def _cache(args) -> ReportCache:
    if args.no_cache:
        return ReportCache(None)
    return ReportCache(args.cache_dir or _default_cache_dir())


def _fixtures_report(args, cache: ReportCache) -> Report:
    names = list_fixtures()
    rep = Report("fixtures", {"name": "bundled fixtures", "fixtures": names})
    for name in names:
        if not args.check:
            rep.add(Check(f"fixture.{name}", "bundled fixture", "info", name))
            continue
        t0 = time.perf_counter()
        try:
            spec = load_fixture(name, **_options(args))
        except SchemaError as exc:
            rep.add(Check(f"fixture.{name}", "parses and validates", "fail", None, str(exc)), time.perf_counter() - t0)
            continue
        sub = battery_build(Context(spec, cache))
        bad = [c.id for c in sub.checks if c.status == "fail"]
        rep.add(Check(f"fixture.{name}", "parses and validates", "fail" if bad else "pass",
                      {"dims": [c.value["dim"] for c in sub.checks if c.id.startswith("algebra.")]}, ", ".join(bad)),
                time.perf_counter() - t0)
    return rep


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute a command line; returns the exit code and the rendered report."""
    args = build_parser().parse_args(argv)
    cache = _cache(args)
    code = EXIT_PASS
    try:
        if args.command == "fixtures":
            rep = _fixtures_report(args, cache)
        else:
            spec = _load(args)
            ctx = Context(spec, cache)
            if args.command == "build":
                rep = battery_build(ctx)
            elif args.command == "dims":
                rep = battery_dims(ctx)
            elif args.command == "sgldim":
                rep = battery_sgldim(ctx, args.target, args.force_search)
                d = rep.get(f"sgldim.{args.target}").value
                if args.require_exhaustive and d["closed_form"] is None and d["exhaustive_up_to"] is None:
                    code = EXIT_NOT_EXHAUSTIVE
            elif args.command == "functors":
                rep = battery_functors(ctx)
            else:
                rep = battery_invariance(ctx)
                rep.command = "verify"
                rep.extend(battery_skew_structure(ctx))
                if args.conjecture:
                    rep.extend(battery_fdim_conjecture(ctx))
    except SchemaError as exc:
        return EXIT_SCHEMA, "".join(f"schema error at {p or '<root>'}: {m}\n" for p, m in exc.errors)
    except NonSplitError as exc:
        return EXIT_NONSPLIT, f"non-split input: {exc}\n"
    rep.cache = cache.stats()
    d = rep.to_dict()
    if args.normalize:
        d = normalize_report(d)
    text = render_json(d) if args.format == "json" else render_markdown(d)
    if rep.failed:
        code = EXIT_FAIL
    if args.output:
        Path(args.output).write_text(text)
        text = ""
    return code, text


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    if text:
        (sys.stdout if code in (EXIT_PASS, EXIT_FAIL, EXIT_NOT_EXHAUSTIVE) else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
