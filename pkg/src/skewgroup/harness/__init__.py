"""Problem documents, fixtures, check batteries, reports, cache and CLI."""

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
from .cache import ReportCache, content_key
from .cli import main, run
from .report import Check, Report, normalize_report, render_json, render_markdown
from .schema import DEFAULT_OPTIONS, Options, ProblemSpec, SchemaError, list_fixtures, load_fixture, load_spec, parse_spec

__all__ = [
    "TARGETS", "Context", "battery_build", "battery_fdim_conjecture", "battery_dims", "battery_functors",
    "battery_skew_structure", "battery_sgldim", "battery_invariance", "ReportCache", "content_key", "main", "run",
    "Check", "Report", "normalize_report", "render_json", "render_markdown", "DEFAULT_OPTIONS", "Options",
    "ProblemSpec", "SchemaError", "list_fixtures", "load_fixture", "load_spec", "parse_spec",
]
