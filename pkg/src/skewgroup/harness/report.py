"""Report assembly and rendering (JSON and markdown)."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from typing import Any

__all__ = ["SCHEMA_VERSION", "STATUSES", "Check", "Report", "normalize_report", "render_json", "render_markdown", "verdicts"]

SCHEMA_VERSION = "1.0"
STATUSES = ("pass", "fail", "inconclusive", "skipped", "info")


@dataclass
class Check:
    """One verdict: ``status`` is one of :data:`STATUSES`."""

    id: str
    claim: str
    status: str
    value: Any = None
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict:
        return {"id": self.id, "claim": self.claim, "status": self.status, "value": self.value, "detail": self.detail}


@dataclass
class Report:
    command: str
    inputs: dict
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    cache: dict = field(default_factory=dict)

    def add(self, check: Check, seconds: float | None = None) -> Check:
        if any(c.id == check.id for c in self.checks):
            raise ValueError(f"duplicate check id {check.id!r}")
        self.checks.append(check)
        if seconds is not None:
            self.timings[check.id] = round(seconds, 6)
        return check

    def extend(self, other: Report) -> None:
        for c in other.checks:
            self.add(c, other.timings.get(c.id))

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.checks) for s in STATUSES}

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def get(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "checks": [c.to_dict() for c in self.checks],
            "summary": {**self.counts(), "passed": not self.failed},
            "runtime": {"seconds": dict(self.timings), "total_seconds": round(sum(self.timings.values()), 6), "cache": dict(self.cache)},
        }


def normalize_report(d: dict) -> dict:
    """Drop run-dependent data (timings, cache statistics)."""
    out = copy.deepcopy(d)
    out.pop("runtime", None)
    return out


def render_json(d: dict) -> str:
    return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt(value: Any) -> str:
    if isinstance(value, dict) and "kind" in value and set(value) <= {"kind", "value", "witness"}:
        if value["kind"] == "exact":
            return str(value["value"])
        if value["kind"] == "at_least":
            return f">= {value['value']}"
        if value["kind"] == "infinite_certified":
            return f"infinite (period {value['witness'][0]}..{value['witness'][1]})"
    if isinstance(value, dict) and "lower_bound" in value and "closed_form" in value:
        if value["closed_form"] is not None:
            return f"{value['lower_bound']} ({value['closed_form']})"
        ex = value["exhaustive_up_to"]
        scope = f"exhaustive to L={ex[0]}, m={ex[1]}" if ex else ("sampled" if value["sampled"] else "budget exhausted")
        return f">= {value['lower_bound']} ({scope})"
    text = json.dumps(value, sort_keys=True, ensure_ascii=False)
    return text if len(text) <= 80 else text[:77] + "..."


def render_markdown(d: dict) -> str:
    """Human-readable summary carrying the same per-check statuses as the JSON form."""
    inp = d["inputs"]
    lines = [
        f"# {d['command']}: {inp.get('name', '')}",
        "",
        f"schema {d['schema_version']}, p = {inp.get('p')}, options: "
        + ", ".join(f"{k}={v}" for k, v in sorted(inp.get("options", {}).items())),
        "",
        "| check | status | value | claim |",
        "|---|---|---|---|",
    ]
    for c in d["checks"]:
        claim = c["claim"].replace("|", "\\|")
        value = _fmt(c["value"]).replace("|", "\\|")
        lines.append(f"| `{c['id']}` | {c['status']} | {value} | {claim} |")
    s = d["summary"]
    lines += ["", "summary: " + ", ".join(f"{k} {s[k]}" for k in STATUSES) + f"; passed: {str(s['passed']).lower()}"]
    notes = [c for c in d["checks"] if c["detail"]]
    if notes:
        lines += ["", "## notes", ""] + [f"- `{c['id']}`: {c['detail']}" for c in notes]
    if "runtime" in d:
        rt = d["runtime"]
        lines += ["", f"runtime: {rt['total_seconds']:.3f} s; cache: {_fmt(rt['cache'])}"]
    return "\n".join(lines) + "\n"


def verdicts(d: dict) -> dict[str, str]:
    """``check id ↦ status`` of a JSON report."""
    return {c["id"]: c["status"] for c in d["checks"]}
