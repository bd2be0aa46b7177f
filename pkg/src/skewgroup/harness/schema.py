"""Validation of problem documents into algebra, group and action objects."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .. import exactlin as el
from ..algebra import (
    FiniteGroup,
    FinDimAlgebra,
    GroupAction,
    QuiverPresentation,
    algebra_from_quiver,
    algebra_from_table,
    quiver_automorphism,
    verify_algebra,
    verify_sylow,
)
from ..radical import lift_primitive_idempotents

__all__ = ["SchemaError", "Options", "ProblemSpec", "parse_spec", "load_spec", "load_fixture", "list_fixtures", "fixture_path", "DEFAULT_OPTIONS"]

DEFAULT_OPTIONS = {"cutoff": 10, "length_bound": 3, "mult_bound": 2, "budget": 10**6, "seed": 0}


class SchemaError(ValueError):
    """A document failed validation; ``errors`` lists ``(path, message)`` pairs."""

    def __init__(self, errors: list[tuple[str, str]]):
        self.errors = errors
        super().__init__("; ".join(f"{p}: {m}" for p, m in errors))


@dataclass(frozen=True)
class Options:
    cutoff: int = 10
    length_bound: int = 3
    mult_bound: int = 2
    budget: int = 10**6
    seed: int = 0

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in DEFAULT_OPTIONS}


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    name: str
    p: int
    algebra: FinDimAlgebra
    group: FiniteGroup
    action: GroupAction
    sylow: tuple[int, ...]
    idempotents: np.ndarray
    options: Options
    document: dict = field(repr=False)


_TOP = {"name", "description", "field", "algebra", "group", "action", "sylow", "options"}


class _Errors:
    def __init__(self):
        self.items: list[tuple[str, str]] = []

    def add(self, path: str, msg: str):
        self.items.append((path, msg))

    def keys(self, obj, allowed: set, path: str, required: set = frozenset()) -> bool:
        if not isinstance(obj, dict):
            self.add(path, "expected an object")
            return False
        for k in sorted(set(obj) - allowed):
            self.add(f"{path}.{k}" if path else k, "unknown field")
        for k in sorted(required - set(obj)):
            self.add(f"{path}.{k}" if path else k, "missing field")
        return not (set(obj) - allowed) and not (required - set(obj))


def _int(err: _Errors, v, path: str, minimum: int | None = None) -> int | None:
    if isinstance(v, bool) or not isinstance(v, int):
        err.add(path, "expected an integer")
        return None
    if minimum is not None and v < minimum:
        err.add(path, f"must be at least {minimum}")
        return None
    return v


def _parse_quiver(err: _Errors, q, p: int) -> FinDimAlgebra | None:
    path = "algebra.quiver"
    if not err.keys(q, {"vertices", "arrows", "relations", "nilpotency_bound"}, path, {"vertices", "nilpotency_bound"}):
        return None
    verts = q["vertices"]
    if not isinstance(verts, list) or not verts:
        err.add(f"{path}.vertices", "expected a non-empty list")
        return None
    arrows = []
    for i, a in enumerate(q.get("arrows", [])):
        ap = f"{path}.arrows[{i}]"
        if err.keys(a, {"label", "src", "tgt"}, ap, {"label", "src", "tgt"}):
            for end in ("src", "tgt"):
                if a[end] not in verts:
                    err.add(f"{ap}.{end}", f"unknown vertex {a[end]!r}")
            arrows.append((str(a["label"]), a["src"], a["tgt"]))
    rels = []
    for i, rel in enumerate(q.get("relations", [])):
        rp = f"{path}.relations[{i}]"
        if not isinstance(rel, list) or not rel:
            err.add(rp, "expected a non-empty list of terms")
            continue
        terms = []
        for j, t in enumerate(rel):
            tp = f"{rp}[{j}]"
            if err.keys(t, {"coeff", "path"}, tp, {"coeff", "path"}):
                c = _int(err, t["coeff"], f"{tp}.coeff")
                if not isinstance(t["path"], list) or not t["path"]:
                    err.add(f"{tp}.path", "expected a non-empty list of arrow labels")
                    continue
                labels = {a[0] for a in arrows}
                for lab in t["path"]:
                    if str(lab) not in labels:
                        err.add(f"{tp}.path", f"unknown arrow {lab!r}")
                if c is not None:
                    terms.append((c, tuple(str(x) for x in t["path"])))
        rels.append(terms)
    n = _int(err, q["nilpotency_bound"], f"{path}.nilpotency_bound", minimum=1)
    if err.items or n is None:
        return None
    try:
        pres = QuiverPresentation(tuple(verts), tuple(arrows), tuple(rels), n)
        return algebra_from_quiver(pres, p, name="Λ")
    except ValueError as exc:
        err.add(path, str(exc))
        return None


def _parse_table(err: _Errors, t, p: int) -> FinDimAlgebra | None:
    path = "algebra.table"
    if not err.keys(t, {"dim", "constants", "unit", "labels"}, path, {"dim", "constants", "unit"}):
        return None
    n = _int(err, t["dim"], f"{path}.dim", minimum=1)
    if n is None:
        return None
    try:
        c = np.asarray(t["constants"], dtype=np.int64)
        u = np.asarray(t["unit"], dtype=np.int64)
    except (TypeError, ValueError):
        err.add(path, "constants and unit must be integer arrays")
        return None
    if c.shape != (n, n, n):
        err.add(f"{path}.constants", f"expected shape [{n}][{n}][{n}], got {list(c.shape)}")
    if u.shape != (n,):
        err.add(f"{path}.unit", f"expected {n} entries")
    labels = t.get("labels", [])
    if labels and len(labels) != n:
        err.add(f"{path}.labels", f"expected {n} labels")
    if err.items:
        return None
    a = algebra_from_table(p, c, u, tuple(str(x) for x in labels), name="Λ")
    bad = verify_algebra(a)
    if bad:
        err.add(path, f"not an associative unital algebra; first violation {bad[0]}")
        return None
    return a


def _parse_group(err: _Errors, g) -> FiniteGroup | None:
    if not err.keys(g, {"table", "cyclic", "labels"}, "group"):
        return None
    if ("table" in g) == ("cyclic" in g):
        err.add("group", "give exactly one of 'table' or 'cyclic'")
        return None
    if "cyclic" in g:
        if not err.keys(g["cyclic"], {"n"}, "group.cyclic", {"n"}):
            return None
        n = _int(err, g["cyclic"]["n"], "group.cyclic.n", minimum=1)
        return FiniteGroup.cyclic(n) if n is not None else None
    try:
        labels = tuple(str(x) for x in g.get("labels", []))
        grp = FiniteGroup(np.asarray(g["table"], dtype=np.int64), labels)
    except (TypeError, ValueError) as exc:
        err.add("group.table", str(exc))
        return None
    bad = grp.verify()
    if bad:
        err.add("group.table", f"not a group law: {bad[0]}")
        return None
    return grp


def _parse_action(err: _Errors, act, alg: FinDimAlgebra, grp: FiniteGroup, quiver: bool) -> GroupAction | None:
    if not err.keys(act, {"generators"}, "action", {"generators"}):
        return None
    gens = {}
    for i, gdoc in enumerate(act["generators"]):
        gp = f"action.generators[{i}]"
        if not err.keys(gdoc, {"element", "vertex_map", "arrow_map", "matrix"}, gp, {"element"}):
            continue
        g = _int(err, gdoc["element"], f"{gp}.element", minimum=0)
        if g is None:
            continue
        if g >= grp.order:
            err.add(f"{gp}.element", f"no element {g} in a group of order {grp.order}")
            continue
        if "matrix" in gdoc:
            if "vertex_map" in gdoc or "arrow_map" in gdoc:
                err.add(gp, "give either a matrix or vertex/arrow maps")
                continue
            try:
                m = el.as_matrix(gdoc["matrix"], alg.p)
            except (TypeError, ValueError):
                err.add(f"{gp}.matrix", "expected an integer matrix")
                continue
            if m.shape != (alg.dim, alg.dim):
                err.add(f"{gp}.matrix", f"expected a {alg.dim}x{alg.dim} matrix")
                continue
            gens[g] = m
            continue
        if not quiver:
            err.add(gp, "table algebras need a 'matrix' generator image")
            continue
        verts = alg.quiver.vertices
        vmap = {}
        vm = gdoc.get("vertex_map", {})
        pairs = vm.items() if isinstance(vm, dict) else vm
        for src, tgt in pairs:
            key = next((v for v in verts if str(v) == str(src)), None)
            val = next((v for v in verts if str(v) == str(tgt)), None)
            if key is None or val is None:
                err.add(f"{gp}.vertex_map", f"unknown vertex in {src!r} -> {tgt!r}")
                continue
            vmap[key] = val
        amap = {}
        for j, entry in enumerate(gdoc.get("arrow_map", [])):
            ep = f"{gp}.arrow_map[{j}]"
            if not err.keys(entry, {"arrow", "image_arrow", "scalar"}, ep, {"arrow", "image_arrow"}):
                continue
            s = _int(err, entry.get("scalar", 1), f"{ep}.scalar")
            if s is None:
                continue
            if s % alg.p == 0:
                err.add(f"{ep}.scalar", f"zero scalar modulo {alg.p} does not give an automorphism")
                continue
            amap[str(entry["arrow"])] = (s, str(entry["image_arrow"]))
        try:
            gens[g] = quiver_automorphism(alg, vmap, amap)
        except ValueError as exc:
            err.add(gp, str(exc))
    if err.items:
        return None
    try:
        action = GroupAction.from_generators(alg, grp, gens)
    except ValueError as exc:
        err.add("action", str(exc))
        return None
    bad = action.verify()
    if bad:
        err.add("action", f"not an action by automorphisms: {bad[0]}")
        return None
    return action


def _parse_options(err: _Errors, o) -> Options:
    if o is None:
        return Options()
    if not err.keys(o, set(DEFAULT_OPTIONS), "options"):
        return Options()
    vals = {}
    for k, default in DEFAULT_OPTIONS.items():
        v = _int(err, o.get(k, default), f"options.{k}", minimum=0 if k == "seed" else 1)
        vals[k] = default if v is None else v
    return Options(**vals)


def parse_spec(document: dict[str, Any], name: str = "") -> ProblemSpec:
    """Validate a problem document; raises :class:`SchemaError` with every problem found."""
    err = _Errors()
    if not err.keys(document, _TOP, "", {"field", "algebra", "group", "action", "sylow"}):
        raise SchemaError(err.items)
    fdoc = document["field"]
    p = None
    if err.keys(fdoc, {"p"}, "field", {"p"}):
        p = _int(err, fdoc["p"], "field.p")
        if p is not None and not el.is_prime(p):
            err.add("field.p", f"{p} is not prime")
            p = None
    options = _parse_options(err, document.get("options"))
    if p is None:
        raise SchemaError(err.items)
    adoc = document["algebra"]
    alg = None
    quiver = False
    if err.keys(adoc, {"quiver", "table"}, "algebra"):
        if ("quiver" in adoc) == ("table" in adoc):
            err.add("algebra", "give exactly one of 'quiver' or 'table'")
        elif "quiver" in adoc:
            alg, quiver = _parse_quiver(err, adoc["quiver"], p), True
        else:
            alg = _parse_table(err, adoc["table"], p)
    grp = _parse_group(err, document["group"])
    if alg is None or grp is None:
        raise SchemaError(err.items)
    action = _parse_action(err, document["action"], alg, grp, quiver)
    sdoc = document["sylow"]
    sylow = None
    if err.keys(sdoc, {"elements"}, "sylow", {"elements"}):
        elems = sdoc["elements"]
        if not isinstance(elems, list) or not all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < grp.order for x in elems):
            err.add("sylow.elements", "expected a list of element indices")
        elif not verify_sylow(grp, elems, p):
            err.add("sylow.elements", f"verify_sylow failed: {sorted(set(elems))} is not a Sylow {p}-subgroup")
        else:
            sylow = grp.ordered_subgroup(elems)
    if err.items or action is None or sylow is None:
        raise SchemaError(err.items)
    if quiver:
        idem = alg.vertex_idempotents()
    else:
        idem = lift_primitive_idempotents(alg)
    return ProblemSpec(document.get("name") or name, p, alg, grp, action, sylow, idem, options, copy.deepcopy(document))


def _with_options(doc, options: dict):
    if options and isinstance(doc, dict):
        base = doc.get("options") if isinstance(doc.get("options"), dict) else {}
        doc = {**doc, "options": {**base, **options}}
    return doc


def load_spec(path: str | Path, **options) -> ProblemSpec:
    """Parse a problem file, optionally overriding its options."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise SchemaError([("", f"cannot read {path}: {exc.strerror}")]) from exc
    except json.JSONDecodeError as exc:
        raise SchemaError([("", f"invalid JSON: {exc}")]) from exc
    return parse_spec(_with_options(doc, options), name=path.stem)


FIXTURE_DIR = Path(__file__).parent / "fixtures"


def list_fixtures() -> list[str]:
    """Names of the bundled fixtures, sorted."""
    return sorted(f.stem for f in FIXTURE_DIR.glob("*.json"))


def fixture_path(name: str) -> Path:
    path = FIXTURE_DIR / f"{name}.json"
    if not path.exists():
        raise SchemaError([("", f"unknown fixture {name!r}; available: {', '.join(list_fixtures())}")])
    return path


def load_fixture(name: str, **options) -> ProblemSpec:
    """Parse a bundled fixture, optionally overriding its options."""
    doc = json.loads(fixture_path(name).read_text())
    return parse_spec(_with_options(doc, options), name=name)
