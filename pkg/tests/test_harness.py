import json
import re

import numpy as np
import pytest

from skewgroup.harness import Context, ReportCache, content_key, load_fixture, parse_spec
from skewgroup.harness.cli import EXIT_FAIL, EXIT_NONSPLIT, EXIT_NOT_EXHAUSTIVE, EXIT_PASS, EXIT_SCHEMA, main, run
from skewgroup.harness.report import Check, Report, normalize_report, render_markdown, verdicts
from skewgroup.harness.schema import SchemaError, fixture_path, list_fixtures, load_spec


def fixture_doc(name):
    return json.loads(fixture_path(name).read_text())


def dual_with_scalar(scalar, p=2):
    return {
        "field": {"p": p},
        "algebra": {"quiver": {"vertices": [1], "arrows": [{"label": "x", "src": 1, "tgt": 1}], "nilpotency_bound": 2}},
        "group": {"cyclic": {"n": 2}},
        "action": {"generators": [{"element": 1, "vertex_map": {"1": 1},
                                   "arrow_map": [{"arrow": "x", "image_arrow": "x", "scalar": scalar}]}]},
        "sylow": {"elements": [0, 1]},
    }


def schema_paths(doc):
    with pytest.raises(SchemaError) as info:
        parse_spec(doc)
    return {path: msg for path, msg in info.value.errors}


# ---------------------------------------------------------------------------
# schema


def test_every_fixture_parses():
    assert set(list_fixtures()) >= {"EX-A", "EX-B", "EX-C", "EX-D", "EX-E", "A2", "DUAL", "M2"}
    for name in list_fixtures():
        spec = load_fixture(name)
        assert spec.name == name


def test_zero_scalar_rejected_with_path():
    # σ(x) = 2x is the zero map at p = 2
    errs = schema_paths(dual_with_scalar(2))
    assert "action.generators[0].arrow_map[0].scalar" in errs
    assert parse_spec(dual_with_scalar(1)).p == 2


def test_non_subgroup_sylow():
    doc = fixture_doc("EX-A")
    doc["group"] = {"cyclic": {"n": 4}}
    doc["action"] = {"generators": [{"element": 1, "vertex_map": {"1": 2, "2": 1}, "arrow_map": []}]}
    doc["sylow"] = {"elements": [0, 1]}
    errs = schema_paths(doc)
    assert "verify_sylow" in errs["sylow.elements"]


def test_wrong_sylow_order():
    doc = fixture_doc("EX-D")  # Z/2 at p = 3: the Sylow subgroup is trivial
    doc["sylow"] = {"elements": [0, 1]}
    assert "sylow.elements" in schema_paths(doc)


def test_unknown_field_and_bad_prime():
    doc = fixture_doc("EX-A")
    doc["colour"] = "blue"
    assert schema_paths(doc)["colour"] == "unknown field"
    doc = fixture_doc("EX-A")
    doc["field"]["p"] = 4
    assert "not prime" in schema_paths(doc)["field.p"]


def test_relation_not_preserved():
    # x^2 = 0 but y^2 != 0, so swapping x and y is not an automorphism
    doc = {
        "field": {"p": 2},
        "algebra": {"quiver": {"vertices": [1], "arrows": [{"label": "x", "src": 1, "tgt": 1}, {"label": "y", "src": 1, "tgt": 1}],
                               "relations": [[{"coeff": 1, "path": ["x", "x"]}]], "nilpotency_bound": 3}},
        "group": {"cyclic": {"n": 2}},
        "action": {"generators": [{"element": 1, "vertex_map": {"1": 1},
                                   "arrow_map": [{"arrow": "x", "image_arrow": "y"}, {"arrow": "y", "image_arrow": "x"}]}]},
        "sylow": {"elements": [0, 1]},
    }
    assert "action.generators[0]" in schema_paths(doc)


def test_unknown_vertex_and_arrow():
    doc = dual_with_scalar(1)
    doc["algebra"]["quiver"]["arrows"].append({"label": "z", "src": 1, "tgt": 7})
    assert "algebra.quiver.arrows[1].tgt" in schema_paths(doc)


def test_load_spec_errors(tmp_path):
    with pytest.raises(SchemaError):
        load_spec(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        load_spec(bad)
    with pytest.raises(SchemaError):
        load_fixture("EX-Z")


def test_options_override():
    spec = load_fixture("EX-A", cutoff=4, seed=9)
    assert spec.options.cutoff == 4 and spec.options.seed == 9
    doc = fixture_doc("EX-A")
    doc["options"] = {"cutoff": 0}
    assert "options.cutoff" in schema_paths(doc)


# ---------------------------------------------------------------------------
# report and cache


def test_report_rules():
    with pytest.raises(ValueError):
        Check("x", "claim", "maybe")
    rep = Report("demo", {"name": "n", "p": 2})
    rep.add(Check("a", "first", "pass", 1), 0.5)
    with pytest.raises(ValueError):
        rep.add(Check("a", "again", "pass"))
    rep.add(Check("b", "second", "fail", None, "why"))
    d = rep.to_dict()
    assert d["summary"]["passed"] is False and d["summary"]["fail"] == 1
    assert "runtime" in d and "runtime" not in normalize_report(d)
    assert verdicts(d) == {"a": "pass", "b": "fail"}
    assert "`b`: why" in render_markdown(d)


def test_cache_round_trip(tmp_path):
    cache = ReportCache(tmp_path)
    calls = []
    compute = lambda: calls.append(1) or {"v": 3}
    key = content_key("k", 1)
    assert cache.get_or_compute(key, compute, lambda x: x, lambda x: x) == {"v": 3}
    assert cache.get_or_compute(key, compute, lambda x: x, lambda x: x) == {"v": 3}
    assert len(calls) == 1 and cache.stats()["hits"] == 1
    path = next(tmp_path.rglob("*.json"))
    entry = json.loads(path.read_text())
    entry["payload"] = {"v": 4}
    path.write_text(json.dumps(entry))
    assert cache.get_or_compute(key, compute, lambda x: x, lambda x: x) == {"v": 3}
    assert cache.corrupt == 1 and len(calls) == 2


def test_cache_rejects_undecodable(tmp_path):
    cache = ReportCache(tmp_path)
    key = content_key("bad")
    cache.store(key, {"kind": "nonsense"})

    def decode(d):
        raise ValueError("bad payload")

    assert cache.load(key, decode) == (False, None) and cache.corrupt == 1


def test_disabled_cache():
    cache = ReportCache(None)
    cache.store("ab", 1)
    assert cache.load("ab", lambda x: x) == (False, None)
    assert cache.stats()["enabled"] is False


def test_context_cache_agrees_with_fresh(tmp_path):
    cached = Context(load_fixture("EX-B"), ReportCache(tmp_path))
    first = [cached.gldim(t) for t in ("lambda", "skew_G")] + [cached.fdim("skew_S")]
    again = Context(load_fixture("EX-B"), ReportCache(tmp_path))
    second = [again.gldim(t) for t in ("lambda", "skew_G")] + [again.fdim("skew_S")]
    fresh = Context(load_fixture("EX-B"))
    third = [fresh.gldim(t) for t in ("lambda", "skew_G")] + [fresh.fdim("skew_S")]
    assert first == second == third
    assert again.cache.hits == 3


# ---------------------------------------------------------------------------
# command line


def cli(*argv, tmp=None):
    extra = ["--cache-dir", str(tmp)] if tmp is not None else ["--no-cache"]
    return run(list(argv) + extra)


def test_verify_passes_on_fixture():
    code, text = cli("verify", "--fixture", "EX-A", "--format", "json")
    d = json.loads(text)
    assert code == EXIT_PASS and d["summary"]["passed"]
    assert d["schema_version"] == "1.0" and d["command"] == "verify"


def test_dims_reports_infinite_gldim():
    code, text = cli("dims", "--fixture", "EX-C", "--cutoff", "10")
    d = json.loads(text)
    vals = {c["id"]: c["value"] for c in d["checks"]}
    assert code == EXIT_PASS
    assert vals["gldim.skew_G"]["kind"] == "infinite_certified"


def test_schema_error_exit(tmp_path):
    doc = tmp_path / "zero.json"
    doc.write_text(json.dumps(dual_with_scalar(2)))
    code, text = cli("verify", "--spec", str(doc))
    assert code == EXIT_SCHEMA and "arrow_map[0].scalar" in text
    assert cli("dims")[0] == EXIT_SCHEMA
    assert cli("dims", "--fixture", "EX-Z")[0] == EXIT_SCHEMA


def test_non_split_exit(tmp_path):
    # GF(4) as a 2-dimensional algebra over GF(2)
    c = np.zeros((2, 2, 2), dtype=int)
    c[0, 0], c[0, 1], c[1, 0], c[1, 1] = [1, 0], [0, 1], [0, 1], [1, 1]
    doc = {"field": {"p": 2}, "algebra": {"table": {"dim": 2, "constants": c.tolist(), "unit": [1, 0]}},
           "group": {"cyclic": {"n": 1}}, "action": {"generators": []}, "sylow": {"elements": [0]}}
    path = tmp_path / "gf4.json"
    path.write_text(json.dumps(doc))
    code, text = cli("dims", "--spec", str(path))
    assert code == EXIT_NONSPLIT and "non-split" in text


def test_not_exhaustive_exit():
    code, text = cli("sgldim", "--fixture", "EX-B", "--length-bound", "3", "--budget", "1", "--force-search", "--require-exhaustive")
    assert code == EXIT_NOT_EXHAUSTIVE
    assert json.loads(text)["checks"][0]["value"]["exhaustive_up_to"] is None
    code, _ = cli("sgldim", "--fixture", "DUAL", "--length-bound", "4", "--mult-bound", "2", "--seed", "7", "--require-exhaustive")
    assert code == EXIT_PASS


def test_failed_check_exit(tmp_path):
    # conjugation by [[1, 1], [0, 1]] on M2(k) moves E11 to E11 + E12, so E is not closed
    doc = fixture_doc("M2")
    doc["group"] = {"cyclic": {"n": 2}}
    doc["action"] = {"generators": [{"element": 1, "matrix": [[1, 0, 1, 0], [1, 1, 1, 1], [0, 0, 1, 0], [0, 0, 1, 1]]}]}
    doc["sylow"] = {"elements": [0, 1]}
    path = tmp_path / "conj.json"
    path.write_text(json.dumps(doc))
    code, text = cli("verify", "--spec", str(path))
    d = json.loads(text)
    assert code == EXIT_FAIL
    assert verdicts(d)["invariance.hypothesis.closed"] == "fail"


def test_fixtures_check():
    code, text = cli("fixtures", "--check")
    d = json.loads(text)
    assert code == EXIT_PASS and all(c["status"] == "pass" for c in d["checks"])


def test_output_file_and_main(tmp_path, capsys):
    out = tmp_path / "r.md"
    assert main(["build", "--fixture", "EX-A", "--format", "md", "--no-cache", "--output", str(out)]) == EXIT_PASS
    assert out.read_text().startswith("# build: EX-A")
    assert main(["dims", "--fixture", "EX-Z", "--no-cache"]) == EXIT_SCHEMA
    assert "unknown fixture" in capsys.readouterr().err


def test_deterministic_with_cache_and_corruption(tmp_path):
    argv = ("verify", "--fixture", "EX-E", "--seed", "7", "--normalize")
    first = cli(*argv, tmp=tmp_path)
    second = cli(*argv, tmp=tmp_path)
    for f in tmp_path.rglob("*.json"):
        f.write_text(f.read_text()[:-5])
    third = cli(*argv, tmp=tmp_path)
    fresh = cli(*argv)
    assert first == second == third == fresh
    raw = json.loads(cli("verify", "--fixture", "EX-E", "--seed", "7", tmp=tmp_path)[1])
    assert raw["runtime"]["cache"]["hits"] > 0


def test_markdown_matches_json():
    _, js = cli("verify", "--fixture", "EX-B", "--conjecture-2-7")
    _, md = cli("verify", "--fixture", "EX-B", "--conjecture-2-7", "--format", "md")
    from_md = dict(re.findall(r"^\| `([^`]+)` \| (\w+) \|", md, flags=re.M))
    assert from_md == verdicts(json.loads(js))
    assert any(k.startswith("fdim_conjecture.") for k in from_md)


def test_conjecture_battery_is_informational():
    _, text = cli("verify", "--fixture", "EX-C", "--conjecture-2-7")
    d = json.loads(text)
    logged = [c for c in d["checks"] if c["id"].startswith("fdim_conjecture.")]
    assert logged and all(c["status"] == "info" for c in logged)


def test_seed_changes_only_inputs():
    a = json.loads(cli("functors", "--fixture", "EX-D", "--seed", "1", "--normalize")[1])
    b = json.loads(cli("functors", "--fixture", "EX-D", "--seed", "2", "--normalize")[1])
    assert verdicts(a) == verdicts(b)
    assert a["inputs"]["seed"] == 1 and b["inputs"]["seed"] == 2
