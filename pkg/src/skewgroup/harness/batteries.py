"""Check batteries: each runs a family of checks on one problem and returns a :class:`Report`."""

from __future__ import annotations

import itertools
import time
from functools import cached_property
from typing import Any, Callable

import numpy as np

from ..algebra import (
    FinDimAlgebra,
    SkewGroupAlgebra,
    bimodule_splitting,
    check_action_on_idempotents,
    fixed_algebra,
    skew_group_algebra,
    splitting_violations,
    verify_algebra,
    verify_complete_idempotent_set,
)
from ..complexes import (
    PerfectComplex,
    from_resolution,
    is_indecomposable_complex,
    verify_complex,
    piecewise_hereditary_verdict,
    sgldim_search,
    subalgebra_complex_split,
    unit_split_complex,
    average_split_complex,
)
from ..functors import average_split, pd_compare, subalgebra_split, unit_split
from ..homology import (
    DimensionReport,
    decompose_module,
    fdim,
    fixed_points,
    gldim,
    indecomposables_nakayama,
    is_nakayama,
    module_iso,
    natural_module,
    pim_sum,
    pims,
    random_module,
    restrict_scalars_projectivity,
    simples,
    structure,
)
from ..modules import AModule, cyclic_submodule, direct_sum, quotient_module, regular_module, submodule
from .cache import ReportCache, content_key
from .report import Check, Report
from .schema import ProblemSpec

__all__ = [
    "TARGETS",
    "Context",
    "battery_build",
    "battery_dims",
    "battery_sgldim",
    "battery_invariance",
    "battery_skew_structure",
    "battery_functors",
    "battery_fdim_conjecture",
]

TARGETS = ("lambda", "skew_G", "skew_S", "fixed_S")
_TARGET_NAMES = {"lambda": "Λ", "skew_G": "ΛG", "skew_S": "ΛS", "fixed_S": "Λ^S", "skew_1": "Λ{1}"}
RANDOM_MODULES = 4


class Context:
    """Algebras derived from a problem, plus cached invariants."""

    def __init__(self, spec: ProblemSpec, cache: ReportCache | None = None):
        self.spec = spec
        self.opts = spec.options
        self.cache = cache if cache is not None else ReportCache(None)
        doc = {k: v for k, v in spec.document.items() if k not in ("name", "description", "options")}
        self.spec_key = content_key("problem", doc)

    # -- algebras ---------------------------------------------------------
    @property
    def lam(self) -> FinDimAlgebra:
        return self.spec.algebra

    @cached_property
    def skew_G(self) -> SkewGroupAlgebra:
        return skew_group_algebra(self.lam, self.spec.action)

    @cached_property
    def skew_S(self) -> SkewGroupAlgebra:
        return skew_group_algebra(self.lam, self.spec.action, self.spec.sylow)

    @cached_property
    def skew_1(self) -> SkewGroupAlgebra:
        return skew_group_algebra(self.lam, self.spec.action, (self.spec.group.identity,))

    @cached_property
    def fixed_S(self):
        return fixed_algebra(self.lam, self.spec.action, self.spec.sylow)

    def algebra(self, target: str) -> FinDimAlgebra:
        if target not in TARGETS and target != "skew_1":
            raise KeyError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
        return self.lam if target == "lambda" else getattr(self, target)

    @cached_property
    def idempotent_action(self):
        return check_action_on_idempotents(self.spec.action, self.spec.idempotents, self.spec.sylow)

    @property
    def free(self) -> bool:
        return self.idempotent_action.free

    @cached_property
    def splitting(self):
        return bimodule_splitting(self.lam, self.fixed_S)

    @property
    def index(self) -> int:
        return self.spec.group.order // len(self.spec.sylow)

    # -- cached invariants ------------------------------------------------
    def _cached(self, op: str, target: str, params: dict, compute: Callable[[], Any], encode, decode):
        key = content_key(self.spec_key, op, target, params)
        return self.cache.get_or_compute(key, compute, encode, decode)

    def gldim(self, target: str) -> DimensionReport:
        c = self.opts.cutoff
        return self._cached("gldim", target, {"cutoff": c}, lambda: gldim(self.algebra(target), c),
                            lambda r: r.to_dict(), DimensionReport.from_dict)

    def fdim(self, target: str) -> tuple[DimensionReport, str]:
        """``fdim`` and the mode used: exact over Nakayama algebras, else a lower bound from simples and PIMs."""
        c = self.opts.cutoff

        def compute():
            a = self.algebra(target)
            if is_nakayama(a):
                return fdim(a, c, "exact-nakayama"), "exact-nakayama"
            catalog = list(simples(a)) + [m for m, _ in pims(a)]
            return fdim(a, c, "catalog", catalog), "catalog"

        def decode(d):
            if d["mode"] not in ("exact-nakayama", "catalog"):
                raise ValueError("bad fdim mode")
            return DimensionReport.from_dict(d["report"]), d["mode"]

        return self._cached("fdim", target, {"cutoff": c}, compute, lambda r: {"report": r[0].to_dict(), "mode": r[1]}, decode)

    def sgldim(self, target: str, force_search: bool = False) -> dict:
        o = self.opts
        params = {"cutoff": o.cutoff, "length_bound": o.length_bound, "mult_bound": o.mult_bound,
                  "budget": o.budget, "seed": o.seed, "force_search": force_search}

        def compute():
            a = self.algebra(target)
            return sgldim_search(a, o.length_bound, o.mult_bound, o.budget, o.seed, o.cutoff, force_search).to_dict()

        return self._cached("sgldim", target, params, compute, lambda d: d, _check_sgldim_dict)

    def modules(self, target: str) -> list[AModule]:
        """Test modules: the complete indecomposable list for Nakayama algebras, else simples and PIMs."""
        a = self.algebra(target)
        if is_nakayama(a):
            return indecomposables_nakayama(a)
        return list(simples(a)) + [m for m, _ in pims(a)]

    def random_modules(self, target: str, count: int = RANDOM_MODULES) -> list[AModule]:
        rng = np.random.default_rng([self.opts.seed, TARGETS.index(target) if target in TARGETS else 9])
        return [random_module(self.algebra(target), rng) for _ in range(count)]

    def inputs(self) -> dict:
        s = self.spec
        return {
            "name": s.name,
            "p": s.p,
            "document": {k: v for k, v in s.document.items() if k != "options"},
            "options": self.opts.to_dict(),
            "seed": self.opts.seed,
        }


def _check_sgldim_dict(d: dict) -> dict:
    if not isinstance(d.get("lower_bound"), int) or d["lower_bound"] < 0:
        raise ValueError("bad lower bound")
    ex = d.get("exhaustive_up_to")
    if ex is not None and (len(ex) != 2 or not all(isinstance(x, int) for x in ex)):
        raise ValueError("bad exhaustiveness record")
    if not isinstance(d.get("candidates"), int) or not isinstance(d.get("sampled"), bool):
        raise ValueError("bad search statistics")
    return d


def _sgldim_value(d: dict | None) -> int | None:
    """The value a bounded report determines: closed forms, or exhaustive searches below the bound."""
    if d is None or d.get("lower_bound") is None:
        return None
    if d["closed_form"] is not None:
        return d["lower_bound"]
    ex = d["exhaustive_up_to"]
    if ex is not None and d["lower_bound"] < ex[0]:
        return d["lower_bound"]
    return None


class _Runner:
    """Adds timed checks to a report; exceptions other than the harness-level ones become failures."""

    def __init__(self, report: Report, prefix: str = ""):
        self.report = report
        self.prefix = prefix

    def __call__(self, cid: str, claim: str, fn: Callable[[], tuple]) -> Check:
        t0 = time.perf_counter()
        out = fn()
        status, value = out[0], out[1]
        detail = out[2] if len(out) > 2 else ""
        return self.report.add(Check(self.prefix + cid, claim, status, value, detail), time.perf_counter() - t0)


def _bool_status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _eq_status(reports: list[DimensionReport]) -> str:
    if all(r.is_exact for r in reports):
        return _bool_status(len({r.value for r in reports}) == 1)
    return "inconclusive"


def _new_report(ctx: Context, command: str) -> Report:
    return Report(command, ctx.inputs())


# ---------------------------------------------------------------------------


def battery_build(ctx: Context) -> Report:
    rep = _new_report(ctx, "build")
    run = _Runner(rep)
    for t in TARGETS:
        a = ctx.algebra(t)

        def check(a=a):
            bad = verify_algebra(a)
            return _bool_status(not bad), {"dim": a.dim, "violations": len(bad)}, "; ".join(map(str, bad[:3]))

        run(f"algebra.{t}", f"{_TARGET_NAMES[t]} satisfies the algebra axioms", check)
    ia = ctx.idempotent_action
    run("idempotents.complete", "E is a complete set of primitive orthogonal idempotents of Λ",
        lambda: (_bool_status(not (bad := verify_complete_idempotent_set(ctx.lam, ctx.spec.idempotents))), len(ctx.spec.idempotents), "; ".join(bad)))
    run("idempotents.closed", "E is closed under the Sylow subgroup", lambda: (_bool_status(ia.closed), ia.closed))
    run("idempotents.free", "the Sylow subgroup acts freely on E", lambda: ("info", ia.free))
    run("splitting.zeta", "a Λ^S-bimodule retraction ζ: Λ → Λ^S exists", _zeta_check(ctx))
    return rep


def _zeta_check(ctx: Context):
    def fn():
        z = ctx.splitting
        if z is None:
            return "info", False, "no bimodule retraction (Λ^S is not a bimodule summand of Λ)"
        bad = splitting_violations(ctx.lam, ctx.fixed_S, z.zeta)
        return ("pass" if not bad else "fail"), True, "; ".join(bad[:3])

    return fn


def battery_dims(ctx: Context) -> Report:
    rep = _new_report(ctx, "dims")
    run = _Runner(rep)
    for t in TARGETS:
        run(f"gldim.{t}", f"global dimension of {_TARGET_NAMES[t]}", lambda t=t: ("info", ctx.gldim(t).to_dict()))
    for t in TARGETS:
        def fd(t=t):
            r, mode = ctx.fdim(t)
            return "info", r.to_dict(), f"mode {mode}"

        run(f"fdim.{t}", f"finitistic dimension of {_TARGET_NAMES[t]}", fd)
    return rep


def battery_sgldim(ctx: Context, target: str = "lambda", force_search: bool = True) -> Report:
    rep = _new_report(ctx, "sgldim")
    run = _Runner(rep)
    a = ctx.algebra(target)

    def search():
        d = ctx.sgldim(target, force_search=force_search)
        return "info", d

    c = run(f"sgldim.{target}", f"strong global dimension of {_TARGET_NAMES[target]} within the search bounds", search)
    d = c.value

    def witness():
        w = d["witness"]
        if w is None or w["multiplicities"] is None:
            return "skipped", None, "no witness with recorded PIM types"
        n = structure(a).n_types
        types = [tuple(t for t in range(n) for _ in range(v[t])) for v in w["multiplicities"]]
        terms = tuple(pim_sum(a, ts) for ts in types)
        cx = PerfectComplex(a, terms, tuple(np.array(x, dtype=np.int64) for x in w["differentials"]), w["start"], tuple(types))
        ok = not verify_complex(cx) and is_indecomposable_complex(cx)
        return _bool_status(ok), len(w["dims"]) - 1

    run(f"witness.{target}", "the witness is a minimal complex with local homotopy endomorphism ring", witness)
    verdict = piecewise_hereditary_verdict(a, ctx.opts.length_bound, ctx.opts.mult_bound, ctx.opts.budget, ctx.opts.seed,
                                           action_free=None, cutoff=ctx.opts.cutoff)
    run(f"verdict.{target}", f"piecewise heredity of {_TARGET_NAMES[target]}", lambda: ("info", verdict.to_dict(), str(verdict)))
    return rep


# ---------------------------------------------------------------------------


def battery_invariance(ctx: Context) -> Report:
    """Finitistic and strong global dimension comparisons between Λ, ΛS, ΛG and Λ^S."""
    rep = _new_report(ctx, "invariance")
    run = _Runner(rep, "invariance.")
    ia = ctx.idempotent_action
    run("hypothesis.closed", "E is closed under the Sylow subgroup S", lambda: (_bool_status(ia.closed), ia.closed))
    if not ia.closed:
        return rep
    free = ia.free
    run("hypothesis.free", "S acts freely on E", lambda: ("info", free))

    fd = {}
    for t in TARGETS:
        def f(t=t):
            r, mode = ctx.fdim(t)
            fd[t] = r
            return "info", r.to_dict(), f"mode {mode}"

        run(f"fdim.{t}", f"finitistic dimension of {_TARGET_NAMES[t]}", f)
    if free:
        run("fdim.equal", "fdim ΛG = fdim ΛS = fdim Λ = fdim Λ^S (free action)",
            lambda: (_eq_status([fd[t] for t in TARGETS]), [str(fd[t]) for t in TARGETS]))
    else:
        run("fdim.equal", "fdim equality (needs a free action)",
            lambda: ("info", [str(fd[t]) for t in TARGETS], "action is not free; values reported as diagnostics"))

    gl = {t: ctx.gldim(t) for t in ("lambda", "skew_S", "fixed_S")}
    sg = {}
    for t in ("lambda", "skew_S", "fixed_S"):
        def s(t=t):
            if gl[t].is_infinite:
                sg[t] = None
                return "info", None, f"global dimension is {gl[t]}; the strong global dimension is infinite"
            sg[t] = ctx.sgldim(t)
            d = {k: v for k, v in sg[t].items() if k != "witness"}
            return "info", d

        run(f"sgldim.{t}", f"strong global dimension of {_TARGET_NAMES[t]} (bounded)", s)

    zeta = ctx.splitting
    run("zeta", "Λ^S is a Λ^S-bimodule summand of Λ (solver-produced ζ)", _zeta_check(ctx))

    def cmp(a, b):
        va, vb = _sgldim_value(sg[a]), _sgldim_value(sg[b])
        if sg[a] is None and sg[b] is None:
            return "pass", ["infinite", "infinite"]
        if va is None or vb is None:
            return "inconclusive", [va, vb], "a bounded search did not determine a value"
        return _bool_status(va == vb), [va, vb]

    if free:
        run("sgldim.skew_eq_fixed", "sgldim ΛS = sgldim Λ^S (free action)", lambda: cmp("skew_S", "fixed_S"))
        if zeta is not None:
            run("sgldim.skew_eq_lambda", "sgldim ΛS = sgldim Λ when ζ exists (free action)", lambda: cmp("skew_S", "lambda"))

    verdicts = {}
    for t in ("skew_G", "fixed_S"):
        def v(t=t):
            o = ctx.opts
            vd = piecewise_hereditary_verdict(ctx.algebra(t), o.length_bound, o.mult_bound, o.budget, o.seed,
                                              action_free=(free if t == "skew_G" else None), cutoff=o.cutoff)
            verdicts[t] = vd
            return "info", vd.to_dict(), str(vd)

        run(f"verdict.{t}", f"piecewise heredity of {_TARGET_NAMES[t]}", v)

    def finiteness():
        g, f = verdicts["skew_G"].kind, verdicts["fixed_S"].kind
        if g == "unknown" or (f == "unknown" and free):
            return "inconclusive", [g, f]
        lhs = g == "finite"
        rhs = f == "finite" and free
        return _bool_status(lhs == rhs), [g, f, free]

    run("sgldim.finiteness", "sgldim ΛG < ∞ iff sgldim Λ^S < ∞ and S acts freely on E", finiteness)
    return rep


# ---------------------------------------------------------------------------


def _split_checks(pairs) -> tuple[str, dict]:
    n = fails = 0
    for sp in pairs:
        n += 1
        fails += not sp.is_split()
    return _bool_status(fails == 0), {"tested": n, "failures": fails}


def battery_skew_structure(ctx: Context) -> Report:
    """Induction/restriction splittings, projective dimension comparisons and the structure of ΛS."""
    rep = _new_report(ctx, "structure")
    run = _Runner(rep, "structure.")
    ia = ctx.idempotent_action
    free = ia.free
    G, S, one = ctx.skew_G, ctx.skew_S, ctx.skew_1
    subs = [("skew_S", S)] + ([("skew_1", one)] if len(ctx.spec.sylow) > 1 else [])

    for name, H in subs:
        def us(H=H, name=name):
            mods = ctx.modules(name) + _random_over(ctx, H, name)
            return _split_checks(unit_split(v, G)[1] for v in mods)

        run(f"split.unit.{name}", f"δ∘ι = id on V↑↓ for {_TARGET_NAMES[name]}-modules V", us)

    for name, H in subs:
        t = ctx.spec.group.order // len(H.elements)

        def av(H=H, t=t):
            if t % ctx.spec.p == 0:
                return "skipped", None, f"|G:H| = {t} is not invertible"
            mods = ctx.modules("skew_G") + ctx.random_modules("skew_G")
            return _split_checks(average_split(m, H)[1] for m in mods)

        run(f"split.average.{name}", f"ρ∘θ = id on M↓↑ for ΛG-modules M, H = {_TARGET_NAMES[name]}", av)

    for name, H in subs:
        def cp(H=H):
            comps = [pd_compare(m, H, ctx.opts.cutoff) for m in ctx.modules("skew_G")]
            st = [c.status for c in comps]
            status = "fail" if "fail" in st else ("inconclusive" if "inconclusive" in st else "pass")
            rel = comps[0].relation if comps else None
            return status, {"relation": rel, "tested": len(comps), "pass": st.count("pass"), "fail": st.count("fail"),
                            "inconclusive": st.count("inconclusive")}

        run(f"pd_restriction.{name}", f"pd over {_TARGET_NAMES[name]} of M↓ compared with pd over ΛG of M", cp)

    for name, H in subs:
        t = ctx.spec.group.order // len(H.elements)

        def subgroup_fdim(name=name, t=t):
            fh = _fdim_of(ctx, name)
            fg, _ = ctx.fdim("skew_G")
            invertible = t % ctx.spec.p != 0
            if not (fh.is_exact and fg.is_exact):
                return "inconclusive", [str(fh), str(fg)]
            ok = fh.value == fg.value if invertible else fh.value <= fg.value
            return _bool_status(ok), [fh.value, fg.value], "equality expected" if invertible else "inequality expected"

        run(f"fdim_subgroup.{name}", f"fdim {_TARGET_NAMES[name]} ≤ fdim ΛG, with equality for invertible index", subgroup_fdim)

    def idem_check():
        es = [S.tensor(e, ctx.spec.group.identity) for e in ctx.spec.idempotents]
        bad = verify_complete_idempotent_set(S, es)
        return _bool_status(not bad), len(es), "; ".join(bad)

    run("idempotents", "E ⊗ 1 is a complete set of primitive orthogonal idempotents of ΛS", idem_check)

    fx = ctx.fixed_S
    if free:
        run("trace_spans", "Λ^S is spanned by the orbit sums Σ g(μ)", lambda: (_bool_status(fx.trace_spans), fx.trace_spans))
    else:
        run("trace_spans", "Λ^S is spanned by the orbit sums Σ g(μ)", lambda: ("info", fx.trace_spans,
            "asserted only for free actions: a non-free action can make the orbit sums vanish"))

    def dichotomy():
        gs, gl = ctx.gldim("skew_S"), ctx.gldim("lambda")
        known = lambda r: r.is_exact or r.is_infinite
        if not (known(gs) and known(gl)):
            return "inconclusive", [str(gs), str(gl)]
        return _bool_status(gs.is_exact == (gl.is_exact and free)), {"skew_S": gs.to_dict(), "lambda": gl.to_dict(), "free": free}

    run("gldim_dichotomy", "gldim ΛS < ∞ iff gldim Λ < ∞ and S acts freely on E", dichotomy)

    if not free:
        for cid in ("matrix_algebra", "fixed_point_exactness", "regular_decomposition", "projectivity",
                    "fdim_sylow_le_base", "fdim_group_eq_base"):
            run(cid, "needs a free action", lambda: ("skipped", None, "S does not act freely on E"))
        return rep

    run("matrix_algebra", "ΛS is a matrix algebra over Λ^S (dimension and Morita fingerprints)", lambda: _matrix_fingerprint(ctx))
    run("fixed_point_exactness", "F^S is exact on short exact sequences of ΛS-modules", lambda: _fixed_point_exactness(ctx))
    run("regular_decomposition", "ΛS ≅ Λ^|S| as left ΛS-modules (Λ with the natural action)", lambda: _regular_decomposition(ctx))

    def projectivity():
        mods = ctx.modules("skew_S") + ctx.random_modules("skew_S")
        flags = [restrict_scalars_projectivity(m) for m in mods]
        bad = sum(a != b for a, b in flags)
        return _bool_status(bad == 0), {"tested": len(flags), "disagreements": bad, "projective": sum(a for a, _ in flags)}

    run("projectivity", "a ΛS-module is projective iff it is projective over Λ", projectivity)

    def sylow_le_base():
        fs, _ = ctx.fdim("skew_S")
        fl, _ = ctx.fdim("lambda")
        if not (fs.is_exact and fl.is_exact):
            return "inconclusive", [str(fs), str(fl)]
        return _bool_status(fs.value <= fl.value), [fs.value, fl.value]

    run("fdim_sylow_le_base", "fdim ΛS ≤ fdim Λ", sylow_le_base)

    def group_eq_base():
        fg, _ = ctx.fdim("skew_G")
        fl, _ = ctx.fdim("lambda")
        return _eq_status([fg, fl]), [str(fg), str(fl)]

    run("fdim_group_eq_base", "fdim ΛG = fdim Λ", group_eq_base)
    return rep


def _fdim_of(ctx: Context, name: str) -> DimensionReport:
    if name in TARGETS:
        return ctx.fdim(name)[0]
    a = ctx.algebra(name)
    if is_nakayama(a):
        return fdim(a, ctx.opts.cutoff, "exact-nakayama")
    return fdim(a, ctx.opts.cutoff, "catalog", list(simples(a)) + [m for m, _ in pims(a)])


def _random_over(ctx: Context, alg: FinDimAlgebra, name: str) -> list[AModule]:
    rng = np.random.default_rng([ctx.opts.seed, 17, len(name)])
    return [random_module(alg, rng) for _ in range(RANDOM_MODULES)]


def _matrix_fingerprint(ctx: Context):
    S, fx = ctx.skew_S, ctx.fixed_S
    n = len(ctx.spec.sylow)
    dim_ok = S.dim == n * n * fx.dim
    a, b = structure(S), structure(fx)
    types_ok = a.n_types == b.n_types
    ca, cb = a.cartan(), b.cartan()
    cartan_ok = types_ok and any(np.array_equal(ca[np.ix_(perm, perm)], cb) for perm in itertools.permutations(range(a.n_types)))
    value = {"dim_skew_S": S.dim, "order_S": n, "dim_fixed_S": fx.dim, "types": [a.n_types, b.n_types], "cartan_match": bool(cartan_ok)}
    return _bool_status(dim_ok and types_ok and cartan_ok), value


def _fixed_point_exactness(ctx: Context):
    _S, fx = ctx.skew_S, ctx.fixed_S
    rng = np.random.default_rng([ctx.opts.seed, 25])
    tested = bad = 0
    for m in ctx.modules("skew_S") + ctx.random_modules("skew_S"):
        if m.dim == 0:
            continue
        v = rng.integers(0, ctx.spec.p, m.dim)
        cols = cyclic_submodule(m, v)
        sub, _ = submodule(m, cols)
        quo, _ = quotient_module(m, cols)
        dims = [fixed_points(x, fx)[0].dim for x in (sub, m, quo)]
        tested += 1
        bad += dims[1] != dims[0] + dims[2]
    return _bool_status(bad == 0), {"sequences": tested, "violations": bad}


def _regular_decomposition(ctx: Context):
    S = ctx.skew_S
    n = len(ctx.spec.sylow)
    reg, nat = regular_module(S), natural_module(S)
    target = direct_sum(*([nat] * n))
    iso = module_iso(reg, target) is not None
    left = decompose_module(reg)
    right = decompose_module(target)
    unmatched = list(right)
    for x in left:
        hit = next((i for i, y in enumerate(unmatched) if module_iso(x, y) is not None), None)
        if hit is None:
            break
        unmatched.pop(hit)
    else:
        multiset_ok = not unmatched
        return _bool_status(iso and multiset_ok), {"isomorphic": iso, "summands": len(left), "natural_summands": len(right) // n}
    return "fail", {"isomorphic": iso, "summands": len(left), "natural_summands": len(right) // n}


# ---------------------------------------------------------------------------


def battery_functors(ctx: Context) -> Report:
    """Split identities for modules and perfect complexes."""
    rep = _new_report(ctx, "functors")
    run = _Runner(rep, "functors.")
    G, S = ctx.skew_G, ctx.skew_S

    run("iota_delta.modules", "δ∘ι = id for ΛS-modules induced to ΛG",
        lambda: _split_checks(unit_split(v, G)[1] for v in ctx.modules("skew_S") + ctx.random_modules("skew_S")))

    def theta_rho():
        if ctx.index % ctx.spec.p == 0:
            return "skipped", None, "|G:S| is not invertible"
        return _split_checks(average_split(m, S)[1] for m in ctx.modules("skew_G") + ctx.random_modules("skew_G"))

    run("theta_rho.modules", "ρ∘θ = id for ΛG-modules restricted to ΛS", theta_rho)

    def psi_phi():
        if ctx.splitting is None:
            return "skipped", None, "no bimodule retraction ζ"
        mods = ctx.modules("fixed_S") + ctx.random_modules("fixed_S")
        return _split_checks(subalgebra_split(m, ctx.lam, ctx.splitting)[2] for m in mods)

    run("psi_phi.modules", "φ∘ψ = id for Λ^S-modules through Λ ⊗_{Λ^S} −", psi_phi)

    def complexes_of(target):
        out = []
        for m in ctx.modules(target):
            try:
                out.append(from_resolution(m, ctx.opts.cutoff))
            except ValueError:
                continue
        return out

    run("iota_delta.complexes", "δ•∘ι• = id on resolutions of ΛS-modules",
        lambda: _split_checks(unit_split_complex(c, G)[1] for c in complexes_of("skew_S")))

    def theta_rho_c():
        if ctx.index % ctx.spec.p == 0:
            return "skipped", None, "|G:S| is not invertible"
        return _split_checks(average_split_complex(c, S)[1] for c in complexes_of("skew_G"))

    run("theta_rho.complexes", "ρ•∘θ• = id on resolutions of ΛG-modules", theta_rho_c)

    def psi_phi_c():
        if ctx.splitting is None:
            return "skipped", None, "no bimodule retraction ζ"
        return _split_checks(subalgebra_complex_split(c, ctx.lam, ctx.splitting)[2] for c in complexes_of("fixed_S"))

    run("psi_phi.complexes", "φ•∘ψ• = id on resolutions of Λ^S-modules", psi_phi_c)
    return rep


def battery_fdim_conjecture(ctx: Context) -> Report:
    """Log fdim Λ and fdim ΛG for a closed, possibly non-free action; never a pass/fail verdict."""
    rep = _new_report(ctx, "fdim-conjecture")
    run = _Runner(rep, "fdim_conjecture.")
    ia = ctx.idempotent_action

    def log():
        fl, _ = ctx.fdim("lambda")
        fg, _ = ctx.fdim("skew_G")
        gl = ctx.gldim("lambda")
        if not ia.closed:
            outcome = "out of scope: E is not closed under S"
        elif ia.free:
            outcome = "free action: covered by the finitistic dimension theorem"
        elif not fl.is_exact:
            outcome = "hypothesis fdim Λ < ∞ not established"
        elif fg.is_exact:
            outcome = "consistent: fdim ΛG is finite"
        else:
            outcome = "undetermined within the cutoff"
        return "info", {"fdim_lambda": fl.to_dict(), "fdim_skew_G": fg.to_dict(), "gldim_lambda": gl.to_dict(),
                        "closed": ia.closed, "free": ia.free}, outcome

    run("instance", "if fdim Λ < ∞ then fdim ΛG < ∞ (logged, not decided)", log)
    return rep
