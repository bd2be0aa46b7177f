"""Build Λ, ΛG, ΛS and Λ^S for two fixtures and look at their structure.

Run with ``python demos/skew_algebras.py``.
"""

from skewgroup.algebra import verify_algebra
from skewgroup.harness import Context, load_fixture
from skewgroup.homology import decompose_module, module_iso, natural_module, structure
from skewgroup.modules import regular_module


def show(name: str) -> None:
    ctx = Context(load_fixture(name))
    spec = ctx.spec
    print(f"== {name}: p = {spec.p}, |G| = {spec.group.order}, |S| = {len(spec.sylow)}")
    for label, a in (("Λ", ctx.lam), ("ΛG", ctx.skew_G), ("ΛS", ctx.skew_S), ("Λ^S", ctx.fixed_S)):
        ok = "associative, unital" if not verify_algebra(a) else "INVALID"
        print(f"   {label:4} dim {a.dim:3}  {structure(a).n_types} simple type(s)  {ok}")

    ia = ctx.idempotent_action
    print(f"   S permutes the vertex idempotents: closed = {ia.closed}, free = {ia.free}")
    z = ctx.splitting
    print(f"   bimodule retraction ζ: Λ → Λ^S {'found' if z is not None else 'not found'}"
          + (f", kernel of dimension {z.complement.shape[1]}" if z is not None else ""))

    # ΛS as a left module over itself against copies of Λ with its natural action
    reg, nat = regular_module(ctx.skew_S), natural_module(ctx.skew_S)
    parts = decompose_module(reg)
    matches = sum(module_iso(x, nat) is not None for x in parts)
    print(f"   ΛS splits into {len(parts)} indecomposable(s) of dimensions {sorted(x.dim for x in parts)};"
          f" {matches} of them are isomorphic to Λ itself")
    print()


if __name__ == "__main__":
    print("Skew group algebras over GF(p): construction and first invariants\n")
    print("EX-A swaps the two factors of k × k.  Λ is then a single free orbit, and ΛS is the")
    print("2 × 2 matrix algebra over Λ^S = k, so its regular module is two copies of Λ.\n")
    show("EX-A")
    print("EX-B swaps two copies of the A2 path algebra.  The action is still free, but Λ now")
    print("breaks into two projective ΛS-modules, so ΛS has four indecomposable summands,")
    print("two of each type, while ΛS ≅ Λ ⊕ Λ still holds as modules.\n")
    show("EX-B")
    print("EX-C is the trivial action of Z/2 on k at p = 2.  The only idempotent is fixed, so")
    print("the action is closed but not free, and ΛG is the group algebra of Z/2.\n")
    show("EX-C")
