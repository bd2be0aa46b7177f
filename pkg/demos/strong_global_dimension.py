"""Strong global dimension: closed forms, bounded searches and piecewise-hereditary verdicts.

Run with ``python demos/strong_global_dimension.py``.
"""

from skewgroup.complexes import homotopy_end, piecewise_hereditary_verdict, sgldim_search
from skewgroup.harness import Context, load_fixture
from skewgroup.radical import is_local


def describe(label, rep) -> None:
    scope = rep.closed_form or (f"exhaustive up to length {rep.exhaustive_up_to[0]}, multiplicity {rep.exhaustive_up_to[1]}"
                                if rep.exhaustive_up_to else "bounded, not exhaustive")
    print(f"  {label:24} sgldim >= {rep.lower_bound}  [{scope}; {rep.candidates} candidates]")


if __name__ == "__main__":
    print("The strong global dimension measures how long an indecomposable perfect complex can be.\n")
    a2, m2, dual = (Context(load_fixture(n)).lam for n in ("A2", "M2", "DUAL"))
    describe("kA2", sgldim_search(a2))
    describe("M2(k)", sgldim_search(m2))
    describe("kA2 (searched)", sgldim_search(a2, length_bound=2, force_search=True))
    print()

    print("Over k[x]/(x²), P --x--> P --x--> ... is indecomposable at every length, so the search")
    print("keeps finding witnesses as the bound grows; each is certified by a local endomorphism ring.")
    for bound in (2, 3, 4):
        rep = sgldim_search(dual, length_bound=bound, mult_bound=2, seed=7)
        describe(f"k[x]/(x²), L = {bound}", rep)
        print(f"  {'':24} End_K(witness) local: {is_local(homotopy_end(rep.witness))}")
    print()

    print("EX-B: Λ, ΛS and Λ^S agree at small exhaustive bounds.")
    ctx = Context(load_fixture("EX-B"))
    for label, a in (("Λ", ctx.lam), ("ΛS", ctx.skew_S), ("Λ^S", ctx.fixed_S)):
        describe(label, sgldim_search(a, length_bound=2, mult_bound=2, force_search=True))
    print()

    print("Verdicts:")
    exc = Context(load_fixture("EX-C"))
    print(f"  EX-C ΛG:        {piecewise_hereditary_verdict(exc.skew_G, action_free=exc.free)}")
    print(f"  kA2:            {piecewise_hereditary_verdict(a2)}")
    print(f"  k[x]/(x²):      {piecewise_hereditary_verdict(dual)}")
    print(f"  without gldim:  {piecewise_hereditary_verdict(dual, use_gldim_certificate=False)}")
