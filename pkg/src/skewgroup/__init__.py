"""Skew group algebras over prime fields: construction, homological dimensions and perfect complexes."""

from .algebra import (
    FinDimAlgebra,
    FiniteGroup,
    FixedAlgebra,
    GroupAction,
    QuiverAlgebra,
    QuiverPresentation,
    SkewGroupAlgebra,
    algebra_from_quiver,
    algebra_from_table,
    bimodule_splitting,
    check_action_on_idempotents,
    fixed_algebra,
    matrix_algebra,
    quiver_automorphism,
    skew_group_algebra,
    verify_algebra,
    verify_sylow,
)
from .complexes import PerfectComplex, SgldimReport, Verdict, minimalize, piecewise_hereditary_verdict, sgldim_search
from .functors import induce, pd_compare, restrict
from .homology import DimensionReport, decompose_module, fdim, gldim, module_iso, natural_module, pd
from .modules import AModule, ModuleMap, regular_module
from .radical import NonSplitError, is_local, lift_primitive_idempotents, radical_algebra

__version__ = "0.1.0"

__all__ = [
    "FinDimAlgebra", "FiniteGroup", "FixedAlgebra", "GroupAction", "QuiverAlgebra", "QuiverPresentation",
    "SkewGroupAlgebra", "algebra_from_quiver", "algebra_from_table", "bimodule_splitting",
    "check_action_on_idempotents", "fixed_algebra", "matrix_algebra", "quiver_automorphism", "skew_group_algebra",
    "verify_algebra", "verify_sylow", "PerfectComplex", "SgldimReport", "Verdict", "minimalize",
    "piecewise_hereditary_verdict", "sgldim_search", "induce", "pd_compare", "restrict", "DimensionReport",
    "decompose_module", "fdim", "gldim", "module_iso", "natural_module", "pd", "AModule", "ModuleMap",
    "regular_module", "NonSplitError", "is_local", "lift_primitive_idempotents", "radical_algebra",
]
