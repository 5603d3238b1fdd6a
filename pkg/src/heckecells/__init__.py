"""Exact Hecke algebra combinatorics for crystallographic Coxeter systems.

The package computes canonical bases (Kazhdan-Lusztig at characteristic 0,
table-supplied otherwise), cell preorders and cell modules, the hybrid
basis attached to a standard parabolic subgroup, and mechanical verifiers
for the positivity, unitriangularity, parabolic-restriction and
parabolic-induction statements those structures satisfy.
"""

from .laurent import LaurentPolynomial, parse_poly, format_poly, V, V_INV, ONE, ZERO
from .coxeter import (
    CoxeterSystem,
    CoxeterElement,
    CoxeterError,
    InfiniteSystemError,
    preset_system,
    build_system,
    bruhat_leq,
    minimal_reps,
    coset_decompose,
    deodhar_case,
)
from .hecke import HeckeElement, std_multiply, bar_involution, iota
from .canonical import (
    CanonicalTable,
    kl_table,
    validate_table,
    change_basis,
    check_parabolic_invariance,
    load_table,
    save_table,
)
from .cells import CellPartition, CellModule, cell_partition, two_sided, cell_module, hasse_export
from .hybrid import HybridContext, hybrid_element, hybrid_expand, hybrid_leq, verify_hybrid_theorems
from .induction import (
    TheoremReport,
    ideal_check,
    verify_preorder_compat,
    verify_induction,
    verify_restriction,
)

__version__ = "0.1.0"
