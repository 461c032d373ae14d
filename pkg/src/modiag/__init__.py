"""modiag: exact symbolic calculus for modified diagonal cycle classes.

The package represents diagonal-type cycle classes as exact formal sums
over symbolic bases and mechanically verifies the combinatorial identities
that govern them: product (Kunneth) vanishing, stability, blow-up and
projective-bundle coefficient identities, the homological torsion
threshold, and the double-cover linear algebra including the open
higher-order searches.  Everything is computed over the rationals with
zero tolerance; verifications either pass exactly or report the offending
term.
"""

from .exactalg import (
    Certificate,
    IntPolynomial,
    Rational,
    RationalMatrix,
    alternating_binomial_vanishes,
    binom,
    membership,
    solve_exact,
)
from .formal import (
    Assignment,
    FormalSum,
    MarkedClassKey,
    OmegaBarKey,
    Pattern,
    SubsetClassKey,
    push_forward,
    subset_to_pattern,
    symmetrize,
)
from .diagonals import (
    GammaHypothesis,
    modified_diagonal,
    normal_form,
    reduce_subset_diagonal,
    relation_instances,
    verify_marked_projection,
    verify_stability,
)
from .products import ProductContext, expand_pair_diagonal, pair_coefficient, verify_kunneth
from .blowups import BlowupContext, chern_multi_indices, verify_blowup
from .bundles import (
    ChernPolynomial,
    bundle_coefficients,
    segre_class,
    top_bound_check,
    verify_fibration_curve,
    verify_fibration_surface,
)
from .doublecover import (
    DoubleCoverSolution,
    append_and_symmetrize,
    append_orbits,
    coefficient_table,
    modified_diagonal_omega,
    pullback_modified_diagonal,
    solve_double_cover,
)
from .homology import integral_coefficient, torsion_decision

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BlowupContext",
    "Certificate",
    "ChernPolynomial",
    "DoubleCoverSolution",
    "FormalSum",
    "GammaHypothesis",
    "IntPolynomial",
    "MarkedClassKey",
    "OmegaBarKey",
    "Pattern",
    "ProductContext",
    "Rational",
    "RationalMatrix",
    "SubsetClassKey",
    "alternating_binomial_vanishes",
    "append_and_symmetrize",
    "append_orbits",
    "binom",
    "bundle_coefficients",
    "chern_multi_indices",
    "coefficient_table",
    "expand_pair_diagonal",
    "integral_coefficient",
    "membership",
    "modified_diagonal",
    "modified_diagonal_omega",
    "normal_form",
    "pair_coefficient",
    "pullback_modified_diagonal",
    "push_forward",
    "reduce_subset_diagonal",
    "relation_instances",
    "segre_class",
    "solve_double_cover",
    "solve_exact",
    "subset_to_pattern",
    "symmetrize",
    "top_bound_check",
    "torsion_decision",
    "verify_blowup",
    "verify_fibration_curve",
    "verify_fibration_surface",
    "verify_kunneth",
    "verify_marked_projection",
    "verify_stability",
]
