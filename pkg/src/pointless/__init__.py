"""Pointless hyperelliptic curves over small finite fields.

Construction rules with verification certificates, point counting, twist
duality, genus censuses, and exhaustive small-field searches.
"""

from .census import (
    CensusConfig,
    CensusRow,
    direct_obtainable,
    discrepancy_report,
    exhaustive_pointless_search,
    genus_bound,
    iter_pointless_curves,
    missed_genera,
    table_small_primes,
    table_summary,
)
from .constructions import (
    Certificate,
    amplify_quadratic_factor,
    double_curve,
    doubled_certificate,
    explore_factor_2g,
    modp_prime_singular,
    parametrize_conic,
    q_minus_a_exists,
    relprime_exists,
    rr_classify,
    standard_poly,
    try_modp,
    try_modp_prime,
    verify_budget,
)
from .curve import (
    HyperellipticCurve,
    PointCount,
    RationalMap,
    count_points,
    genus,
    is_maximal,
    is_pointless,
    new_curve,
    pullback,
    quadratic_twist,
)
from .errors import (
    DegenerateExponentError,
    DegenerateMapError,
    NonSquarefreeError,
    SearchBudgetExceededError,
    VerificationError,
)
from .field import (
    FieldElement,
    FieldSpec,
    canonical_nonsquare,
    make_field,
    quadratic_character,
)
from .poly import (
    Poly,
    degree_profile,
    extract_quadratic_factor,
    from_terms,
    gcd,
    is_irreducible,
    is_squarefree,
    monomial,
    one,
    poly,
    squarefree_decomposition,
    squarefree_witness,
    variable,
    zero,
)

__all__ = [
    "CensusConfig",
    "CensusRow",
    "Certificate",
    "DegenerateExponentError",
    "DegenerateMapError",
    "FieldElement",
    "FieldSpec",
    "HyperellipticCurve",
    "NonSquarefreeError",
    "PointCount",
    "Poly",
    "RationalMap",
    "SearchBudgetExceededError",
    "VerificationError",
    "amplify_quadratic_factor",
    "canonical_nonsquare",
    "count_points",
    "degree_profile",
    "direct_obtainable",
    "discrepancy_report",
    "double_curve",
    "doubled_certificate",
    "exhaustive_pointless_search",
    "explore_factor_2g",
    "extract_quadratic_factor",
    "from_terms",
    "gcd",
    "genus",
    "genus_bound",
    "is_irreducible",
    "is_maximal",
    "is_pointless",
    "is_squarefree",
    "iter_pointless_curves",
    "make_field",
    "missed_genera",
    "modp_prime_singular",
    "monomial",
    "new_curve",
    "one",
    "parametrize_conic",
    "poly",
    "pullback",
    "q_minus_a_exists",
    "quadratic_character",
    "quadratic_twist",
    "relprime_exists",
    "rr_classify",
    "squarefree_decomposition",
    "squarefree_witness",
    "standard_poly",
    "table_small_primes",
    "table_summary",
    "try_modp",
    "try_modp_prime",
    "variable",
    "verify_budget",
    "zero",
]
