"""Exact classification of multidegrees of tame polynomial automorphisms.

Public surface, bottom up:

  ordgroup       the ordered group Z^k (lex), semigroup arithmetic, w_star
  poly           exact rational polynomials, weighted degrees, wedge degrees
  automorphisms  elementary steps, tame words, realization, witnesses
  classifier     exclusion certificates, wildness certification, corollaries
  search         bounded word generation and the search-vs-classifier oracle
  parse / cli    expression grammar and the command-line surface
"""

from .automorphisms import (
    ElementaryAut,
    Endo,
    TameWord,
    compose,
    deg_w_total,
    intro_family,
    invert,
    mdeg,
    mdeg_w,
    nagata,
    permutation_word,
    realize,
    scaling_word,
    semigroup_witness,
    shear,
    transposition_word,
)
from .classifier import (
    Certificate,
    ClassificationResult,
    Condition,
    DeltaBoundRegistry,
    Excluded,
    Realizable,
    Theorem,
    Unknown,
    builtin_registry,
    certify_wild,
    check_total_abc,
    check_weighted_conditions,
    classify_total,
    classify_weighted,
    corollary_names,
    corollary_suite,
    delta_lower_bound,
    lemma_a_conditions,
    make_realizable,
)
from .errors import (
    BudgetExceededError,
    ConstructionError,
    DomainError,
    HypothesisViolation,
    PolynomialSyntaxError,
    RankMismatchError,
    SchemaVersionError,
)
from .ordgroup import (
    NEG_INF,
    DegreeValue,
    GroupElem,
    Weight,
    as_group_elem,
    dependent_pair,
    frobenius_number,
    gcd_lcm,
    ge,
    is_prime,
    least_combination_exceeding,
    least_multiple_exceeding,
    lex_compare,
    multiple_of,
    rank_profile,
    semigroup_member,
    w_star,
)
from .parse import parse_polynomial, parse_vector, parse_vector_list
from .poly import (
    Budget,
    Polynomial,
    degree_w,
    jacobian_det,
    leading_form,
    partial,
    power_dependence,
    render,
    substitute,
    wedge2_degree,
    wedge3_degree,
)
from .search import (
    ConsistencyReport,
    SearchConfig,
    SearchRecord,
    consistency_check,
    generate,
    load,
    persist,
    realizability_table,
    run_search,
    word_fingerprint,
)

__version__ = "0.1.0"
