"""Potent filtrations and p-length bounds on finite permutation groups."""

from .catalog import (
    DEFAULT_CATALOG,
    REPORT_SCHEMA,
    TOOL_VERSION,
    Report,
    build_group,
    canonical_recipe,
    emit_group,
    emit_report,
    parse_group,
    parse_recipe,
    parse_report,
)
from .battery import run_catalog
from .errors import (
    CapExceeded,
    DegreeMismatch,
    GroupParseError,
    InternalMismatch,
    KernelNotElementaryAbelian,
    LengthCapExceeded,
    NotAPGroup,
    NotNormal,
    NotPSolvable,
    PreconditionViolated,
    PsolvError,
    UnsupportedParameters,
)
from .filtrations import (
    DEFAULT_LENGTH_CAP,
    DEFAULT_SEARCH_BUDGET,
    SEARCH_ORDER_LIMITS,
    Filtration,
    PFVerdict,
    SearchOutcome,
    compute_ekr,
    ekr_pf_candidates,
    ekr_terms,
    pf_embedded_search,
    verify_potent_filtration,
)
from .group import DEFAULT_ENUM_CAP, PermutationGroup, span, trivial_group
from .linear import (
    FpMatrix,
    LinearAction,
    action_matrix,
    unipotency_degree,
)
from .perm import Permutation, from_cycles, identity, parse_cycles
from .series import (
    derived_series,
    exponent,
    is_p_group,
    is_p_solvable,
    is_prime,
    lower_central_series,
    nilpotency_class,
    o_p,
    o_pprime,
    o_pprime_p,
    p_length,
    sylow,
    upper_p_series,
)
from .subgroups import (
    DEFAULT_COSET_CAP,
    QuotientGroup,
    centralizer,
    commutator,
    conjugacy_classes,
    intersect,
    is_normal,
    is_subgroup,
    iterated_commutator,
    join,
    normal_closure,
    normal_subgroups,
    normalizer,
    power_subgroup,
    preimage,
    quotient,
    same_subgroup,
)
from .theorems import (
    analyze_group,
    check_main_hypothesis,
    check_O24_inclusion,
    check_thm6_hypothesis,
    hall_higman_bound,
    question7_scan,
    verify_lemma8,
    verify_main,
    verify_prop3,
    verify_prop4,
    verify_thm6,
)
from .verdicts import Verdict

__version__ = TOOL_VERSION

__all__ = [
    "CapExceeded",
    "DEFAULT_CATALOG",
    "DEFAULT_COSET_CAP",
    "DEFAULT_ENUM_CAP",
    "DEFAULT_LENGTH_CAP",
    "DEFAULT_SEARCH_BUDGET",
    "DegreeMismatch",
    "Filtration",
    "FpMatrix",
    "GroupParseError",
    "InternalMismatch",
    "KernelNotElementaryAbelian",
    "LengthCapExceeded",
    "LinearAction",
    "NotAPGroup",
    "NotNormal",
    "NotPSolvable",
    "PFVerdict",
    "Permutation",
    "PermutationGroup",
    "PreconditionViolated",
    "PsolvError",
    "QuotientGroup",
    "REPORT_SCHEMA",
    "Report",
    "SEARCH_ORDER_LIMITS",
    "SearchOutcome",
    "TOOL_VERSION",
    "UnsupportedParameters",
    "Verdict",
    "action_matrix",
    "analyze_group",
    "build_group",
    "canonical_recipe",
    "centralizer",
    "check_main_hypothesis",
    "check_O24_inclusion",
    "check_thm6_hypothesis",
    "commutator",
    "compute_ekr",
    "conjugacy_classes",
    "derived_series",
    "ekr_pf_candidates",
    "ekr_terms",
    "emit_group",
    "emit_report",
    "exponent",
    "from_cycles",
    "hall_higman_bound",
    "identity",
    "intersect",
    "is_normal",
    "is_p_group",
    "is_p_solvable",
    "is_prime",
    "is_subgroup",
    "iterated_commutator",
    "join",
    "lower_central_series",
    "nilpotency_class",
    "normal_closure",
    "normal_subgroups",
    "normalizer",
    "o_p",
    "o_pprime",
    "o_pprime_p",
    "p_length",
    "parse_cycles",
    "parse_group",
    "parse_recipe",
    "parse_report",
    "pf_embedded_search",
    "power_subgroup",
    "preimage",
    "quotient",
    "question7_scan",
    "run_catalog",
    "same_subgroup",
    "span",
    "sylow",
    "trivial_group",
    "unipotency_degree",
    "upper_p_series",
    "verify_lemma8",
    "verify_main",
    "verify_potent_filtration",
    "verify_prop3",
    "verify_prop4",
    "verify_thm6",
]
