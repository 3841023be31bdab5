"""weakseq: exact verification, construction and certification of t-weak
sequencings of subsets of cyclic groups."""

from .zn import (
    Modulus,
    Ordering,
    OrderingKind,
    SubsetSpec,
    classify_ordering,
    cmpp_admissible,
    is_t_weak,
    partial_sums,
    t_weak_violations,
)
from .polysys import FactorSystem, build_factor_system, evaluate_system, system_degree
from .extract import coefficient, coefficient_oracle
from .factorint import factorize
from .certify import (
    Certificate,
    KScope,
    TheoremReport,
    check_applicability,
    make_certificate,
    reference_certificates,
    verify_theorem_coverage,
)
from .search import (
    GreedyOptions,
    SearchBudget,
    SearchResult,
    backtracking_search,
    construct_t3,
    exhaustive_check,
    find_low_collision_ordering,
    greedy_prefix,
)
from .montecarlo import (
    EstimateReport,
    TrialConfig,
    estimate_collision_mean,
    estimate_failure_probability,
    exact_collision_mean,
    exact_failure_probability,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "EstimateReport",
    "FactorSystem",
    "GreedyOptions",
    "KScope",
    "Modulus",
    "Ordering",
    "OrderingKind",
    "SearchBudget",
    "SearchResult",
    "SubsetSpec",
    "TheoremReport",
    "TrialConfig",
    "backtracking_search",
    "build_factor_system",
    "check_applicability",
    "classify_ordering",
    "cmpp_admissible",
    "coefficient",
    "coefficient_oracle",
    "construct_t3",
    "estimate_collision_mean",
    "estimate_failure_probability",
    "evaluate_system",
    "exact_collision_mean",
    "exact_failure_probability",
    "exhaustive_check",
    "factorize",
    "find_low_collision_ordering",
    "greedy_prefix",
    "is_t_weak",
    "make_certificate",
    "partial_sums",
    "reference_certificates",
    "system_degree",
    "t_weak_violations",
    "verify_theorem_coverage",
]
