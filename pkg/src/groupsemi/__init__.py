"""Irreducibles and additive decompositions in semigroup semirings S[G]."""

from .coefficients import NatPoly, Natural, Spq, parse_domain
from .errors import (
    ConditionViolated,
    DomainMismatch,
    GroupSemiError,
    NotApplicable,
    ParseError,
    SearchLimitExceeded,
    Unsupported,
)
from .goldbach import Decomposition, goldbach_decompose, verify_summand_bound
from .groups import IntGroup, IntVecGroup, parse_group
from .parsing import parse_expr, print_expr
from .polyexpr import (
    PolyExpr,
    common_divisor,
    factor_search,
    is_irreducible,
    is_monolithic,
    monolithic_sufficient,
    normalize,
    poly_add,
    poly_mul,
)
from .series import (
    ArithmeticTail,
    IncreasingGapTail,
    StructuredSeries,
    gap_subsequence,
    min_gap_analysis,
    prefix_sum_identity,
    series_from_spec,
    series_irreducible_cert,
    series_monolithic_cert,
    weak_goldbach_series,
)

__version__ = "0.1.0"
