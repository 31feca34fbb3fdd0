"""Exact maximum densities of (k, l)-sum-free sets in finite abelian groups."""

from .formulas import (
    FormulaResult,
    interval_witness,
    lambda_connected,
    lambda_cyclic,
    lambda_product,
    lambda_sumfree_abelian,
)
from .groups import (
    FiniteAbelianGroup,
    GroupSubset,
    ProjectionSpec,
    cyclic,
    divisors,
    element_add,
    is_sum_free,
    iterated_sumset,
    parse_group,
    parse_subset,
    pullback,
    stabilizer,
    sumset,
)
from .search import (
    SearchConfig,
    SearchOutcome,
    dilation_symmetries,
    is_shifted_sum_free,
    max_shifted_sum_free,
    max_sum_free,
    shifted_iterated_sumset,
)
from .survey import SurveyRecord, check_sumfree_bounds, survey_shifted, verify_range

__version__ = "0.1.0"
