from renorm.convergence import (
    RECORD_COLUMNS,
    ConvergenceRecord,
    convergence_scan,
    records_from_frame,
    records_to_frame,
)
from renorm.products import (
    ProductResult,
    ordered_product,
    product,
    scalar_error_bound,
    scalar_limit,
    scalar_product,
)
from renorm.symmetric_sums import (
    expand_product,
    k_term_limit_check,
    norm_budget_check,
    sym_sum_bruteforce,
    sym_sum_dp,
    sym_sums_dp,
)
from renorm.weighted import (
    WeightFunction,
    weighted_average,
    weighted_average_abel,
    weighted_limit,
)

__all__ = [
    "RECORD_COLUMNS",
    "ConvergenceRecord",
    "ProductResult",
    "WeightFunction",
    "convergence_scan",
    "expand_product",
    "k_term_limit_check",
    "norm_budget_check",
    "ordered_product",
    "product",
    "records_from_frame",
    "records_to_frame",
    "scalar_error_bound",
    "scalar_limit",
    "scalar_product",
    "sym_sum_bruteforce",
    "sym_sum_dp",
    "sym_sums_dp",
    "weighted_average",
    "weighted_average_abel",
    "weighted_limit",
]
