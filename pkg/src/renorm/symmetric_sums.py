"""
Ordered symmetric sums (1/n^k) * sum over i_1 < ... < i_k of A_{i_1}···A_{i_k}

These are the coefficients of t^k in the renormalized product; their limits are A^k/k!.
"""

import functools
import itertools
import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from matcore import Matrix, as_complex, identity, mat_norm, mat_power
from sequences import MatrixSequence, mean_norm_bound
from utils.error_handling import CombinatorialBudgetError, InvalidParameterError

logger = logging.getLogger(__name__)

BRUTEFORCE_BUDGET = 10**6


def _check_order(n: int, k: int, lowest: int = 1) -> None:
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    if k < lowest:
        raise InvalidParameterError(f"order k must be at least {lowest}, got {k}")
    if k > n:
        raise InvalidParameterError(
            f"order k={k} exceeds n={n}; the sum would be empty",
            context={"n": n, "k": k},
        )


def sym_sums_dp(seq: MatrixSequence, n: int, k_max: int) -> List[Matrix]:
    """
    All normalized sums of orders 0..k_max in one pass

    Uses the prefix recurrence S_j(m) = sum_{l<m} S_{j-1}(l) A_l with S_0 = I, each order
    costing one batched matmul and one cumulative sum over the n prefixes.
    """
    _check_order(n, k_max, lowest=0)
    terms = seq.values(n)
    d = seq.dim

    prefix = np.broadcast_to(np.eye(d, dtype=np.complex128), (n + 1, d, d))
    sums = [identity(d)]
    zero = np.zeros((1, d, d), dtype=np.complex128)
    for order in range(1, k_max + 1):
        contributions = prefix[:n] @ terms
        prefix = np.concatenate([zero, np.cumsum(contributions, axis=0)])
        sums.append(Matrix(prefix[n] / float(n) ** order))
    return sums


def sym_sum_dp(seq: MatrixSequence, n: int, k: int) -> Matrix:
    """
    Normalized ordered symmetric sum of order k over indices 0..n-1

    Raises:
        InvalidParameterError: unless 1 <= k <= n
    """
    _check_order(n, k)
    return sym_sums_dp(seq, n, k)[k]


def sym_sum_bruteforce(seq: MatrixSequence, n: int, k: int) -> Matrix:
    """
    The same sum by direct enumeration of increasing k-tuples; a reference oracle

    Raises:
        CombinatorialBudgetError: C(n, k) exceeds 10**6
    """
    _check_order(n, k)
    tuples = math.comb(n, k)
    if tuples > BRUTEFORCE_BUDGET:
        raise CombinatorialBudgetError(
            f"C({n}, {k}) = {tuples} exceeds the budget of {BRUTEFORCE_BUDGET}",
            context={"n": n, "k": k, "tuples": tuples},
        )
    terms = seq.values(n)
    total = np.zeros((seq.dim, seq.dim), dtype=np.complex128)
    for indices in itertools.combinations(range(n), k):
        total += functools.reduce(np.matmul, (terms[i] for i in indices))
    return Matrix(total / float(n) ** k)


def norm_budget_check(
    seq: MatrixSequence, n: int, k: int, t: complex
) -> Tuple[float, float]:
    """
    Norm of the k-th expansion term against its domination bound

    Returns:
        (lhs, rhs) with lhs = |t|^k * ||sym_sum_dp||_F and
        rhs = |t|^k * alpha_hat^k / k!, alpha_hat the empirical norm-mean bound
    """
    _check_order(n, k)
    scale = abs(as_complex(t)) ** k
    lhs = scale * mat_norm(sym_sum_dp(seq, n, k))
    rhs = scale * mean_norm_bound(seq, n) ** k / math.factorial(k)
    return lhs, rhs


def expand_product(seq: MatrixSequence, n: int, t: complex) -> Matrix:
    """Pi_n(t) rebuilt as the sum over k = 0..n of t^k * sym_sum_dp(seq, n, k)"""
    t = as_complex(t)
    total = np.zeros((seq.dim, seq.dim), dtype=np.complex128)
    for k, term in enumerate(sym_sums_dp(seq, n, n)):
        total += t**k * term.entries
    return Matrix(total)


def k_term_limit_check(
    seq: MatrixSequence, k: int, n_grid: Sequence[int], A: Matrix
) -> List[Tuple[int, float]]:
    """Frobenius distance between sym_sum_dp(seq, n, k) and A^k/k! for each n"""
    if k < 1:
        raise InvalidParameterError(f"order k must be at least 1, got {k}")
    limit = mat_power(A, k) * (1.0 / math.factorial(k))
    results = []
    for n in n_grid:
        gap = mat_norm(sym_sum_dp(seq, n, k) - limit)
        logger.debug("k-term gap at n=%d, k=%d: %.3e", n, k, gap)
        results.append((n, gap))
    return results
