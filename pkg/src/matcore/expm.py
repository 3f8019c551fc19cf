"""
Matrix exponential: scaling-and-squaring kernel and a plain Taylor oracle
"""

import math

import numpy as np

from matcore.matrix import Matrix
from utils.error_handling import InvalidParameterError

MAX_TAYLOR_TERMS = 30


def _squarings_for(norm: float) -> int:
    """Smallest s >= 0 with norm / 2**s <= 1/2"""
    if norm <= 0.5:
        return 0
    return max(0, math.ceil(math.log2(norm / 0.5)))


def mat_exp(X: Matrix, tol: float = 1e-15) -> Matrix:
    """
    exp(X) by scaling and squaring

    The argument is scaled by 2**-s so its frobenius norm is at most 1/2, a truncated
    Taylor series is summed until the term norm drops below tol * 2**(-s-2) (at most
    30 terms), and the result is squared s times.

    Args:
        X: Matrix to exponentiate
        tol: Relative accuracy target, must be positive
    """
    if not tol > 0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")

    a = X.entries
    s = _squarings_for(float(np.linalg.norm(a, "fro")))
    scaled = a / (2.0**s)

    result = np.eye(X.dim, dtype=np.complex128)
    term = np.eye(X.dim, dtype=np.complex128)
    cutoff = tol * 2.0 ** (-s - 2)
    for j in range(1, MAX_TAYLOR_TERMS + 1):
        term = term @ scaled / j
        result = result + term
        if np.linalg.norm(term, "fro") < cutoff:
            break

    for _ in range(s):
        result = result @ result
    return Matrix(result)


def mat_exp_series_oracle(X: Matrix, terms: int) -> Matrix:
    """
    Plain truncated Taylor sum of X**k / k! for k = 0..terms, no scaling

    Only meant as a reference for :func:`mat_exp` in tests and checks.
    """
    if terms < 1:
        raise InvalidParameterError(f"terms must be at least 1, got {terms}")

    a = X.entries
    result = np.eye(X.dim, dtype=np.complex128)
    term = np.eye(X.dim, dtype=np.complex128)
    for k in range(1, terms + 1):
        term = term @ a / k
        result = result + term
    return Matrix(result)
