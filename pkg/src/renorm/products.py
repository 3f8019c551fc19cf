"""
Renormalized products (I + (t/n)A_0)···(I + (t/n)A_{n-1}) and the scalar case
"""

import cmath
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from matcore import Matrix, as_complex
from sequences import MatrixSequence, periodic_values
from sequences.matrix_sequences import DEFAULT_CHUNK
from utils.error_handling import DimensionMismatchError, InvalidParameterError

logger = logging.getLogger(__name__)

STRATEGIES = ("blocked", "sequential")


@dataclass(frozen=True)
class ProductResult:
    """Pi_n(t) together with the Cesàro mean and empirical alpha from the same pass"""

    n: int
    t: complex
    value: Matrix
    cesaro: Matrix
    alpha_hat: float

    def __post_init__(self) -> None:
        if self.value.dim != self.cesaro.dim:
            raise DimensionMismatchError("product and Cesàro mean dimensions differ")
        if self.alpha_hat < 0:
            raise InvalidParameterError("alpha_hat must be nonnegative")


def ordered_product(stack: np.ndarray) -> np.ndarray:
    """
    Product M_0 M_1 ... M_{m-1} of an (m, d, d) stack

    Neighbours are multiplied pairwise level by level, which keeps the left-to-right
    order and needs only log2(m) batched matmuls.
    """
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise DimensionMismatchError(f"expected an (m, d, d) stack, got {stack.shape}")
    if stack.shape[0] == 0:
        return np.eye(stack.shape[1], dtype=np.complex128)
    while stack.shape[0] > 1:
        if stack.shape[0] % 2:
            stack = np.concatenate([stack[:-1:2] @ stack[1::2], stack[-1:]])
        else:
            stack = stack[0::2] @ stack[1::2]
    return stack[0]


def _sequential_product(factors: np.ndarray) -> np.ndarray:
    value = np.eye(factors.shape[1], dtype=np.complex128)
    for factor in factors:
        value = value @ factor
    return value


def _chunk_stats(
    terms: np.ndarray, scale: complex, strategy: str
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Chunk product, term sum and running norm sums of one chunk"""
    factors = np.eye(terms.shape[1], dtype=np.complex128) + scale * terms
    if strategy == "sequential":
        chunk_value = _sequential_product(factors)
    else:
        chunk_value = ordered_product(factors)
    norm_sums = np.cumsum(np.linalg.norm(terms, axis=(1, 2)))
    return chunk_value, terms.sum(axis=0), norm_sums


def product(
    seq: MatrixSequence,
    n: int,
    t: complex,
    strategy: str = "blocked",
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> ProductResult:
    """
    Renormalized product over exactly n factors, indices 0..n-1

    Args:
        seq: Source of A_0, A_1, ...
        n: Number of factors, at least 1
        t: Complex time parameter
        strategy: ``blocked`` or ``sequential``. ``blocked`` keeps the factor order but
            re-associates the multiplications inside a chunk as a pairwise tree, so it
            agrees with ``sequential``, the strict left-to-right loop, up to rounding
        chunk_size: Terms generated and reduced at a time
        workers: Threads computing chunk products; chunks are still combined in order

    Raises:
        InvalidParameterError: n < 1 or unknown strategy
    """
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    if strategy not in STRATEGIES:
        raise InvalidParameterError(f"Unknown product strategy: {strategy}")
    if workers < 1:
        raise InvalidParameterError(f"workers must be positive, got {workers}")

    t = as_complex(t)
    scale = t / n

    if workers > 1:
        shared = seq.materialized(n)
        starts = list(range(0, n, chunk_size))

        def run_chunk(start: int):
            terms = shared.block(start, min(start + chunk_size, n))
            return _chunk_stats(terms, scale, strategy)

        with ThreadPoolExecutor(max_workers=workers) as executor:
            chunk_results = list(executor.map(run_chunk, starts))
    else:
        chunk_results = (
            _chunk_stats(terms, scale, strategy)
            for _, terms in seq.iter_blocks(n, chunk_size)
        )

    value = np.eye(seq.dim, dtype=np.complex128)
    total = np.zeros((seq.dim, seq.dim), dtype=np.complex128)
    alpha_hat = 0.0
    running = 0.0
    seen = 0
    for chunk_value, chunk_sum, norm_sums in chunk_results:
        value = value @ chunk_value
        total += chunk_sum
        counts = np.arange(seen + 1, seen + norm_sums.size + 1)
        alpha_hat = max(alpha_hat, float(np.max((running + norm_sums) / counts)))
        running += float(norm_sums[-1])
        seen += norm_sums.size

    logger.debug("Product over n=%d at t=%s (%s, %d workers)", n, t, strategy, workers)
    return ProductResult(n, t, Matrix(value), Matrix(total / n), alpha_hat)


def scalar_product(u: Sequence[complex], n: int) -> complex:
    """Product of (1 + u_k/n) for k < n, with u holding at least n terms"""
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    values = np.asarray(u, dtype=np.complex128)
    if values.size < n:
        raise InvalidParameterError(f"need {n} terms of u, got {values.size}")
    return complex(np.prod(1.0 + values[:n] / n))


def scalar_limit(pattern: Sequence[complex]) -> complex:
    """exp(l) for the mean l of a periodic scalar pattern"""
    return cmath.exp(complex(np.mean(np.asarray(pattern, dtype=np.complex128))))


def scalar_error_bound(pattern: Sequence[complex], n: int) -> float:
    """
    Second-order bound on |scalar_product - exp(l)| for a periodic pattern with mean l

    1.5 * |e^l| * (mean|u|^2 / (2n) + |l_n - l|) where l_n is the mean of the first n
    terms; the last term vanishes when n is a multiple of the period, and the bound is
    1.5 * e / (2n) for u = 1.
    """
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    values = periodic_values(pattern, n)
    limit = complex(np.mean(np.asarray(pattern, dtype=np.complex128)))
    partial_gap = abs(complex(values.mean()) - limit)
    second_order = float(np.mean(np.abs(values) ** 2)) / (2 * n)
    return 1.5 * abs(cmath.exp(limit)) * (second_order + partial_gap)
