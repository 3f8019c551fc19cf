"""
Weighted Cesàro averages (1/n) * sum g(l/n) u_l and their limit L * integral of g
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from numpy.polynomial import Chebyshev

from matcore import Matrix
from sequences import MatrixSequence
from utils.error_handling import InvalidParameterError

logger = logging.getLogger(__name__)

MAX_FIT_DEGREE = 16
UNIT_INTERVAL = [0.0, 1.0]

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class WeightFunction:
    """
    A C¹ weight g on [0, 1]

    ``monomial(k)`` is x**k. ``tabulated(samples)`` is the least-squares Chebyshev fit
    of degree at most 16 through the samples, a polynomial and hence smooth.
    """

    kind: str
    degree: int
    fit: Optional[Chebyshev] = None

    @classmethod
    def monomial(cls, k: int) -> "WeightFunction":
        if k < 0 or int(k) != k:
            raise InvalidParameterError(f"monomial degree must be a nonnegative int, got {k}")
        return cls("monomial", int(k))

    @classmethod
    def tabulated(
        cls, samples: Sequence[float], points: Optional[Sequence[float]] = None
    ) -> "WeightFunction":
        """
        Fit tabulated values of g

        Args:
            samples: Values of g
            points: Abscissas in [0, 1]; a uniform grid including both ends by default
        """
        values = np.asarray(samples, dtype=np.float64)
        if values.ndim != 1 or values.size < 2:
            raise InvalidParameterError("tabulated weights need at least two samples")
        xs = (
            np.linspace(0.0, 1.0, values.size)
            if points is None
            else np.asarray(points, dtype=np.float64)
        )
        if xs.shape != values.shape:
            raise InvalidParameterError("sample points and values differ in length")
        if xs.min() < 0.0 or xs.max() > 1.0:
            raise InvalidParameterError("sample points must lie in [0, 1]")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("sample values must be finite")
        degree = min(MAX_FIT_DEGREE, values.size - 1)
        fit = Chebyshev.fit(xs, values, degree, domain=UNIT_INTERVAL)
        return cls("tabulated", degree, fit)

    def __call__(self, x: ArrayLike) -> ArrayLike:
        if self.fit is not None:
            return self.fit(x)
        return np.power(x, self.degree)

    def integral(self) -> float:
        """Integral of g over [0, 1]"""
        if self.fit is not None:
            antiderivative = self.fit.integ()
            return float(antiderivative(1.0) - antiderivative(0.0))
        return 1.0 / (self.degree + 1)


def _weights(g: WeightFunction, n: int) -> np.ndarray:
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    return np.asarray(g(np.arange(n, dtype=np.float64) / n), dtype=np.float64)


def weighted_average(u: MatrixSequence, g: WeightFunction, n: int) -> Matrix:
    """(1/n) * sum over l < n of g(l/n) u_l"""
    weights = _weights(g, n)
    total = np.zeros((u.dim, u.dim), dtype=np.complex128)
    for start, terms in u.iter_blocks(n):
        total += np.tensordot(weights[start : start + terms.shape[0]], terms, axes=1)
    return Matrix(total / n)


def weighted_average_abel(u: MatrixSequence, g: WeightFunction, n: int) -> Matrix:
    """
    The weighted average through summation by parts

    With partial sums S_m = u_0 + ... + u_{m-1} and g_l = g(l/n):
    sum g_l u_l = g_{n-1} S_n - sum over l < n-1 of (g_{l+1} - g_l) S_{l+1}.
    """
    weights = _weights(g, n)
    partial = np.cumsum(u.values(n), axis=0)
    total = weights[-1] * partial[-1] - np.tensordot(np.diff(weights), partial[:-1], axes=1)
    return Matrix(total / n)


def weighted_limit(L: Matrix, g: WeightFunction) -> Matrix:
    """L * integral of g over [0, 1]"""
    return L * g.integral()
