"""
Random walk along two horocycles: (I + (t/n)A_{x_0})···(I + (t/n)A_{x_{n-1}}) acting on i

A_1 and A_2 generate the unipotent flows z -> z + s and z -> z / (sz + 1). Under a
measure with cylinder masses mu1, mu2 the product converges to exp(t[[0, mu1], [mu2, 0]]).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from hyperwalk.geometry import DiscPoint, cayley_to_disc, mobius_apply
from matcore import Matrix, mat_norm
from renorm import ordered_product, product
from sequences import MatrixSequence, MeasureParams, SymbolStream, materialize
from utils.error_handling import InvalidParameterError

logger = logging.getLogger(__name__)

A1 = Matrix.from_rows([[0, 1], [0, 0]])
A2 = Matrix.from_rows([[0, 0], [1, 0]])
HOROCYCLE_TABLE = {1: A1, 2: A2}

PATH_POINT_CAP = 2000


@dataclass(frozen=True)
class WalkSpec:
    """Everything a walk experiment needs"""

    measure: MeasureParams
    stream: SymbolStream
    t_grid: Tuple[float, ...]
    n: int
    base_point: complex = 1j

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError(f"n must be at least 1, got {self.n}")
        if self.stream.alphabet_size > 2:
            raise InvalidParameterError("the walk is driven by symbols 1 and 2 only")
        if not all(math.isfinite(t) for t in self.t_grid):
            raise InvalidParameterError("t_grid values must be finite")
        if complex(self.base_point).imag <= 0:
            raise InvalidParameterError(
                f"base point must lie in the upper half-plane, got {self.base_point!r}"
            )


@dataclass(frozen=True)
class TrajectoryPoint:
    """Disc endpoint of the walk at time t and the subsampled path leading to it"""

    t: float
    endpoint: DiscPoint
    indices: Tuple[int, ...]
    path: Tuple[DiscPoint, ...]


def closed_form_limit(m: MeasureParams, t: float) -> Matrix:
    """
    exp(t * [[0, mu1], [mu2, 0]])

    The generator squares to mu1 * mu2 * I, so with r = sqrt(mu1 * mu2) the exponential
    is cosh(tr) I + sinh(tr)/r times the generator; for mu1 * mu2 = 0 it is I + tM.
    """
    if not math.isfinite(t):
        raise InvalidParameterError(f"t must be finite, got {t}")
    product_of_masses = m.mu1 * m.mu2
    if product_of_masses == 0:
        return Matrix.from_rows([[1.0, t * m.mu1], [t * m.mu2, 1.0]])
    r = math.sqrt(product_of_masses)
    c = math.cosh(t * r)
    s = math.sinh(t * r) / r
    return Matrix.from_rows([[c, m.mu1 * s], [m.mu2 * s, c]])


def reciprocal_rate_limit(m: MeasureParams, t: float) -> Matrix:
    """
    Alternative closed form with hyperbolic argument t / sqrt(mu1 * mu2)

    Only exists to show that it disagrees with the exponential, e.g. it gives
    cosh(2t) instead of cosh(t/2) for the symmetric measure.
    """
    if m.mu1 * m.mu2 == 0:
        raise InvalidParameterError("the reciprocal-rate form is undefined for mu1 * mu2 = 0")
    r = math.sqrt(m.mu1 * m.mu2)
    c = math.cosh(t / r)
    s = math.sinh(t / r)
    return Matrix.from_rows(
        [[c, math.sqrt(m.mu2 / m.mu1) * s], [math.sqrt(m.mu1 / m.mu2) * s, c]]
    )


def walk_sequence(spec: WalkSpec) -> MatrixSequence:
    return MatrixSequence.from_stream(spec.stream, HOROCYCLE_TABLE)


def walk_product(spec: WalkSpec, t: float) -> Matrix:
    """The renormalized product of the walk at time t"""
    return product(walk_sequence(spec), spec.n, t).value


def path_indices(n: int, cap: int = PATH_POINT_CAP) -> np.ndarray:
    """At most ``cap`` evenly spread indices of 0..n, always including 0 and n"""
    if n + 1 <= cap:
        return np.arange(n + 1)
    return np.unique(np.round(np.linspace(0, n, cap)).astype(np.int64))


def _trajectory_at(
    shared: MatrixSequence, terms: np.ndarray, spec: WalkSpec, t: float
) -> TrajectoryPoint:
    indices = path_indices(spec.n)
    factors = np.eye(2, dtype=np.complex128) + (t / spec.n) * terms
    partial = np.eye(2, dtype=np.complex128)
    path = [cayley_to_disc(spec.base_point)]
    for a, b in zip(indices[:-1], indices[1:]):
        partial = partial @ ordered_product(factors[a:b])
        path.append(cayley_to_disc(mobius_apply(Matrix(partial), spec.base_point)))

    limit = product(shared, spec.n, t).value
    endpoint = cayley_to_disc(mobius_apply(limit, spec.base_point))
    return TrajectoryPoint(float(t), endpoint, tuple(int(k) for k in indices), tuple(path))


def trajectory(spec: WalkSpec, workers: int = 1) -> List[TrajectoryPoint]:
    """
    Disc trajectories of the walk for every t of the grid

    The symbols are materialized once and shared by all t.
    """
    shared = MatrixSequence.from_stream(materialize(spec.stream, spec.n), HOROCYCLE_TABLE)
    terms = shared.values(spec.n)

    def run(t: float) -> TrajectoryPoint:
        return _trajectory_at(shared, terms, spec, t)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            points = list(executor.map(run, spec.t_grid))
    else:
        points = [run(t) for t in spec.t_grid]

    logger.debug("Trajectories for %d values of t, n=%d", len(points), spec.n)
    return points


def conjugate_check(t: float) -> Tuple[Matrix, Matrix, float]:
    """
    Rotating diag(e^{t/2}, e^{-t/2}) by pi/4 against the symmetric closed form

    Returns:
        (R D R^-1, closed form for mu1 = mu2 = 1/2, Frobenius distance)
    """
    c = s = 1.0 / math.sqrt(2.0)
    R = Matrix.from_rows([[c, -s], [s, c]])
    R_inverse = Matrix(np.linalg.inv(R.entries))
    D = Matrix.from_rows([[math.exp(t / 2), 0.0], [0.0, math.exp(-t / 2)]])
    rotated = R @ D @ R_inverse
    closed = closed_form_limit(MeasureParams(0.5, 0.5), t)
    return rotated, closed, mat_norm(rotated - closed)


def geodesic_limit_point(t: float, measure: Optional[MeasureParams] = None) -> DiscPoint:
    """Disc image of i under the closed-form limit; on the vertical diameter when symmetric"""
    measure = measure or MeasureParams(0.5, 0.5)
    return cayley_to_disc(mobius_apply(closed_form_limit(measure, t), 1j))
