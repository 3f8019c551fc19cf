"""
Dense complex matrices and their arithmetic
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np

from utils.error_handling import DimensionMismatchError, InvalidParameterError

Scalar = Union[int, float, complex]


class NormKind(Enum):
    """Matrix norms; frobenius is the default everywhere"""

    FROBENIUS = "frobenius"
    MAX_ABS_ENTRY = "max_abs_entry"


def as_complex(value: Any) -> complex:
    """Read a complex scalar written as a number or an ``(re, im)`` pair"""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise InvalidParameterError(f"Complex pair must have two fields: {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


@dataclass(frozen=True, eq=False)
class Matrix:
    """Immutable d×d complex matrix backed by a read-only complex128 array"""

    entries: np.ndarray

    def __post_init__(self) -> None:
        array = np.array(self.entries, dtype=np.complex128, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionMismatchError(
                f"Matrix entries must be square, got shape {array.shape}",
                context={"shape": array.shape},
            )
        if array.shape[0] < 1:
            raise DimensionMismatchError("Matrix dimension must be at least 1")
        if not np.all(np.isfinite(array)):
            raise InvalidParameterError("Matrix entries must be finite")
        array.setflags(write=False)
        object.__setattr__(self, "entries", array)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "Matrix":
        """Build from rows whose entries are numbers or ``[re, im]`` pairs"""
        try:
            return cls(np.array([[as_complex(x) for x in row] for row in rows]))
        except TypeError as e:
            raise InvalidParameterError(f"Unreadable matrix rows: {e}") from e

    @classmethod
    def zeros(cls, d: int) -> "Matrix":
        return cls(np.zeros((d, d), dtype=np.complex128))

    def __add__(self, other: "Matrix") -> "Matrix":
        return mat_add(self, other)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return mat_sub(self, other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __mul__(self, c: Scalar) -> "Matrix":
        return mat_scale(c, self)

    __rmul__ = __mul__

    def __neg__(self) -> "Matrix":
        return mat_scale(-1, self)

    def allclose(self, other: "Matrix", atol: float = 1e-12) -> bool:
        """True when the frobenius distance is at most ``atol``"""
        return mat_norm(mat_sub(self, other)) <= atol

    def __repr__(self) -> str:
        return f"Matrix(dim={self.dim}, entries={self.entries.tolist()!r})"


def _check_same_dim(X: Matrix, Y: Matrix, op: str) -> None:
    if X.dim != Y.dim:
        raise DimensionMismatchError(
            f"{op}: dimension mismatch {X.dim} vs {Y.dim}",
            context={"op": op, "left": X.dim, "right": Y.dim},
        )


def identity(d: int) -> Matrix:
    """The d×d identity"""
    if d < 1:
        raise InvalidParameterError(f"Dimension must be positive, got {d}")
    return Matrix(np.eye(d, dtype=np.complex128))


def mat_add(X: Matrix, Y: Matrix) -> Matrix:
    _check_same_dim(X, Y, "mat_add")
    return Matrix(X.entries + Y.entries)


def mat_sub(X: Matrix, Y: Matrix) -> Matrix:
    _check_same_dim(X, Y, "mat_sub")
    return Matrix(X.entries - Y.entries)


def mat_mul(X: Matrix, Y: Matrix) -> Matrix:
    _check_same_dim(X, Y, "mat_mul")
    return Matrix(X.entries @ Y.entries)


def mat_scale(c: Scalar, X: Matrix) -> Matrix:
    return Matrix(complex(c) * X.entries)


def mat_power(X: Matrix, p: int) -> Matrix:
    """X^p by repeated squaring"""
    if p < 0:
        raise InvalidParameterError(f"Power must be nonnegative, got {p}")
    return Matrix(np.linalg.matrix_power(X.entries, p))


def mat_det(X: Matrix) -> complex:
    return complex(np.linalg.det(X.entries))


def mat_norm(X: Matrix, kind: NormKind = NormKind.FROBENIUS) -> float:
    """
    Norm of a matrix

    Args:
        X: Matrix to measure
        kind: FROBENIUS (sqrt of the sum of squared moduli) or MAX_ABS_ENTRY
    """
    if kind is NormKind.FROBENIUS:
        return float(np.linalg.norm(X.entries, "fro"))
    if kind is NormKind.MAX_ABS_ENTRY:
        return float(np.max(np.abs(X.entries)))
    raise InvalidParameterError(f"Unknown norm kind: {kind!r}")


def matrix_to_rows(X: Matrix) -> List[Tuple[float, float]]:
    """Row-major (re, im) pairs, the CSV serialization of a matrix"""
    return [(float(z.real), float(z.imag)) for z in X.entries.ravel()]


def matrix_from_pairs(pairs: Iterable[Tuple[float, float]], d: int) -> Matrix:
    """Inverse of :func:`matrix_to_rows`"""
    values = [complex(re, im) for re, im in pairs]
    if len(values) != d * d:
        raise DimensionMismatchError(
            f"Expected {d * d} entries for a {d}x{d} matrix, got {len(values)}"
        )
    return Matrix(np.array(values).reshape(d, d))
