"""
Matrix sequences A_0, A_1, ... and their Cesàro statistics
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from matcore import Matrix
from sequences.symbol_streams import (
    SUM_TOLERANCE,
    AccessMode,
    SymbolStream,
    materialize,
    stream_slice,
    stream_take,
    symbol_frequencies,
)
from utils.error_handling import (
    AccessModeError,
    DimensionMismatchError,
    InvalidParameterError,
)

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 65536


@dataclass(frozen=True)
class MeasureParams:
    """Cylinder masses mu([1]) and mu([2]) of a measure on two-symbol sequences"""

    mu1: float
    mu2: float

    def __post_init__(self) -> None:
        for name, value in (("mu1", self.mu1), ("mu2", self.mu2)):
            if not 0.0 <= value <= 1.0:
                raise InvalidParameterError(f"{name} must lie in [0, 1], got {value}")
        if abs(self.mu1 + self.mu2 - 1.0) > SUM_TOLERANCE:
            raise InvalidParameterError(
                f"mu1 + mu2 must equal 1, got {self.mu1 + self.mu2!r}"
            )

    @classmethod
    def from_mu1(cls, mu1: float) -> "MeasureParams":
        return cls(float(mu1), 1.0 - float(mu1))


@dataclass(frozen=True, eq=False)
class MatrixSequence:
    """
    Source of A_0, A_1, ...

    Either an explicit list of matrices (optionally repeated cyclically) or a symbol
    stream composed with a symbol -> matrix table. Matrices are held as one read-only
    (count, d, d) complex128 stack, the table indexed by symbol - 1.
    """

    dim: int
    stack: np.ndarray = field(repr=False)
    stream: Optional[SymbolStream] = None
    cyclic: bool = False

    @classmethod
    def from_matrices(
        cls, matrices: Sequence[Matrix], cyclic: bool = False
    ) -> "MatrixSequence":
        if not matrices:
            raise InvalidParameterError("an explicit sequence needs at least one matrix")
        dim = matrices[0].dim
        if any(m.dim != dim for m in matrices):
            raise DimensionMismatchError("all matrices of a sequence must share one dimension")
        stack = np.stack([m.entries for m in matrices])
        stack.setflags(write=False)
        return cls(dim, stack, cyclic=cyclic)

    @classmethod
    def constant(cls, M: Matrix) -> "MatrixSequence":
        return cls.from_matrices([M], cyclic=True)

    @classmethod
    def from_stream(
        cls, stream: SymbolStream, table: Mapping[int, Matrix]
    ) -> "MatrixSequence":
        """
        Compose a symbol stream with a symbol table

        Raises:
            InvalidParameterError: a symbol of the alphabet has no matrix
            DimensionMismatchError: table matrices differ in dimension
        """
        missing = [s for s in range(1, stream.alphabet_size + 1) if s not in table]
        if missing:
            raise InvalidParameterError(f"symbol table has no matrix for symbols {missing}")
        ordered = [table[s] for s in range(1, stream.alphabet_size + 1)]
        dim = ordered[0].dim
        if any(m.dim != dim for m in ordered):
            raise DimensionMismatchError("all table matrices must share one dimension")
        stack = np.stack([m.entries for m in ordered])
        stack.setflags(write=False)
        return cls(dim, stack, stream=stream)

    @property
    def access_mode(self) -> AccessMode:
        if self.stream is None:
            return AccessMode.RANDOM_ACCESS
        return self.stream.access_mode

    @property
    def length(self) -> Optional[int]:
        """Number of available terms, None when unbounded"""
        if self.stream is not None:
            return self.stream.length
        return None if self.cyclic else int(self.stack.shape[0])

    def _check_available(self, stop: int) -> None:
        available = self.length
        if available is not None and stop > available:
            raise AccessModeError(
                f"sequence holds {available} terms, {stop} requested",
                context={"available": available, "requested": stop},
            )

    def symbols(self, n: int) -> np.ndarray:
        """First n driving symbols of a stream-backed sequence"""
        if self.stream is None:
            raise InvalidParameterError("explicit matrix sequences carry no symbols")
        return stream_take(self.stream, n)

    def block(self, start: int, stop: int) -> np.ndarray:
        """A_start .. A_{stop-1} as a (stop - start, d, d) array"""
        if start < 0 or stop < start:
            raise InvalidParameterError(f"invalid index range [{start}, {stop})")
        self._check_available(stop)
        if self.stream is None:
            indices = np.arange(start, stop) % self.stack.shape[0]
            return self.stack[indices]
        return self.stack[stream_slice(self.stream, start, stop) - 1]

    def values(self, n: int) -> np.ndarray:
        """First n terms as an (n, d, d) array"""
        if self.access_mode is AccessMode.SEQUENTIAL:
            self._check_available(n)
            return self.stack[stream_take(self.stream, n) - 1]
        return self.block(0, n)

    def iter_blocks(
        self, n: int, chunk: int = DEFAULT_CHUNK
    ) -> Iterator[Tuple[int, np.ndarray]]:
        """
        Yield (start, terms) over indices 0..n-1 in order, at most ``chunk`` terms each

        Sequential streams are advanced once over the whole range and then sliced.
        """
        if chunk < 1:
            raise InvalidParameterError(f"chunk must be positive, got {chunk}")
        if self.access_mode is AccessMode.SEQUENTIAL:
            terms = self.values(n)
            for start in range(0, n, chunk):
                yield start, terms[start : start + chunk]
            return
        for start in range(0, n, chunk):
            yield start, self.block(start, min(start + chunk, n))

    def materialized(self, n: int) -> "MatrixSequence":
        """Same sequence over a frozen buffer of n symbols; safe to share across threads"""
        if self.access_mode is AccessMode.RANDOM_ACCESS:
            return self
        return MatrixSequence(self.dim, self.stack, stream=materialize(self.stream, n))


def _check_count(n: int) -> None:
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")


def cesaro_mean(seq: MatrixSequence, n: int) -> Matrix:
    """(1/n) * sum of A_k for k < n"""
    _check_count(n)
    total = np.zeros((seq.dim, seq.dim), dtype=np.complex128)
    for _, terms in seq.iter_blocks(n):
        total += terms.sum(axis=0)
    return Matrix(total / n)


def mean_norm_bound(seq: MatrixSequence, n: int) -> float:
    """
    Empirical alpha: the max over 1 <= m <= n of (1/m) * sum_{k<m} ||A_k||_F
    """
    _check_count(n)
    best = 0.0
    running = 0.0
    for start, terms in seq.iter_blocks(n):
        norms = np.linalg.norm(terms, axis=(1, 2))
        partial = running + np.cumsum(norms)
        counts = np.arange(start + 1, start + norms.size + 1)
        best = max(best, float(np.max(partial / counts)))
        running = float(partial[-1])
    return best


def theoretical_mean(seq: MatrixSequence) -> Matrix:
    """
    Space average of the sequence: the matrix its Cesàro means converge to

    Weights the table by the limiting symbol frequencies of the stream (pattern counts,
    Bernoulli probabilities, the Markov limit law from the initial distribution, the
    rotation cell length or the buffer counts). Cyclic explicit lists give their cycle average.
    """
    if seq.stream is None:
        if not seq.cyclic:
            raise InvalidParameterError("a finite explicit list has no limiting mean")
        return Matrix(seq.stack.mean(axis=0))
    weights = symbol_frequencies(seq.stream)
    return Matrix(np.tensordot(weights, seq.stack, axes=1))


def measure_from_stream(stream: SymbolStream) -> MeasureParams:
    """Cylinder masses of a two-symbol stream"""
    if stream.alphabet_size > 2:
        raise InvalidParameterError(
            f"measure params need at most two symbols, got {stream.alphabet_size}"
        )
    frequencies = symbol_frequencies(stream)
    mu1 = float(frequencies[0])
    return MeasureParams(mu1, float(frequencies[1]) if frequencies.size > 1 else 1.0 - mu1)


def periodic_values(pattern: Sequence[complex], n: int) -> np.ndarray:
    """First n terms of a periodic scalar sequence"""
    if n < 0:
        raise InvalidParameterError(f"n must be nonnegative, got {n}")
    values = np.asarray(pattern, dtype=np.complex128)
    if values.ndim != 1 or values.size == 0:
        raise InvalidParameterError("scalar pattern must be a nonempty 1-d sequence")
    return values[np.arange(n) % values.size]