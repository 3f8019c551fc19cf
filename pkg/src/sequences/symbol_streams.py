"""
Symbolic sequences over a finite alphabet {1, ..., m}

Streams are immutable parameter objects. Periodic, Bernoulli, rotation and buffer
streams are random access: the symbol at index k is a pure function of the parameters,
the seed and k. Markov streams are sequential and must be materialized into a buffer
before being shared between threads.
"""

import bisect
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from utils.error_handling import AccessModeError, EmitError, InvalidParameterError

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-12
MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class StreamModel(Enum):
    PERIODIC = "periodic"
    BERNOULLI = "bernoulli"
    MARKOV = "markov"
    ROTATION = "rotation"
    BUFFER = "buffer"


class AccessMode(Enum):
    RANDOM_ACCESS = "random_access"
    SEQUENTIAL = "sequential"


def _mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer on a uint64 array (wrapping arithmetic)"""
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def counter_bits(seed: int, indices: np.ndarray) -> np.ndarray:
    """
    64 random bits for each counter value, a pure function of (seed, k)

    The k-th output is the SplitMix64 finalizer of key + (k + 1) * gamma with
    key = mix(seed + gamma), so any index range can be generated independently.
    """
    if seed < 0 or seed > MASK64:
        raise InvalidParameterError(f"seed must fit in 64 unsigned bits, got {seed}")
    with np.errstate(over="ignore"):
        key = _mix64(np.array([(seed + GOLDEN_GAMMA) & MASK64], dtype=np.uint64))[0]
        counters = np.asarray(indices, dtype=np.uint64) + np.uint64(1)
        return _mix64(key + counters * np.uint64(GOLDEN_GAMMA))


def counter_uniforms(seed: int, indices: np.ndarray) -> np.ndarray:
    """Doubles in [0, 1) built from the top 53 counter bits"""
    bits = counter_bits(seed, indices)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def _check_distribution(values: Sequence[float], what: str) -> Tuple[float, ...]:
    probs = tuple(float(p) for p in values)
    if len(probs) < 1 or any(not np.isfinite(p) or p < 0 for p in probs):
        raise InvalidParameterError(f"{what} must be nonnegative finite numbers")
    if abs(sum(probs) - 1.0) > SUM_TOLERANCE:
        raise InvalidParameterError(
            f"{what} must sum to 1 within {SUM_TOLERANCE}, got {sum(probs)!r}"
        )
    return probs


@dataclass(frozen=True, eq=False)
class SymbolStream:
    """A sequence over {1, ..., alphabet_size}; build it with the class constructors"""

    model: StreamModel
    alphabet_size: int
    pattern: Tuple[int, ...] = ()
    probabilities: Tuple[float, ...] = ()
    transition: Tuple[Tuple[float, ...], ...] = ()
    initial: Tuple[float, ...] = ()
    seed: Optional[int] = None
    theta: float = 0.0
    beta: float = 0.0
    buffer: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def access_mode(self) -> AccessMode:
        if self.model is StreamModel.MARKOV:
            return AccessMode.SEQUENTIAL
        return AccessMode.RANDOM_ACCESS

    @property
    def is_stochastic(self) -> bool:
        return self.model in (StreamModel.BERNOULLI, StreamModel.MARKOV)

    @property
    def length(self) -> Optional[int]:
        """Number of available symbols, None for infinite streams"""
        return None if self.buffer is None else int(self.buffer.shape[0])

    @classmethod
    def periodic(cls, pattern: Sequence[int]) -> "SymbolStream":
        symbols = tuple(int(s) for s in pattern)
        if not symbols or min(symbols) < 1:
            raise InvalidParameterError("pattern must be nonempty with symbols >= 1")
        return cls(StreamModel.PERIODIC, max(symbols), pattern=symbols)

    @classmethod
    def bernoulli(cls, probabilities: Sequence[float], seed: int) -> "SymbolStream":
        probs = _check_distribution(probabilities, "probabilities")
        if len(probs) < 2:
            raise InvalidParameterError("a Bernoulli stream needs at least two symbols")
        return cls(StreamModel.BERNOULLI, len(probs), probabilities=probs, seed=int(seed))

    @classmethod
    def markov(
        cls, transition: Sequence[Sequence[float]], initial: Sequence[float], seed: int
    ) -> "SymbolStream":
        rows = tuple(
            _check_distribution(row, f"transition row {i}") for i, row in enumerate(transition)
        )
        m = len(rows)
        if m < 2 or any(len(row) != m for row in rows):
            raise InvalidParameterError("transition must be a square matrix of size >= 2")
        start = _check_distribution(initial, "initial distribution")
        if len(start) != m:
            raise InvalidParameterError("initial distribution length must match transition")
        return cls(StreamModel.MARKOV, m, transition=rows, initial=start, seed=int(seed))

    @classmethod
    def rotation(cls, theta: float, beta: float) -> "SymbolStream":
        if not (0 < theta < 1 and 0 < beta < 1):
            raise InvalidParameterError("rotation needs theta and beta in (0, 1)")
        return cls(StreamModel.ROTATION, 2, theta=float(theta), beta=float(beta))

    @classmethod
    def from_buffer(
        cls, symbols: Sequence[int], alphabet_size: Optional[int] = None
    ) -> "SymbolStream":
        array = np.array(symbols, dtype=np.int64)
        if array.ndim != 1 or array.size == 0:
            raise InvalidParameterError("a symbol buffer must be a nonempty 1-d sequence")
        if array.min() < 1:
            raise InvalidParameterError("symbols start at 1")
        size = int(alphabet_size or array.max())
        if array.max() > size:
            raise InvalidParameterError("buffer holds symbols outside the alphabet")
        array.setflags(write=False)
        return cls(StreamModel.BUFFER, size, buffer=array)


def _random_access_symbols(s: SymbolStream, indices: np.ndarray) -> np.ndarray:
    if s.model is StreamModel.PERIODIC:
        pattern = np.array(s.pattern, dtype=np.int64)
        return pattern[indices % pattern.size]

    if s.model is StreamModel.BERNOULLI:
        cumulative = np.cumsum(s.probabilities)
        u = counter_uniforms(s.seed, indices)
        chosen = np.searchsorted(cumulative, u, side="right")
        return np.minimum(chosen, s.alphabet_size - 1).astype(np.int64) + 1

    if s.model is StreamModel.ROTATION:
        phase = np.mod(indices.astype(np.float64) * s.theta, 1.0)
        return np.where(phase < s.beta, 1, 2).astype(np.int64)

    if s.model is StreamModel.BUFFER:
        if indices.size and int(indices.max()) >= s.buffer.shape[0]:
            raise AccessModeError(
                f"index {int(indices.max())} is beyond the buffer of length "
                f"{s.buffer.shape[0]}"
            )
        return s.buffer[indices]

    raise AccessModeError(f"{s.model.value} streams are sequential only")


def stream_at(s: SymbolStream, k: int) -> int:
    """
    Symbol at index k of a random-access stream

    Raises:
        AccessModeError: for sequential (markov) streams
    """
    if s.access_mode is not AccessMode.RANDOM_ACCESS:
        raise AccessModeError(
            f"stream_at is not available on {s.model.value} streams",
            context={"model": s.model.value},
        )
    if k < 0:
        raise InvalidParameterError(f"index must be nonnegative, got {k}")
    return int(_random_access_symbols(s, np.array([k], dtype=np.int64))[0])


def stream_slice(s: SymbolStream, start: int, stop: int) -> np.ndarray:
    """Symbols at indices start..stop-1 of a random-access stream"""
    if s.access_mode is not AccessMode.RANDOM_ACCESS:
        raise AccessModeError(f"stream_slice is not available on {s.model.value} streams")
    if start < 0 or stop < start:
        raise InvalidParameterError(f"invalid index range [{start}, {stop})")
    return _random_access_symbols(s, np.arange(start, stop, dtype=np.int64))


def _markov_take(s: SymbolStream, n: int) -> np.ndarray:
    cumulative_rows = [np.cumsum(row).tolist() for row in s.transition]
    last = s.alphabet_size - 1
    u = counter_uniforms(s.seed, np.arange(n, dtype=np.int64)).tolist()
    out = np.empty(n, dtype=np.int64)
    state = -1
    initial = np.cumsum(s.initial).tolist()
    for k in range(n):
        weights = initial if state < 0 else cumulative_rows[state]
        state = min(bisect.bisect_right(weights, u[k]), last)
        out[k] = state + 1
    return out


def stream_take(s: SymbolStream, n: int) -> np.ndarray:
    """First n symbols; Markov chains are advanced sequentially from the seed"""
    if n < 0:
        raise InvalidParameterError(f"n must be nonnegative, got {n}")
    if s.model is StreamModel.MARKOV:
        return _markov_take(s, n)
    return stream_slice(s, 0, n)


def materialize(s: SymbolStream, n: int) -> SymbolStream:
    """Freeze the first n symbols into an immutable, shareable buffer stream"""
    if n < 1:
        raise InvalidParameterError(f"n must be positive, got {n}")
    if s.model is StreamModel.BUFFER and s.length >= n:
        return s
    logger.debug("Materializing %d symbols of a %s stream", n, s.model.value)
    return SymbolStream.from_buffer(stream_take(s, n), s.alphabet_size)


CESARO_DOUBLINGS = 52


def stationary_distribution(
    transition: Sequence[Sequence[float]], initial: Optional[Sequence[float]] = None
) -> np.ndarray:
    """
    Limiting symbol frequencies of a Markov chain started from ``initial``

    This is the Cesàro limit of initial·P^k, so reducible chains keep the mass of the
    class they start in and periodic chains average over their cycle. Without an initial
    distribution the chain starts uniformly.
    """
    P = np.asarray(transition, dtype=np.float64)
    m = P.shape[0]
    start = np.full(m, 1.0 / m) if initial is None else np.asarray(initial, dtype=np.float64)
    # average of P^0 .. P^(N-1) for N = 2**CESARO_DOUBLINGS
    average = np.eye(m)
    power = P.copy()
    for _ in range(CESARO_DOUBLINGS):
        average = 0.5 * (average + average @ power)
        power = power @ power
        power /= power.sum(axis=1, keepdims=True)
    pi = start @ average
    return pi / pi.sum()


def symbol_frequencies(s: SymbolStream) -> np.ndarray:
    """Limiting frequency of each symbol (the cylinder masses of the stream's measure)"""
    if s.model is StreamModel.PERIODIC:
        counts = np.bincount(np.array(s.pattern), minlength=s.alphabet_size + 1)[1:]
        return counts / len(s.pattern)
    if s.model is StreamModel.BERNOULLI:
        return np.array(s.probabilities)
    if s.model is StreamModel.MARKOV:
        return stationary_distribution(s.transition, s.initial)
    if s.model is StreamModel.ROTATION:
        return np.array([s.beta, 1.0 - s.beta])
    counts = np.bincount(s.buffer, minlength=s.alphabet_size + 1)[1:]
    return counts / s.buffer.shape[0]


def write_symbol_file(path: Union[str, Path], symbols: Sequence[int]) -> Path:
    """Export symbols one per line"""
    target = Path(path)
    if len(symbols) == 0:
        raise EmitError(f"Refusing to write an empty symbol file: {target}")
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write("\n".join(str(int(s)) for s in symbols))
            f.write("\n")
    except OSError as e:
        raise EmitError(f"Could not write symbol file {target}: {e}") from e
    return target


def read_symbol_file(path: Union[str, Path]) -> SymbolStream:
    """Import a one-symbol-per-line file as a buffer stream"""
    source = Path(path)
    try:
        with open(source, "r", encoding="utf-8") as f:
            symbols = [int(line) for line in f if line.strip()]
    except OSError as e:
        raise InvalidParameterError(f"Could not read symbol file {source}: {e}") from e
    except ValueError as e:
        raise InvalidParameterError(f"Malformed symbol in {source}: {e}") from e
    return SymbolStream.from_buffer(symbols)
