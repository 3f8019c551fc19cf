"""
Möbius action on the upper half-plane and the Cayley map to the Poincaré disc
"""

from dataclasses import dataclass
from typing import List, Sequence

from matcore import Matrix, identity, mat_det
from utils.error_handling import DimensionMismatchError, InvalidParameterError, PoleError

DISC_SLACK = 1e-12


@dataclass(frozen=True)
class DiscPoint:
    """A point of the closed unit disc"""

    z: complex

    def __post_init__(self) -> None:
        if abs(self.z) > 1.0 + DISC_SLACK:
            raise InvalidParameterError(f"|z| = {abs(self.z)!r} is outside the unit disc")

    @property
    def modulus(self) -> float:
        return abs(self.z)


def mobius_apply(M: Matrix, z: complex) -> complex:
    """
    (az + b) / (cz + d) for M = [[a, b], [c, d]]

    Raises:
        PoleError: cz + d = 0
        InvalidParameterError: M is singular
    """
    if M.dim != 2:
        raise DimensionMismatchError(f"Möbius maps need a 2x2 matrix, got {M.dim}x{M.dim}")
    if mat_det(M) == 0:
        raise InvalidParameterError("Möbius map of a singular matrix")
    (a, b), (c, d) = M.entries
    denominator = c * z + d
    if denominator == 0:
        raise PoleError(f"z = {z!r} is the pole of the map", context={"z": str(z)})
    return complex((a * z + b) / denominator)


def cayley_to_disc(z: complex) -> DiscPoint:
    """
    (z - i) / (z + i), sending the closed upper half-plane onto the closed disc

    Raises:
        PoleError: z = -i
        InvalidParameterError: Im(z) < 0
    """
    z = complex(z)
    if z == -1j:
        raise PoleError("the Cayley map has its pole at -i")
    if z.imag < 0:
        raise InvalidParameterError(f"Im(z) must be nonnegative, got {z!r}")
    return DiscPoint((z - 1j) / (z + 1j))


def horocycle_orbit(
    generator: Matrix, base: complex, s_values: Sequence[float]
) -> List[DiscPoint]:
    """Disc images of (I + s * generator) acting on base, one per s"""
    unit = identity(generator.dim)
    return [cayley_to_disc(mobius_apply(unit + generator * s, base)) for s in s_values]
