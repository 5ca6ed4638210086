import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rindler_corr.exception import InvalidParameterError
from rindler_corr.model._state import DensityMatrix

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MeasurementDirection:
    """
    A point on the Bloch sphere selecting the projective measurement
    Π_±(x) = ½(1 ± x·σ) on a qubit.

    ``theta`` is the polar angle in [0, π] and ``phi`` the azimuth in
    [0, 2π).
    """

    theta: float
    phi: float

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise InvalidParameterError("measurement angles must be finite")
        if not 0.0 <= theta <= math.pi:
            raise InvalidParameterError(f"theta={theta!r} outside [0, pi]")
        if not 0.0 <= phi < _TWO_PI:
            raise InvalidParameterError(f"phi={phi!r} outside [0, 2pi)")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def canonical(cls, theta: float, phi: float) -> "MeasurementDirection":
        """
        Maps arbitrary angles, as produced by an unconstrained optimizer,
        to the same point of the sphere in canonical ranges.
        """
        return cls.from_vector(_vector(theta, phi))

    @classmethod
    def from_vector(cls, v: ArrayLike) -> "MeasurementDirection":
        x, y, z = np.asarray(v, dtype=np.float64)
        norm = math.sqrt(x * x + y * y + z * z)
        if norm == 0.0:
            raise InvalidParameterError("zero vector has no direction")
        theta = math.acos(min(1.0, max(-1.0, z / norm)))
        phi = math.atan2(y, x) % _TWO_PI if (x or y) else 0.0
        # atan2 can round a tiny negative angle up to exactly 2π
        if phi >= _TWO_PI:
            phi = 0.0
        return cls(theta, phi)

    @property
    def vector(self) -> NDArray[np.float64]:
        return _vector(self.theta, self.phi)

    def antipode(self) -> "MeasurementDirection":
        return MeasurementDirection.from_vector(-self.vector)

    def reflected(self) -> "MeasurementDirection":
        """The azimuthal reflection φ → −φ."""
        phi = (-self.phi) % _TWO_PI
        return MeasurementDirection(self.theta, 0.0 if phi >= _TWO_PI else phi)


def _vector(theta: float, phi: float) -> NDArray[np.float64]:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """
    One outcome of a two-outcome measurement on Alice's qubit.

    ``post_state`` is the normalized conditional state of the unmeasured
    factor; it is None for an outcome whose probability is below the
    norm tolerance, whose entropy contribution is then zero.
    """

    probability: float
    post_state: Optional[DensityMatrix]

    @property
    def degenerate(self) -> bool:
        return self.post_state is None
