import math
from dataclasses import dataclass
from typing import Optional

from rindler_corr.exception import InvalidParameterError
from rindler_corr.utils.const import (
    DEFAULT_N_MAX_CAP,
    DEFAULT_TAIL_EPS,
    TruncationMode,
)


@dataclass(frozen=True)
class SqueezingParameter:
    """
    The dimensionless squeezing parameter α of a Rindler mode.

    α = 0 is the inertial limit; tanh α approaches 1 near the horizon.
    """

    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha < 0.0:
            raise InvalidParameterError(
                f"squeezing parameter must be finite and >= 0, got {self.alpha!r}"
            )
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def from_tanh(cls, t: float) -> "SqueezingParameter":
        if not 0.0 <= t < 1.0:
            raise InvalidParameterError(f"tanh(alpha) must lie in [0, 1), got {t!r}")
        return cls(math.atanh(t))

    @property
    def tanh(self) -> float:
        return math.tanh(self.alpha)

    @property
    def cosh(self) -> float:
        return math.cosh(self.alpha)

    @property
    def ratio(self) -> float:
        """Geometric ratio tanh²α between successive occupation levels."""
        return self.tanh**2

    def __float__(self) -> float:
        return self.alpha


@dataclass(frozen=True)
class AccelerationSpec:
    """
    A mode frequency and the proper acceleration of the observer, in
    natural units.
    """

    omega: float
    accel: float

    def __post_init__(self):
        for name in ("omega", "accel"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise InvalidParameterError(
                    f"{name} must be finite and > 0, got {getattr(self, name)!r}"
                )
            object.__setattr__(self, name, value)

    @property
    def temperature(self) -> float:
        """Unruh temperature a/2π seen by the accelerated observer."""
        return self.accel / (2.0 * math.pi)

    @property
    def thermal_ratio(self) -> float:
        """Boltzmann factor e^{-ω/T} between successive thermal levels."""
        return math.exp(-self.omega / self.temperature)


@dataclass(frozen=True)
class TruncationPolicy:
    """
    Rule selecting the largest Rob/AntiRob occupation N kept in the
    vacuum branch.

    ``FIXED`` uses ``n`` as given; ``ADAPTIVE`` picks the smallest N whose
    discarded weight in both branches is below ``tail_eps``, refusing to go
    beyond ``n_max_cap``.
    """

    mode: TruncationMode
    n: Optional[int] = None
    tail_eps: float = DEFAULT_TAIL_EPS
    n_max_cap: int = DEFAULT_N_MAX_CAP

    def __post_init__(self):
        object.__setattr__(self, "mode", TruncationMode(self.mode))
        if self.mode is TruncationMode.FIXED:
            if self.n is None or int(self.n) < 1:
                raise InvalidParameterError(
                    f"fixed truncation needs N >= 1, got {self.n!r}"
                )
            object.__setattr__(self, "n", int(self.n))
        if not 0.0 < self.tail_eps < 1.0:
            raise InvalidParameterError(
                f"tail tolerance must lie in (0, 1), got {self.tail_eps!r}"
            )
        if self.n_max_cap < 1:
            raise InvalidParameterError(
                f"truncation cap must be >= 1, got {self.n_max_cap!r}"
            )

    @classmethod
    def fixed(cls, n: int) -> "TruncationPolicy":
        return cls(TruncationMode.FIXED, n=n)

    @classmethod
    def adaptive(
        cls,
        tail_eps: float = DEFAULT_TAIL_EPS,
        n_max_cap: int = DEFAULT_N_MAX_CAP,
    ) -> "TruncationPolicy":
        return cls(TruncationMode.ADAPTIVE, tail_eps=tail_eps, n_max_cap=n_max_cap)
