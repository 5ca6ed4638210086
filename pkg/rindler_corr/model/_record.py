import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any, ClassVar, Dict, Mapping

import numpy as np
from numpy.typing import NDArray

from rindler_corr.exception import InvariantViolationError
from rindler_corr.utils.const import DEFAULT_CLAMP_TOL

# D is stored as I - J up to this absolute error
_DISCORD_IDENTITY_TOL = 1e-9

_INT_FIELDS = frozenset({"N_used", "clamped_measures", "clamped_eigenvalues"})
# fields that are not expected to converge with N
_NON_CONVERGING = _INT_FIELDS | {
    "alpha",
    "theta_AR",
    "phi_AR",
    "theta_AAntiR",
    "phi_AAntiR",
}


@dataclass(frozen=True)
class CorrelationRecord:
    """
    Every scalar correlation measure of the Alice/Rob/AntiRob state at one
    squeezing value. Entropic quantities are in bits.

    Field order is the column order of the CSV schema, and field names are
    the keys of the JSON output.
    """

    alpha: float
    S_A: float
    S_R: float
    S_AntiR: float
    I_AR: float
    I_AAntiR: float
    I_RAntiR: float
    J_AR: float
    J_AAntiR: float
    D_AR: float
    D_AAntiR: float
    EF_RAntiR: float  # S(R) - J(AR)
    EF_AntiRR: float  # S(R̄) - J(AR̄)
    S_AR: float
    S_AAntiR: float
    S_RAntiR: float
    N_used: int
    theta_AR: float
    phi_AR: float
    theta_AAntiR: float
    phi_AAntiR: float
    clamped_measures: int = 0
    clamped_eigenvalues: int = 0

    FIELD_NAMES: ClassVar[tuple[str, ...]]

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in _INT_FIELDS:
                object.__setattr__(self, f.name, int(value))
                continue
            value = float(value)
            if not math.isfinite(value):
                raise InvariantViolationError(f"{f.name} is not finite: {value!r}")
            object.__setattr__(self, f.name, value)

        for d, i, j in (
            (self.D_AR, self.I_AR, self.J_AR),
            (self.D_AAntiR, self.I_AAntiR, self.J_AAntiR),
        ):
            gap = i - j
            clamped = d == 0.0 and gap >= -DEFAULT_CLAMP_TOL
            if abs(d - gap) > _DISCORD_IDENTITY_TOL and not clamped:
                raise InvariantViolationError(
                    f"discord {d!r} does not equal I - J = {gap!r}"
                )

    def differences(self, other: "CorrelationRecord") -> Dict[str, float]:
        """
        Absolute change of every measure that converges with N, from this
        record to ``other``; angles, counters and N itself are left out.
        """
        return {
            name: abs(getattr(other, name) - getattr(self, name))
            for name in self.FIELD_NAMES
            if name not in _NON_CONVERGING
        }

    def to_dict(self) -> Dict[str, Any]:
        """Returns the record as an ordered mapping of schema name to value."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CorrelationRecord":
        """
        Rebuilds a record from a mapping such as a parsed CSV row.

        Args:
            data (Mapping[str, Any]): Values keyed by schema name; strings are
                converted to the field type.

        Returns:
            CorrelationRecord: The record.

        Raises:
            KeyError: If a schema field is missing.
        """
        values = {}
        for name in cls.FIELD_NAMES:
            raw = data[name]
            values[name] = int(raw) if name in _INT_FIELDS else float(raw)
        return cls(**values)


CorrelationRecord.FIELD_NAMES = tuple(f.name for f in fields(CorrelationRecord))


@dataclass(frozen=True)
class SweepResult:
    """
    The records of a sweep in ascending α order, plus run metadata.

    ``metadata`` carries the config echo, the tool version, the wall time
    in seconds and the summed diagnostics counters.
    """

    records: tuple[CorrelationRecord, ...]
    metadata: Dict[str, Any] = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        records = tuple(self.records)
        alphas = [r.alpha for r in records]
        if alphas != sorted(alphas):
            raise InvariantViolationError("sweep records are not sorted by alpha")
        object.__setattr__(self, "records", records)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def alphas(self) -> NDArray[np.float64]:
        return self.column("alpha")

    def column(self, name: str) -> NDArray[np.float64]:
        """Returns one schema field across all records."""
        if name not in CorrelationRecord.FIELD_NAMES:
            raise KeyError(name)
        return np.array([getattr(r, name) for r in self.records], dtype=np.float64)
