import math
from dataclasses import dataclass
from typing import Iterable

from rindler_corr.exception import DimensionError
from rindler_corr.utils.const import Subsystem

Factor = tuple[Subsystem, int]


def as_subsystem(sid: Subsystem | str) -> Subsystem:
    """
    Converts a subsystem id or its string value.

    Raises:
        DimensionError: If ``sid`` names no subsystem.
    """
    try:
        return Subsystem(sid)
    except ValueError as e:
        raise DimensionError(f"unknown subsystem {sid!r}") from e


@dataclass(frozen=True)
class BasisLabel:
    """
    Ordered tensor-product structure of a truncated Fock space.

    Each factor pairs a subsystem id with its local dimension. Alice's
    factor is always a qubit; Rob's and AntiRob's factors are truncated
    occupation-number ladders.
    """

    factors: tuple[Factor, ...]

    def __post_init__(self):
        try:
            factors = tuple((Subsystem(sid), int(dim)) for sid, dim in self.factors)
        except (TypeError, ValueError) as e:
            raise DimensionError(f"malformed factors {self.factors!r}") from e
        object.__setattr__(self, "factors", factors)

        if not factors:
            raise DimensionError("a basis needs at least one factor")
        ids = [sid for sid, _ in factors]
        if len(set(ids)) != len(ids):
            raise DimensionError(f"duplicate subsystem in {self}")
        for sid, dim in factors:
            if dim < 1:
                raise DimensionError(f"factor {sid.value} has dimension {dim} < 1")
            if sid is Subsystem.ALICE and dim != 2:
                raise DimensionError(f"Alice's factor must be two-level, got {dim}")

    @classmethod
    def of(cls, *factors: tuple[Subsystem | str, int]) -> "BasisLabel":
        """
        Builds a basis from positional ``(subsystem, dimension)`` pairs.

        Example:
            >>> BasisLabel.of((Subsystem.ALICE, 2), (Subsystem.ROB, 5)).total_dim
            10
        """
        return cls(tuple(factors))  # type: ignore[arg-type]

    @property
    def ids(self) -> tuple[Subsystem, ...]:
        return tuple(sid for sid, _ in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.factors)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def __contains__(self, sid: Subsystem | str) -> bool:
        return as_subsystem(sid) in self.ids

    def index_of(self, sid: Subsystem | str) -> int:
        """
        Returns the position of a subsystem among the factors.

        Raises:
            DimensionError: If the subsystem is not part of this basis.
        """
        try:
            return self.ids.index(as_subsystem(sid))
        except ValueError as e:
            raise DimensionError(f"subsystem {sid!r} not in basis {self}") from e

    def dim_of(self, sid: Subsystem | str) -> int:
        return self.factors[self.index_of(sid)][1]

    def restrict(self, keep: Iterable[Subsystem | str]) -> "BasisLabel":
        """
        Returns the basis of the kept factors, in their original order.

        Args:
            keep (Iterable[Subsystem | str]): Subsystems to keep.

        Returns:
            BasisLabel: The reduced basis.

        Raises:
            DimensionError: If ``keep`` is empty or names an unknown subsystem.
        """
        wanted = {as_subsystem(sid) for sid in keep}
        if not wanted:
            raise DimensionError("partial trace must keep at least one factor")
        for sid in wanted:
            self.index_of(sid)
        return BasisLabel(tuple(f for f in self.factors if f[0] in wanted))

    def concat(self, other: "BasisLabel") -> "BasisLabel":
        return BasisLabel(self.factors + other.factors)

    def __str__(self) -> str:
        return "⊗".join(f"{sid.value}({dim})" for sid, dim in self.factors)
