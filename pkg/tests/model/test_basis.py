import pytest

from rindler_corr.exception import DimensionError
from rindler_corr.model import BasisLabel, as_subsystem
from rindler_corr.utils.const import Subsystem

A, R, ANTI_R = Subsystem.ALICE, Subsystem.ROB, Subsystem.ANTIROB


class TestBasisLabel:
    def test_dims_and_total(self):
        basis = BasisLabel.of((A, 2), (R, 5), (ANTI_R, 4))
        assert basis.ids == (A, R, ANTI_R)
        assert basis.dims == (2, 5, 4)
        assert basis.total_dim == 40

    def test_string_ids_are_converted(self):
        basis = BasisLabel.of(("A", 2), ("AntiR", 3))
        assert basis.ids == (A, ANTI_R)
        assert "AntiR" in basis
        assert R not in basis

    def test_str(self):
        assert str(BasisLabel.of((A, 2), (R, 14))) == "A(2)⊗R(14)"

    def test_index_and_dim_of(self):
        basis = BasisLabel.of((R, 6), (A, 2))
        assert basis.index_of(A) == 1
        assert basis.dim_of(R) == 6

    def test_unknown_subsystem_lookup(self):
        basis = BasisLabel.of((A, 2), (R, 3))
        with pytest.raises(DimensionError):
            basis.index_of(ANTI_R)

    @pytest.mark.parametrize(
        "lookup",
        [
            lambda basis: basis.index_of("Bob"),
            lambda basis: basis.dim_of("Bob"),
            lambda basis: "Bob" in basis,
            lambda basis: basis.restrict(["A", "Bob"]),
        ],
    )
    def test_unknown_subsystem_name(self, lookup):
        with pytest.raises(DimensionError, match="Bob"):
            lookup(BasisLabel.of((A, 2), (R, 3)))

    def test_restrict_keeps_original_order(self):
        basis = BasisLabel.of((A, 2), (R, 5), (ANTI_R, 4))
        assert basis.restrict([ANTI_R, A]) == BasisLabel.of((A, 2), (ANTI_R, 4))

    def test_restrict_to_nothing(self):
        with pytest.raises(DimensionError):
            BasisLabel.of((A, 2), (R, 3)).restrict([])

    def test_restrict_to_unknown(self):
        with pytest.raises(DimensionError):
            BasisLabel.of((A, 2), (R, 3)).restrict([ANTI_R])

    def test_concat(self):
        left = BasisLabel.of((A, 2))
        right = BasisLabel.of((R, 3))
        assert left.concat(right).dims == (2, 3)

    def test_concat_with_shared_factor(self):
        with pytest.raises(DimensionError):
            BasisLabel.of((A, 2)).concat(BasisLabel.of((A, 2)))

    @pytest.mark.parametrize(
        "factors",
        [
            (),
            ((A, 2), (A, 2)),
            ((R, 0),),
            ((A, 3),),
            (("Bob", 2),),
        ],
    )
    def test_invalid_factors(self, factors):
        with pytest.raises(DimensionError):
            BasisLabel(factors)


class TestAsSubsystem:
    def test_converts_values(self):
        assert as_subsystem("R") is R
        assert as_subsystem(ANTI_R) is ANTI_R

    def test_unknown_name(self):
        with pytest.raises(DimensionError):
            as_subsystem("Bob")
