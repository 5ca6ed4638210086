import logging
import math
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from rindler_corr.model import (
    BasisLabel,
    CorrelationRecord,
    DensityMatrix,
    NumericsConfig,
    PureStateVector,
    SweepResult,
)
from rindler_corr.utils.const import Subsystem

LOGGER = logging.getLogger(__name__)

A, R, ANTI_R = Subsystem.ALICE, Subsystem.ROB, Subsystem.ANTIROB

FIXTURES = Path(__file__).parent / "fixtures"

@pytest.fixture
def qubit_pair_basis() -> BasisLabel:
    return BasisLabel.of((A, 2), (R, 2))


@pytest.fixture
def bell_vector(qubit_pair_basis: BasisLabel) -> PureStateVector:
    """(|00⟩ + |11⟩)/√2 on Alice ⊗ a two-level Rob."""
    return PureStateVector.from_indices(
        qubit_pair_basis, [0, 3], [1.0, 1.0], normalize=True
    )


@pytest.fixture
def bell_state(qubit_pair_basis: BasisLabel) -> DensityMatrix:
    matrix = np.zeros((4, 4))
    matrix[np.ix_([0, 3], [0, 3])] = 0.5
    return DensityMatrix.from_dense(qubit_pair_basis, matrix)


@pytest.fixture
def product_state(qubit_pair_basis: BasisLabel) -> DensityMatrix:
    """|+⟩⟨+| ⊗ diag(0.7, 0.3): no correlations of any kind."""
    plus = np.full((2, 2), 0.5)
    rob = np.diag([0.7, 0.3])
    return DensityMatrix.from_dense(qubit_pair_basis, np.kron(plus, rob))


@pytest.fixture
def numerics() -> NumericsConfig:
    return NumericsConfig()


@pytest.fixture
def make_record() -> Callable[..., CorrelationRecord]:
    """
    Factory for internally consistent synthetic records, so output
    formats can be tested without running the pipeline.
    """

    def factory(alpha: float, **overrides) -> CorrelationRecord:
        s_r = 1.0 + 0.5 * alpha
        s_antir = 0.4 * alpha
        i_ar = 2.0 - 0.3 * alpha
        i_aantir = 0.3 * alpha
        j_ar = 1.0 - 0.2 * alpha
        j_aantir = 0.1 * alpha
        values = dict(
            alpha=alpha,
            S_A=1.0,
            S_R=s_r,
            S_AntiR=s_antir,
            I_AR=i_ar,
            I_AAntiR=i_aantir,
            I_RAntiR=s_r + s_antir - 1.0,
            J_AR=j_ar,
            J_AAntiR=j_aantir,
            D_AR=i_ar - j_ar,
            D_AAntiR=i_aantir - j_aantir,
            EF_RAntiR=s_r - j_ar,
            EF_AntiRR=s_antir - j_aantir,
            S_AR=s_antir,
            S_AAntiR=s_r,
            S_RAntiR=1.0,
            N_used=10 + int(10 * alpha),
            theta_AR=math.pi / 2,
            phi_AR=0.0,
            theta_AAntiR=math.pi / 2,
            phi_AAntiR=0.0,
        )
        values.update(overrides)
        return CorrelationRecord(**values)

    return factory


@pytest.fixture
def synthetic_result(make_record) -> SweepResult:
    alphas = np.linspace(0.0, 1.0, 5)
    return SweepResult(
        tuple(make_record(float(a)) for a in alphas),
        {"tool_version": "0.1.0"},
    )


@pytest.fixture
def sample_config_path() -> Path:
    return FIXTURES / "sample_config.txt"
