import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from rindler_corr.correlations import (
    ConditionalEntropyKernel,
    assemble_record,
    classical_correlations,
)
from rindler_corr.exception import RindlerCorrError
from rindler_corr.fockla import von_neumann_entropy
from rindler_corr.model import (
    DensityMatrix,
    MeasurementDirection,
    NumericsConfig,
    TruncationPolicy,
)
from rindler_corr.oracle._grid import grid_search_J, projective_conditional_entropy
from rindler_corr.oracle._series import (
    rho_AAntiR_series,
    rho_AntiR_series,
    rho_AR_series,
    rho_R_series,
    rho_RAntiR_series,
    thermal_series,
)
from rindler_corr.oracle._tails import tail_weight
from rindler_corr.states import (
    branch_tail,
    resolve_truncation,
    rho_AAntiR,
    rho_AntiR,
    rho_AR,
    rho_R,
    rho_RAntiR,
    unruh_thermal_marginal,
)
from rindler_corr.utils.const import DEFAULT_TRUNCATION_CONVERGENCE_TOL, Branch

logger = logging.getLogger("rindler_corr")

SPOT_CHECK_ALPHAS = (0.0, 0.25, 0.5 * math.log(3.0), 1.0, 2.0)

SERIES_TOL = 1e-12
OPTIMIZER_TOL = 1e-6
TAIL_RELATIVE_TOL = 1e-9
KERNEL_TOL = 1e-10
# truncation range used for the dense projector comparison
KERNEL_CHECK_MAX_N = 40
KERNEL_CHECK_DIRECTIONS = (MeasurementDirection(0.0, 0.0),) + tuple(
    MeasurementDirection(theta, phi)
    for theta in (0.35, 1.1, 0.5 * math.pi, 2.3, math.pi - 0.2)
    for phi in (0.0, 0.5 * math.pi, 2.0, 4.4)
)


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one oracle comparison.

    ``deviation`` is the measured discrepancy and ``tolerance`` the bound
    it had to stay within; a check that raised has ``deviation`` = inf and
    the error text in ``detail``.
    """

    name: str
    alpha: float
    deviation: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def __str__(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        line = (
            f"{status} {self.name:<28} alpha={self.alpha:<10.6g} "
            f"dev={self.deviation:.3e} tol={self.tolerance:.1e}"
        )
        return f"{line} {self.detail}" if self.detail else line


@dataclass
class VerificationReport:
    """The collected results of :func:`verify_all`."""

    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def add(self, check: CheckResult) -> None:
        level = logging.INFO if check.passed else logging.WARNING
        logger.log(level, "%s", check)
        self.checks.append(check)

    def summary(self) -> str:
        return f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"


def verify_all(
    alphas: Sequence[float] = SPOT_CHECK_ALPHAS,
    policy: Optional[TruncationPolicy] = None,
    numerics: Optional[NumericsConfig] = None,
    resolution_deg: float = 1.0,
) -> VerificationReport:
    """
    Runs every oracle comparison at each squeezing value.

    - The reduced states built from the tripartite vector match the
      closed-form series entrywise, including the thermal marginal.
    - The grid-plus-Nelder-Mead optimizer agrees with an exhaustive grid.
    - The closed-form branch tails agree with term-by-term summation, and
      the adaptive N is the smallest that meets the tolerance.
    - The tridiagonal conditional-entropy path agrees with dense projectors
      over a spread of directions, at the working N or a capped one.
    - Doubling N changes no converging record field by more than 1e-8.

    Args:
        alphas (Sequence[float], optional): Squeezing values to check.
        policy (Optional[TruncationPolicy], optional): Truncation rule.
            Defaults to the adaptive policy.
        numerics (Optional[NumericsConfig], optional): Solver and tolerances.
        resolution_deg (float, optional): Exhaustive grid step. Defaults to 1°.

    Returns:
        VerificationReport: One entry per comparison; never raises for a
            failed comparison.
    """
    policy = policy or TruncationPolicy.adaptive()
    numerics = numerics or NumericsConfig()
    report = VerificationReport()
    for alpha in alphas:
        logger.info("Verifying alpha=%s", alpha)
        n = resolve_truncation(policy, alpha)
        _check_series(report, alpha, n)
        _check_optimizer(report, alpha, n, numerics, resolution_deg)
        _check_tails(report, alpha, n, policy)
        _check_kernel(report, alpha, n, numerics)
        _check_truncation(report, alpha, n, numerics)
    logger.info("Verification: %s", report.summary())
    return report


def _run(
    report: VerificationReport,
    name: str,
    alpha: float,
    tolerance: float,
    check: Callable[[], tuple[float, str]],
) -> None:
    try:
        deviation, detail = check()
    except RindlerCorrError as e:
        deviation, detail = math.inf, f"{type(e).__name__}: {e}"
    report.add(CheckResult(name, float(alpha), deviation, tolerance, detail))


def _max_entry_difference(a: DensityMatrix, b: DensityMatrix) -> float:
    if a.basis != b.basis:
        return math.inf
    difference = abs(a.entries - b.entries)
    return float(difference.max()) if difference.nnz else 0.0


def _check_series(report: VerificationReport, alpha: float, n: int) -> None:
    pairs: Iterable[tuple[str, Callable, Callable]] = (
        ("series rho_AR", rho_AR, rho_AR_series),
        ("series rho_AAntiR", rho_AAntiR, rho_AAntiR_series),
        ("series rho_RAntiR", rho_RAntiR, rho_RAntiR_series),
        ("series rho_R", rho_R, rho_R_series),
        ("series rho_AntiR", rho_AntiR, rho_AntiR_series),
        ("series thermal marginal", unruh_thermal_marginal, thermal_series),
    )
    for name, built, series in pairs:
        _run(
            report,
            name,
            alpha,
            SERIES_TOL,
            lambda built=built, series=series: (
                _max_entry_difference(built(alpha, n), series(alpha, n)),
                f"N={n}",
            ),
        )


def _check_optimizer(
    report: VerificationReport,
    alpha: float,
    n: int,
    numerics: NumericsConfig,
    resolution_deg: float,
) -> None:
    for name, builder in (("optimizer J(AR)", rho_AR), ("optimizer J(AAntiR)", rho_AAntiR)):

        def compare(builder=builder) -> tuple[float, str]:
            rho = builder(alpha, n)
            optimized = classical_correlations(rho, numerics=numerics)
            grid_value, grid_direction = grid_search_J(
                rho, resolution_deg, numerics=numerics
            )
            detail = (
                f"J={optimized.value:.12g} grid={grid_value:.12g} "
                f"theta={optimized.direction.theta:.6f} grid_theta={grid_direction.theta:.6f}"
            )
            return abs(optimized.value - grid_value), detail

        _run(report, name, alpha, OPTIMIZER_TOL, compare)


def _check_tails(
    report: VerificationReport, alpha: float, n: int, policy: TruncationPolicy
) -> None:
    for branch in Branch:

        def compare(branch=branch) -> tuple[float, str]:
            closed = branch_tail(alpha, n, branch)
            summed = tail_weight(alpha, n, branch)
            scale = max(abs(summed), 1e-300)
            return abs(closed - summed) / scale if summed else abs(closed), (
                f"N={n} closed={closed:.6e} summed={summed:.6e}"
            )

        _run(report, f"tail {branch.value}", alpha, TAIL_RELATIVE_TOL, compare)

    def minimal() -> tuple[float, str]:
        eps = policy.tail_eps
        meets = max(tail_weight(alpha, n, b) for b in Branch) < eps
        previous = n == 1 or max(tail_weight(alpha, n - 1, b) for b in Branch) >= eps
        return (0.0 if meets and previous else 1.0), f"N={n} eps={eps:g}"

    if policy.mode.value == "adaptive":
        _run(report, "tail minimal N", alpha, 0.0, minimal)


def _check_kernel(
    report: VerificationReport, alpha: float, n: int, numerics: NumericsConfig
) -> None:
    m = min(max(n, 8), KERNEL_CHECK_MAX_N)

    def compare() -> tuple[float, str]:
        worst = 0.0
        for builder in (rho_AR, rho_AAntiR):
            rho = builder(alpha, m)
            kernel = ConditionalEntropyKernel(
                rho, solver=numerics.eigensolver, tolerances=numerics.tolerances
            )
            for direction in KERNEL_CHECK_DIRECTIONS:
                worst = max(
                    worst,
                    abs(kernel(direction) - projective_conditional_entropy(rho, direction)),
                )
        return worst, f"N={m} directions={len(KERNEL_CHECK_DIRECTIONS)}"

    _run(report, "kernel vs projectors", alpha, KERNEL_TOL, compare)

    def entropy_identity() -> tuple[float, str]:
        s_rr = von_neumann_entropy(
            rho_RAntiR(alpha, m), numerics.eigensolver, numerics.tolerances
        )
        return abs(s_rr - 1.0), "S(RR̄) = S(A) = 1"

    _run(report, "purification S(RAntiR)", alpha, 1e-8, entropy_identity)


def _check_truncation(
    report: VerificationReport, alpha: float, n: int, numerics: NumericsConfig
) -> None:
    def compare() -> tuple[float, str]:
        coarse = assemble_record(alpha, TruncationPolicy.fixed(n), numerics)
        fine = assemble_record(alpha, TruncationPolicy.fixed(2 * n), numerics)
        changes = coarse.differences(fine)
        worst = max(changes, key=lambda name: changes[name])
        return changes[worst], f"N={n} vs {2 * n}, worst {worst}"

    _run(
        report,
        "truncation convergence",
        alpha,
        DEFAULT_TRUNCATION_CONVERGENCE_TOL,
        compare,
    )
