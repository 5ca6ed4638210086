import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from types import TracebackType
from typing import TYPE_CHECKING, Any, Dict, Optional

if TYPE_CHECKING:
    from typing_extensions import Self

from rindler_corr.correlations import assemble_record
from rindler_corr.exception import InvalidParameterError
from rindler_corr.model import (
    CorrelationRecord,
    NumericsConfig,
    SweepResult,
    TruncationPolicy,
)
from rindler_corr.model.sweep_config import AccelerationAxisConfig, SweepConfig
from rindler_corr.states import (
    Squeezing,
    as_squeezing,
    resolve_truncation,
    squeezing_from_acceleration,
)
from rindler_corr.utils.helpers import tool_version

logger = logging.getLogger("rindler_corr")


def sweep_alphas(config: SweepConfig) -> list[float]:
    """
    Returns the squeezing values a sweep visits, in ascending order.

    An acceleration axis is mapped point by point through
    tanh α = exp(-πω/a).

    Args:
        config (SweepConfig): The sweep configuration.

    Returns:
        list[float]: One α per grid point.
    """
    axis = config.axis
    if isinstance(axis, AccelerationAxisConfig):
        return [squeezing_from_acceleration(spec).alpha for spec in axis.specs()]
    return [float(alpha) for alpha in axis.grid()]


def _compute_point(
    alpha: float, policy: TruncationPolicy, numerics: NumericsConfig
) -> tuple[CorrelationRecord, float]:
    started = time.perf_counter()
    record = assemble_record(alpha, policy, numerics)
    return record, time.perf_counter() - started


class AsyncSweepRunner:
    """Runs the per-α pipeline over a sweep grid on a pool of worker processes."""

    _config: SweepConfig
    _executor: Optional[Executor]
    _owns_executor: bool

    def __init__(self, config: SweepConfig, executor: Optional[Executor] = None):
        """
        Initializes the runner.

        Args:
            config (SweepConfig): The sweep to run.
            executor (Optional[Executor], optional): An executor to submit the
                grid points to. When omitted, a ProcessPoolExecutor sized by
                ``config.effective_workers`` is created on entering the context
                and shut down on exit.
        """
        self._config = config
        self._executor = executor
        self._owns_executor = executor is None

    async def __aenter__(self) -> "Self":
        """
        Enters the async context and starts the worker pool.

        Returns:
            AsyncSweepRunner: The runner.
        """
        if self._owns_executor:
            workers = self._config.effective_workers
            logger.debug("Starting %d worker process(es)", workers)
            self._executor = ProcessPoolExecutor(max_workers=workers)
        return self

    async def __aexit__(
        self,
        exc_type: type[BaseException] | None,
        exc_value: BaseException | None,
        traceback: TracebackType | None,
    ) -> None:
        """Shuts the worker pool down, dropping queued points after a failure."""
        if self._owns_executor and self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=exc_type is not None)
            self._executor = None

    @property
    def config(self) -> SweepConfig:
        return self._config

    async def run(self) -> SweepResult:
        """
        Computes one record per grid point.

        Points are independent and finish in any order; the result is
        sorted by α, so the worker count never changes the output.

        Returns:
            SweepResult: The records and the run metadata.

        Raises:
            RecordAssemblyError: For the first grid point that fails.
            RuntimeError: If called outside the async context.
        """
        if self._executor is None:
            raise RuntimeError("AsyncSweepRunner.run() must be called inside 'async with'")
        alphas = sweep_alphas(self._config)
        total = len(alphas)
        loop = asyncio.get_running_loop()
        started = time.perf_counter()
        finished = 0

        async def point(alpha: float) -> CorrelationRecord:
            nonlocal finished
            record, elapsed = await loop.run_in_executor(
                self._executor,
                _compute_point,
                alpha,
                self._config.truncation,
                self._config.numerics,
            )
            finished += 1
            logger.info(
                "[%d/%d] alpha=%.6g N=%d done in %.2fs",
                finished,
                total,
                record.alpha,
                record.N_used,
                elapsed,
            )
            return record

        logger.info("Sweeping %d points with %s", total, self._config.truncation)
        records = await asyncio.gather(*(point(alpha) for alpha in alphas))
        records.sort(key=lambda r: r.alpha)
        wall_time = time.perf_counter() - started
        logger.info("Sweep finished in %.1fs", wall_time)
        return SweepResult(tuple(records), self._metadata(records, wall_time))

    def _metadata(self, records: list[CorrelationRecord], wall_time: float) -> Dict[str, Any]:
        return {
            "tool_version": tool_version(),
            "config": self._config.to_mapping(),
            "wall_time_s": round(wall_time, 3),
            "diagnostics": {
                "points": len(records),
                "max_N": max(r.N_used for r in records),
                "clamped_measures": sum(r.clamped_measures for r in records),
                "clamped_eigenvalues": sum(r.clamped_eigenvalues for r in records),
            },
        }


def run_sweep(config: SweepConfig, executor: Optional[Executor] = None) -> SweepResult:
    """
    Runs a sweep to completion from synchronous code.

    Args:
        config (SweepConfig): The sweep to run.
        executor (Optional[Executor], optional): See :class:`AsyncSweepRunner`.

    Returns:
        SweepResult: The records in ascending α order.
    """

    async def main() -> SweepResult:
        async with AsyncSweepRunner(config, executor) as runner:
            return await runner.run()

    return asyncio.run(main())


@dataclass(frozen=True)
class ConvergenceTable:
    """
    Records of one squeezing value at successively doubled truncations.

    ``records[0]`` is computed at the N the policy chooses, every later
    entry at twice the previous N.
    """

    alpha: float
    records: tuple[CorrelationRecord, ...]

    @property
    def truncations(self) -> list[int]:
        return [r.N_used for r in self.records]

    def deltas(self) -> list[Dict[str, float]]:
        """
        Absolute change of every converging field between consecutive rows.

        Returns:
            list[Dict[str, float]]: One mapping per doubling.
        """
        return [a.differences(b) for a, b in zip(self.records, self.records[1:])]

    @property
    def max_delta(self) -> float:
        changes = [max(d.values()) for d in self.deltas()]
        return max(changes) if changes else 0.0

    def to_text(self) -> str:
        """Formats the table for the terminal."""
        lines = [f"alpha={self.alpha:.12g}", f"{'N':>6}  {'max |delta|':>12}  {'worst field':<12}"]
        lines.append(f"{self.records[0].N_used:>6}  {'':>12}  ")
        for record, delta in zip(self.records[1:], self.deltas()):
            worst = max(delta, key=lambda name: delta[name])
            lines.append(f"{record.N_used:>6}  {delta[worst]:>12.3e}  {worst:<12}")
        return "\n".join(lines) + "\n"


def convergence_study(
    alpha: Squeezing,
    policy: Optional[TruncationPolicy] = None,
    doublings: int = 1,
    numerics: Optional[NumericsConfig] = None,
) -> ConvergenceTable:
    """
    Recomputes one record with N doubled ``doublings`` times.

    Args:
        alpha (Squeezing): The squeezing parameter.
        policy (Optional[TruncationPolicy], optional): Picks the first N.
            Defaults to the adaptive policy.
        doublings (int, optional): How many times N is doubled. Defaults to 1.
        numerics (Optional[NumericsConfig], optional): Solver and tolerances.

    Returns:
        ConvergenceTable: ``doublings + 1`` records.

    Raises:
        InvalidParameterError: If ``doublings`` is below 1.
        RecordAssemblyError: If any of the records fails.
    """
    if doublings < 1:
        raise InvalidParameterError(f"doublings must be >= 1, got {doublings!r}")
    param = as_squeezing(alpha)
    n = resolve_truncation(policy or TruncationPolicy.adaptive(), param)
    records = []
    for _ in range(doublings + 1):
        logger.info("Convergence: alpha=%.6g at N=%d", param.alpha, n)
        records.append(assemble_record(param, TruncationPolicy.fixed(n), numerics))
        n *= 2
    return ConvergenceTable(param.alpha, tuple(records))
