import logging
import math

from rindler_corr.exception import InvalidParameterError, TruncationOverflowError
from rindler_corr.model import AccelerationSpec, SqueezingParameter, TruncationPolicy
from rindler_corr.utils.const import (
    DEFAULT_N_MAX_CAP,
    DEFAULT_TAIL_EPS,
    Branch,
    TruncationMode,
)

logger = logging.getLogger("rindler_corr")

Squeezing = SqueezingParameter | float


def as_squeezing(alpha: Squeezing) -> SqueezingParameter:
    """Wraps a bare float into a validated SqueezingParameter."""
    if isinstance(alpha, SqueezingParameter):
        return alpha
    return SqueezingParameter(alpha)


def squeezing_from_acceleration(spec: AccelerationSpec) -> SqueezingParameter:
    """
    Converts a mode frequency and proper acceleration to the squeezing
    parameter, tanh α = e^{-πω/a}.

    Args:
        spec (AccelerationSpec): Frequency and acceleration, both > 0.

    Returns:
        SqueezingParameter: α, strictly increasing in the acceleration.

    Raises:
        InvalidParameterError: If ω/a is so small that tanh α rounds to 1.
    """
    t = math.exp(-math.pi * spec.omega / spec.accel)
    if t >= 1.0:
        raise InvalidParameterError(
            f"omega/accel={spec.omega / spec.accel!r} is too small to resolve"
        )
    return SqueezingParameter(math.atanh(t))


def branch_tail(alpha: Squeezing, n: int, branch: Branch) -> float:
    """
    Probability weight a branch loses when truncated at N.

    With s = tanh²α the vacuum branch has weights (1-s)sⁿ and loses
    s^{N+1}; the one-particle branch has weights (1-s)²(n+1)sⁿ and loses
    s^{N+1}[1 + (N+1)(1-s)].

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (int): Largest kept AntiRob occupation, >= 0.
        branch (Branch): Which branch.

    Returns:
        float: The discarded weight, 0 at α = 0.
    """
    if n < 0:
        raise InvalidParameterError(f"truncation must be >= 0, got {n}")
    s = as_squeezing(alpha).ratio
    head = s ** (n + 1)
    if Branch(branch) is Branch.VACUUM:
        return head
    return head * (1.0 + (n + 1) * (1.0 - s))


def required_truncation(
    alpha: Squeezing,
    tail_eps: float = DEFAULT_TAIL_EPS,
    n_max_cap: int = DEFAULT_N_MAX_CAP,
) -> int:
    """
    Smallest N at which both branches discard less than ``tail_eps``.

    Args:
        alpha (Squeezing): The squeezing parameter.
        tail_eps (float, optional): Largest tolerated discarded weight, in
            (0, 1). Defaults to 1e-12.
        n_max_cap (int, optional): Hard limit on N. Defaults to 8192.

    Returns:
        int: N >= 1.

    Raises:
        InvalidParameterError: If ``tail_eps`` is outside (0, 1).
        TruncationOverflowError: If N would exceed ``n_max_cap``.
    """
    if not 0.0 < tail_eps < 1.0:
        raise InvalidParameterError(f"tail tolerance must lie in (0, 1), got {tail_eps!r}")
    param = as_squeezing(alpha)
    s = param.ratio
    if s == 0.0:
        return 1
    if s >= 1.0:
        raise TruncationOverflowError(param.alpha, n_max_cap)

    # the vacuum tail alone fixes a lower bound; the one-particle tail is heavier
    n = max(1, math.floor(math.log(tail_eps) / math.log(s)))
    while not (
        branch_tail(param, n, Branch.VACUUM) < tail_eps
        and branch_tail(param, n, Branch.ONE_PARTICLE) < tail_eps
    ):
        n += 1
        if n > n_max_cap:
            break
    if n > n_max_cap:
        raise TruncationOverflowError(param.alpha, n_max_cap)
    return n


def resolve_truncation(policy: TruncationPolicy, alpha: Squeezing) -> int:
    """
    Returns the N a truncation policy selects at ``alpha``.

    Raises:
        TruncationOverflowError: If an adaptive policy exceeds its cap.
    """
    if policy.mode is TruncationMode.FIXED:
        assert policy.n is not None
        return policy.n
    n = required_truncation(alpha, policy.tail_eps, policy.n_max_cap)
    logger.debug(
        "Adaptive truncation at alpha=%s: N=%d (tail_eps=%g)",
        float(alpha),
        n,
        policy.tail_eps,
    )
    return n
