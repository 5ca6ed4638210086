import math

import numpy as np

from rindler_corr.exception import InvalidParameterError
from rindler_corr.states import Squeezing, as_squeezing
from rindler_corr.utils.const import Branch

_CHUNK = 4096
# stop once the next term cannot change the sum in double precision
_NEGLIGIBLE = 1e-18


def tail_weight(alpha: Squeezing, n: int, branch: Branch) -> float:
    """
    Probability a branch loses when truncated at N, summed term by term.

    The normalized weights are (1-s)sᵏ for the vacuum branch and
    (1-s)²(k+1)sᵏ for the one-particle branch, s = tanh²α; the terms
    k > N are added until they no longer contribute.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (int): Largest kept level, >= 0.
        branch (Branch): Which branch.

    Returns:
        float: The discarded weight.
    """
    if n < 0:
        raise InvalidParameterError(f"truncation must be >= 0, got {n}")
    s = as_squeezing(alpha).ratio
    if s == 0.0:
        return 0.0
    branch = Branch(branch)

    total = 0.0
    start = n + 1
    while True:
        k = np.arange(start, start + _CHUNK, dtype=np.float64)
        powers = np.power(s, k)
        if branch is Branch.VACUUM:
            terms = (1.0 - s) * powers
        else:
            terms = (1.0 - s) ** 2 * (k + 1.0) * powers
        total += math.fsum(terms)
        last = terms[-1]
        if last == 0.0 or (last < terms[-2] and last <= _NEGLIGIBLE * total):
            return total
        start += _CHUNK
