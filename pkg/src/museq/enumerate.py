"""Integer vectors of bounded norm in the standard lattice Z^n."""
from __future__ import annotations

from enum import Enum
from math import isqrt
from typing import Iterator, Optional

from . import _backend
from .core import DEFAULT_ENUM_BUDGET, BudgetExceeded
from .density import lemma31_bound, upper


class Mode(str, Enum):
    FULL = "full"
    HALF = "half"


def predicted_count(n: int, bound: int) -> int:
    """Upper estimate for ``#{z in Z^n : |z|^2 <= bound}`` from the volume bound."""
    return int(upper(lemma31_bound(n, max(bound, 0)))) + 1


def check_budget(n: int, bound: int, budget: Optional[int]) -> None:
    if budget is None:
        return
    est = predicted_count(n, bound)
    if est > budget:
        raise BudgetExceeded(
            f"enumerating Z^{n} up to norm {bound} may visit ~{est} vectors (budget {budget})"
        )


def enumerate_short(n: int, bound: int, mode: Mode | str = Mode.FULL,
                    budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> Iterator[tuple[int, ...]]:
    """Yield every ``z`` in Z^n with ``0 < |z|^2 <= bound``, lexicographically.

    In ``half`` mode only the representative of ``{z, -z}`` whose first
    nonzero coordinate is positive is produced.
    """
    if n < 1 or bound < 0:
        raise ValueError("need n >= 1 and bound >= 0")
    mode = Mode(mode)
    check_budget(n, bound, budget)
    half = mode is Mode.HALF
    z = [0] * n

    def walk(i: int, rem: int, lead_zero: bool):
        r = isqrt(rem)
        lo = 0 if (half and lead_zero) else -r
        for x in range(lo, r + 1):
            z[i] = x
            lz = lead_zero and x == 0
            if i == n - 1:
                if not lz:
                    yield tuple(z)
            else:
                yield from walk(i + 1, rem - x * x, lz)
        z[i] = 0

    return walk(0, bound, True)


def count_norm_le(n: int, mu: int, budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> int:
    """Exact number of ``z`` in Z^n with ``|z|^2 <= mu``, the zero vector included."""
    if n < 1 or mu < 0:
        raise ValueError("need n >= 1 and mu >= 0")
    check_budget(n, mu, budget)
    k = _backend.select(mu)
    count, _ = k.count_ball(n, mu, budget if budget is not None else 2**62)
    return count
