"""Extending mu-sequences one term at a time.

A new term ``t`` can be appended to a mu-sequence ``s`` exactly when no
``z != 0`` and ``k >= 1`` satisfy ``|z|^2 + k^2 < mu`` and
``t * k = |<z, s>|``: such a pair is precisely a short vector
``(z, -+k)`` of the extended kernel lattice. The values ``|<z, s>| / k``
form the forbidden set; the greedy rule takes the smallest positive integer
outside it, the interval rule the smallest one inside a prescribed window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import _backend
from .core import DEFAULT_ENUM_BUDGET, HighReal, IV, MuSeqError, MuSequence
from .density import iv, theorem_bound_sn, theta_tail_sum, unit_ball_volume, upper
from .enumerate import check_budget


@dataclass(frozen=True)
class ForbiddenSet:
    mu: int
    n: int                        # length of the prefix
    values: tuple[int, ...]       # sorted, distinct
    f: int                        # number of distinct pairs (a, k)

    _lookup: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", frozenset(self.values))

    def __contains__(self, a: int) -> bool:
        return a in self._lookup


@dataclass(frozen=True)
class ExtensionReport:
    """One extension step: the new term ``s_n`` and the quantities bounding it.

    ``sigma_tilde`` is the statistic of the extended sequence (index ``n``).
    """

    n: int
    s_n: int
    f: int
    bound_first: HighReal
    bound_second: HighReal
    sigma_tilde: HighReal


class ExtensionFailed(MuSeqError):
    """Every integer of the requested window is forbidden."""

    def __init__(self, n: int, lo: int, hi: int, partial: Optional[MuSequence] = None):
        super().__init__(f"no admissible term s_{n} in [{lo}, {hi}]")
        self.n, self.lower, self.upper, self.partial = n, lo, hi, partial


def forbidden_pairs(prefix: MuSequence, budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> set[tuple[int, int]]:
    """The set of pairs ``(a, k)`` with ``a*k = |<z, prefix>|`` and ``|z|^2 + k^2 < mu``."""
    s, mu = prefix.terms, prefix.mu
    if mu <= 2:
        return set()
    n = len(s)
    check_budget(n, mu - 2, budget)
    kern = _backend.select(max(s) * mu)
    pairs, _ = kern.forbidden_pairs(list(s), mu, budget if budget is not None else 2**62)
    return set(pairs)


def forbidden_values(prefix: MuSequence, budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> ForbiddenSet:
    pairs = forbidden_pairs(prefix, budget)
    values = sorted({a for a, _ in pairs})
    if values and values[0] == 0:
        raise ValueError(
            f"{prefix.terms} is not a mu-sequence for mu={prefix.mu}: "
            "a nonzero kernel vector is shorter than mu"
        )
    return ForbiddenSet(prefix.mu, len(prefix.terms), tuple(values), len(pairs))


def sigma_statistic(seq: MuSequence) -> HighReal:
    """``sqrt(sum s_i^2) / (sqrt(mu)^(L-1) V_(L-1))`` for a sequence of length ``L``."""
    L = len(seq.terms)
    norm = IV.sqrt(iv(sum(t * t for t in seq.terms)))
    return norm / (IV.sqrt(seq.mu) ** (L - 1) * unit_ball_volume(L - 1))


def _report(prefix: MuSequence, term: int, fs: ForbiddenSet) -> ExtensionReport:
    n = len(prefix.terms)
    first, second = theorem_bound_sn(prefix.mu, n)
    return ExtensionReport(n, term, fs.f, first, second, sigma_statistic(prefix.extended(term)))


def smallest_admissible(fs: ForbiddenSet, lo: int, hi: Optional[int] = None) -> Optional[int]:
    t = max(lo, 1)
    while t in fs:
        t += 1
    if hi is not None and t > hi:
        return None
    return t


def greedy_extend(prefix: MuSequence, budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> ExtensionReport:
    """Append the smallest positive integer outside the forbidden set."""
    fs = forbidden_values(prefix, budget)
    return _report(prefix, smallest_admissible(fs, 1), fs)


def extend_in_interval(prefix: MuSequence, lo: int, hi: int,
                       budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> Optional[ExtensionReport]:
    """Smallest admissible term in ``[lo, hi]``, or None if all are forbidden."""
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lower <= upper")
    fs = forbidden_values(prefix, budget)
    term = smallest_admissible(fs, lo, hi)
    return None if term is None else _report(prefix, term, fs)


TRACK = "track"


@dataclass(frozen=True)
class IntervalSchedule:
    """Window ``[lo, ceil((1+eps) lo)]`` with ``lo = ceil(sigma mu^(n/2) V_n)`` for term ``n``.

    ``sigma`` defaults to ``sum_{k>=1} exp(-k^2 pi)``. With ``sigma="track"``
    it is the statistic of the current prefix instead.
    """

    sigma: Union[None, str, Fraction] = None
    eps: Fraction = Fraction(1, 10)

    def __post_init__(self):
        if self.sigma is not None and self.sigma != TRACK:
            object.__setattr__(self, "sigma", Fraction(str(self.sigma)))
            if self.sigma <= 0:
                raise ValueError("sigma must be positive")
        object.__setattr__(self, "eps", Fraction(str(self.eps)))
        if self.eps < 0:
            raise ValueError("eps must be >= 0")

    def sigma_for(self, prefix: MuSequence) -> HighReal:
        if self.sigma is None:
            return theta_tail_sum()
        if self.sigma == TRACK:
            return sigma_statistic(prefix)
        return iv(self.sigma)

    def window(self, prefix: MuSequence) -> tuple[int, int]:
        n = len(prefix.terms)
        center = self.sigma_for(prefix) * IV.sqrt(prefix.mu) ** n * unit_ball_volume(n)
        lo = max(1, math.ceil(upper(center)))
        hi = math.ceil(upper(iv(lo) * iv(1 + self.eps)))
        return lo, hi


Strategy = Union[str, IntervalSchedule]


@dataclass
class BuildResult:
    sequence: MuSequence
    reports: list[ExtensionReport] = field(default_factory=list)


def build_sequence(mu: int, n_max: int, strategy: Strategy = "greedy",
                   budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> BuildResult:
    """Grow ``(1,)`` to a mu-sequence of length ``n_max + 1``.

    ``strategy`` is ``"greedy"`` (yields the lexicographically first
    mu-sequence) or an :class:`IntervalSchedule`. Raises
    :class:`ExtensionFailed` when an interval step has no admissible term.
    """
    if mu < 2 or n_max < 1:
        raise ValueError("need mu >= 2 and n_max >= 1")
    if isinstance(strategy, str) and strategy != "greedy":
        raise ValueError(f"unknown strategy {strategy!r}")
    seq = MuSequence(mu, (1,))
    result = BuildResult(seq)
    for n in range(1, n_max + 1):
        if isinstance(strategy, IntervalSchedule):
            lo, hi = strategy.window(seq)
            rep = extend_in_interval(seq, lo, hi, budget)
            if rep is None:
                raise ExtensionFailed(n, lo, hi, seq)
        else:
            rep = greedy_extend(seq, budget)
        seq = seq.extended(rep.s_n)
        result.reports.append(rep)
    result.sequence = seq
    return result
