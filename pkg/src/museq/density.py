"""Unit-ball volumes, packing densities and the closed-form bounds.

Every real-valued result is an interval in the private context ``IV``
(96-bit mantissa, outward rounding). Use :func:`certainly_le` to compare a
value against a bound: it only returns True when the whole interval of the
left side lies below the whole interval of the right side.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .core import IV, MP, DensityReport, HighReal

Number = Union[int, Fraction, HighReal]

# stop summing exp(-k^2 pi) once a term drops below this
MAINB_TERM_CUTOFF = Fraction(1, 10**30)


def iv(x: Number) -> HighReal:
    """Convert an int, Fraction or interval to an ``IV`` interval."""
    if isinstance(x, Fraction):
        return IV.mpf(x.numerator) / IV.mpf(x.denominator)
    if isinstance(x, int):
        return IV.mpf(x)
    return x


def lower(x: Number):
    return iv(x).a


def upper(x: Number):
    return iv(x).b


def midpoint(x: Number) -> float:
    if isinstance(x, (int, Fraction)):
        return float(x)
    return float(x.mid)


def certainly_le(x: Number, y: Number) -> bool:
    """True when ``x <= y`` holds for every point of both intervals."""
    return bool(upper(x) <= lower(y))


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def unit_ball_volume_exact(n: int) -> tuple[Fraction, int]:
    """Return ``(c, m)`` with ``V_n = c * pi**m`` exactly.

    Even ``n = 2m``: ``V_n = pi^m / m!``. Odd ``n = 2m + 1``: the half-integer
    factorial ``(n/2)! = n!! sqrt(pi) / 2^(m+1)`` gives
    ``V_n = 2^(m+1) pi^m / n!!``.
    """
    if n < 0:
        raise ValueError("dimension must be >= 0")
    m = n // 2
    if n % 2 == 0:
        return Fraction(1, math.factorial(m)), m
    return Fraction(2 ** (m + 1), _double_factorial(n)), m


@lru_cache(maxsize=None)
def unit_ball_volume(n: int) -> HighReal:
    """Volume ``pi^(n/2) / (n/2)!`` of the unit ball in dimension ``n``."""
    c, m = unit_ball_volume_exact(n)
    return iv(c) * IV.pi ** m


def _sqrt_power(q: Fraction, n: int) -> HighReal:
    """``sqrt(q)^n`` for a non-negative rational ``q``."""
    if n % 2 == 0:
        return iv(q ** (n // 2))
    return iv(q ** (n // 2)) * IV.sqrt(iv(q))


def center_density(minimum: int, determinant: int, n: int) -> HighReal:
    if minimum < 1 or determinant < 1:
        raise ValueError("minimum and determinant must be >= 1")
    return IV.sqrt(iv(Fraction(minimum ** n, 4 ** n * determinant)))


def packing_density(minimum: int, determinant: int, n: int) -> HighReal:
    return center_density(minimum, determinant, n) * unit_ball_volume(n)


def theorem_bound_sn(mu: int, n: int) -> tuple[HighReal, HighReal]:
    """The two upper bounds for the ``n``-th term of the greedy sequence.

    first  = 1 + sqrt(mu-2) * sqrt(mu-1+n/4)^n * V_n
    second = sqrt(mu) * sqrt(mu+n/4)^n * V_n
    """
    if mu < 2 or n < 1:
        raise ValueError("need mu >= 2 and n >= 1")
    vn = unit_ball_volume(n)
    q = Fraction(n, 4)
    first = 1 + IV.sqrt(mu - 2) * _sqrt_power(mu - 1 + q, n) * vn
    second = IV.sqrt(mu) * _sqrt_power(mu + q, n) * vn
    return first, second


def corollary_density_bound(mu: int, n: int) -> HighReal:
    """Guaranteed density ``(1 + n/(4 mu))^(-n/2) / (2^n sqrt((n+1) mu))``."""
    if mu < 2 or n < 1:
        raise ValueError("need mu >= 2 and n >= 1")
    return 1 / (_sqrt_power(1 + Fraction(n, 4 * mu), n) * 2 ** n * IV.sqrt((n + 1) * mu))


def lemma31_bound(n: int, mu: int) -> HighReal:
    """Upper bound ``2 sqrt(mu + n/4)^n V_n`` on ``#{z in Z^n : |z|^2 <= mu}``."""
    if n < 1 or mu < 0:
        raise ValueError("need n >= 1 and mu >= 0")
    return 2 * _sqrt_power(mu + Fraction(n, 4), n) * unit_ball_volume(n)


def zeta_terms(n: int) -> int:
    return max(100, math.ceil(10 ** (7 / n)))


@lru_cache(maxsize=None)
def zeta(n: int, terms: Optional[int] = None) -> HighReal:
    """Enclosure of ``zeta(n)`` for integer ``n >= 2``.

    Partial sum over ``k <= K`` plus the integral tail enclosure
    ``[(K+1)^(1-n), K^(1-n)] / (n-1)``.
    """
    if n < 2:
        raise ValueError("zeta(n) needs n >= 2")
    K = terms or zeta_terms(n)
    s = IV.mpf(0)
    for k in range(1, K + 1):
        s += 1 / IV.mpf(k) ** n
    tail = IV.mpf([lower(Fraction(1, (n - 1) * (K + 1) ** (n - 1))),
                   upper(Fraction(1, (n - 1) * K ** (n - 1)))])
    return s + tail


def comparison_bounds(n: int) -> tuple[HighReal, HighReal]:
    """Minkowski-Hlawka ``zeta(n) 2^(1-n)`` and Ball ``2(n-1) 2^(-n) zeta(n)``."""
    if n < 2:
        raise ValueError("comparison bounds need n >= 2")
    z = zeta(n)
    mh = z * iv(Fraction(2, 2 ** n))
    ball = z * iv(Fraction(2 * (n - 1), 2 ** n))
    return mh, ball


def theta_tail_sum(max_terms: Optional[int] = None) -> HighReal:
    """Enclosure of ``sum_{k>=1} exp(-k^2 pi)``.

    Summation stops at the first term below ``1e-30`` (or after
    ``max_terms`` terms). The remainder after ``K`` terms is at most
    ``exp(-(K+1)^2 pi) / (1 - exp(-pi))`` because consecutive terms shrink
    by at least ``exp(-pi)``.
    """
    s = IV.mpf(0)
    k = 0
    cutoff = iv(MAINB_TERM_CUTOFF)
    while True:
        k += 1
        term = IV.exp(-(k * k) * IV.pi)
        s += term
        if max_terms is not None and k >= max_terms:
            break
        if max_terms is None and upper(term) < lower(cutoff):
            break
    rest = IV.exp(-((k + 1) ** 2) * IV.pi) / (1 - IV.exp(-IV.pi))
    return s + IV.mpf([0, upper(rest)])


def mainB_constant(max_terms: Optional[int] = None) -> HighReal:
    """``1 / sum_{k>=1} exp(-k^2 pi)``, the asymptotic density constant."""
    return 1 / theta_tail_sum(max_terms)


def vn_ratio_check(n: int):
    """Compare ``sqrt(n) V_n / V_{n-1}`` with ``sqrt(2 pi)(1 - 1/(4n))``.

    Returns ``(exact, approx, residual)`` as 128-bit mpf values.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c1, m1 = unit_ball_volume_exact(n)
    c0, m0 = unit_ball_volume_exact(n - 1)
    ratio = c1 / c0
    exact = MP.sqrt(n) * MP.mpf(ratio.numerator) / ratio.denominator * MP.pi ** (m1 - m0)
    approx = MP.sqrt(2 * MP.pi) * (1 - MP.mpf(1) / (4 * n))
    return exact, approx, exact - approx


def density_report(minimum: int, determinant: int, n: int, mu: Optional[int] = None) -> DensityReport:
    delta = center_density(minimum, determinant, n)
    Delta = delta * unit_ball_volume(n)
    cor = corollary_density_bound(mu, n) if mu is not None and n >= 1 else None
    mh = ball = None
    if n >= 2:
        mh, ball = comparison_bounds(n)
    return DensityReport(n, minimum, determinant, delta, Delta, cor, mh, ball)


def default_mu_for_dimension(n: int) -> int:
    """mu close to ``n^2/4``, the choice that makes the corollary bound sharpest."""
    return max(2, round(n * n / 4))


def bounds_row(n: int, mu: Optional[int] = None) -> dict:
    mu = default_mu_for_dimension(n) if mu is None else mu
    mh, ball = comparison_bounds(n)
    return {
        "n": n,
        "V_n": unit_ball_volume(n),
        "corollary": corollary_density_bound(mu, n),
        "mh": mh,
        "ball": ball,
        "mainB_over_2n": mainB_constant() / IV.mpf(2) ** n,
    }
