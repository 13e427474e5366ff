"""Exact certification of lattice minima.

The minimum of a kernel lattice is certified independently of how its weight
vector was built: the basis is LLL-reduced in exact integer arithmetic, then
a Fincke-Pohst enumeration over the reduced basis finds all shortest
vectors. Pruning in the enumeration uses floating point with a relative
slack, and every candidate it returns is re-checked with exact integer
norms, so the reported minimum is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from . import _backend
from .core import DEFAULT_ENUM_BUDGET, DEFAULT_SVP_BUDGET, BudgetExceeded

Basis = list[list[int]]

DEFAULT_DELTA = Fraction(99, 100)


def kernel_basis(weights: Sequence[int]) -> Basis:
    """Rows ``e_i - s_i e_0`` (``i = 1..n``) spanning ``{z : <z, s> = 0}``.

    Any kernel vector ``z`` equals ``sum_{i>=1} z_i b_i`` because
    ``z_0 = -sum s_i z_i``, so the rows span the whole (saturated) lattice.
    """
    s = [int(w) for w in weights]
    if not s or s[0] != 1:
        raise ValueError("kernel_basis needs weights[0] = 1")
    m = len(s)
    rows = []
    for i in range(1, m):
        row = [0] * m
        row[0] = -s[i]
        row[i] = 1
        rows.append(row)
    return rows


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def gram_of(basis: Basis) -> list[list[int]]:
    return [[dot(bi, bj) for bj in basis] for bi in basis]


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant_identity_check(weights: Sequence[int]) -> tuple[int, int, bool]:
    """Compare ``det(Gram)`` of the kernel basis with ``sum s_k^2``."""
    via_gram = bareiss_determinant(gram_of(kernel_basis(weights)))
    via_sum = sum(int(w) ** 2 for w in weights)
    return via_gram, via_sum, via_gram == via_sum


# -- LLL ---------------------------------------------------------------------

@dataclass
class LLLResult:
    basis: Basis
    transform: list[list[int]]   # basis = transform @ input basis
    d: list[int]                 # d[i] = det of the Gram of the first i rows
    lam: list[list[int]]         # lam[i][j] = d[j+1] * mu_ij, j < i


def _round_div(a: int, b: int) -> int:
    """Nearest integer to ``a/b`` for ``b > 0``; halves go up."""
    return (2 * a + b) // (2 * b)


def lll(basis: Basis, delta: Fraction = DEFAULT_DELTA) -> LLLResult:
    """Integral LLL (all intermediates are integers, no rounding error).

    Works with the integers ``d_i`` (Gram determinants of leading rows) and
    ``lambda_ij = d_{j+1} mu_ij`` so no rational is ever formed. The rows of
    ``basis`` must be linearly independent.
    """
    delta = Fraction(delta)
    if not (Fraction(1, 4) < delta <= 1):
        raise ValueError("delta must lie in (1/4, 1]")
    p, q = delta.numerator, delta.denominator
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return LLLResult(b, H, [1], [])
    # d[0] = 1, d[i+1] belongs to row i
    d = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]

    def gs_row(k):
        for j in range(k + 1):
            u = dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise ValueError("basis rows are linearly dependent")
                d[k + 1] = u

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            r = _round_div(lam[k][l], d[l + 1])
            bk, bl = b[k], b[l]
            for t in range(len(bk)):
                bk[t] -= r * bl[t]
            hk, hl = H[k], H[l]
            for t in range(n):
                hk[t] -= r * hl[t]
            lam[k][l] -= r * d[l + 1]
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lmb = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lmb * lmb) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lmb * t) // d[k]
            lam[i][k - 1] = (B * t + lmb * lam[i][k]) // d[k + 1]
        d[k] = B

    gs_row(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gs_row(k)
        red(k, k - 1)
        lmb = lam[k][k - 1]
        if q * (d[k + 1] * d[k - 1] + lmb * lmb) < p * d[k] * d[k]:
            swap(k, kmax)
            k = max(1, k - 1)
            continue
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1
    return LLLResult(b, H, d, lam)


def lll_reduce(basis: Basis, delta: Fraction = DEFAULT_DELTA) -> Basis:
    """LLL-reduced basis of the lattice spanned by the rows of ``basis``."""
    return lll(basis, delta).basis


def gso_floats(res: LLLResult) -> tuple[list[list[float]], list[float]]:
    """Gram-Schmidt coefficients and squared lengths as floats."""
    n = len(res.basis)
    d, lam = res.d, res.lam
    bstar = [float(Fraction(d[i + 1], d[i])) for i in range(n)]
    mu = [[float(Fraction(lam[i][j], d[j + 1])) for j in range(i)] for i in range(n)]
    return mu, bstar


# -- shortest vector -----------------------------------------------------------

@dataclass(frozen=True)
class SvpCertificate:
    minimum: int
    witness: tuple[int, ...]
    nodes_visited: int


def canonical_sign(v: Sequence[int]) -> tuple[int, ...]:
    """``v`` or ``-v``, whichever has a positive first nonzero coordinate."""
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def shortest_vector(basis: Basis, budget: int = DEFAULT_SVP_BUDGET,
                    delta: Fraction = DEFAULT_DELTA) -> SvpCertificate:
    """Exact minimum of the lattice spanned by ``basis`` with a witness.

    Among all shortest vectors the witness is the lexicographically smallest
    one with positive first nonzero coordinate.
    """
    if not basis:
        raise ValueError("empty basis")
    red = lll(basis, delta)
    b = red.basis
    norms = [dot(v, v) for v in b]
    radius = min(norms)
    mu, bstar = gso_floats(red)
    entry = max(abs(x) for row in b for x in row)
    kern = _backend.select(entry)
    cands, nodes = kern.svp_enum(mu, bstar, float(radius), budget)

    best = radius
    best_vec = canonical_sign(b[norms.index(radius)])
    m = len(b[0])
    for x in cands:
        v = [0] * m
        for xi, row in zip(x, b):
            if xi:
                for t in range(m):
                    v[t] += xi * row[t]
        nv = dot(v, v)
        if nv == 0:
            continue
        cv = canonical_sign(v)
        if nv < best or (nv == best and cv < best_vec):
            best, best_vec = nv, cv
    return SvpCertificate(best, best_vec, nodes)


def minimum_brute(weights: Sequence[int], cap: int,
                  budget: Optional[int] = DEFAULT_ENUM_BUDGET) -> Optional[int]:
    """Smallest norm ``< cap`` of a nonzero ``z`` with ``<z, weights> = 0``.

    Plain enumeration of Z^(n+1) by coordinates, with no reduction step.
    Returns None when no kernel vector is that short.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    s = [int(w) for w in weights]
    m = len(s)
    # suffix bound on |<z_tail, s_tail>| for pruning the dot product
    tail_abs = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        tail_abs[i] = tail_abs[i + 1] + abs(s[i])
    best = None
    limit = cap - 1
    nodes = 0

    def walk(i, norm, acc, lead_zero):
        nonlocal best, limit, nodes
        r = isqrt(limit - norm)
        lo = 0 if lead_zero else -r
        for x in range(lo, r + 1):
            nn = norm + x * x
            if nn > limit:
                if x > 0:
                    break
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(f"brute-force minimum exceeded {budget} nodes")
            nacc = acc + x * s[i]
            lz = lead_zero and x == 0
            if i == m - 1:
                if not lz and nacc == 0:
                    best = nn
                    limit = nn - 1
            # the remaining coordinates satisfy |z_j| <= isqrt(limit - nn)
            elif abs(nacc) <= isqrt(limit - nn) * tail_abs[i + 1]:
                walk(i + 1, nn, nacc, lz)

    if limit >= 1:
        walk(0, 0, 0, True)
    return best
