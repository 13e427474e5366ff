"""Approximating an arbitrary lattice by the kernel lattice of one integer vector.

Given a Gram matrix ``G = L L^t`` and a scale ``kappa``, round ``kappa L`` to
an integer lower-triangular ``Lr``, append a superdiagonal of ones to get an
``n x (n+1)`` integer matrix ``B``, and solve ``B v = 0`` with ``v_0 = 1``
by forward substitution. The rows of ``B`` span the kernel lattice of
``v``, and ``B B^t / kappa^2`` tends to ``G`` as ``kappa`` grows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .core import DEFAULT_SVP_BUDGET, MP, BudgetExceeded, HighReal, NotPositiveDefinite, to_rational
from .density import center_density, unit_ball_volume
from .reduce import kernel_basis, shortest_vector

Matrix = list[list[Fraction]]

# slack on the rounding check |Lr - kappa L| <= 1/2
ROUNDING_MARGIN = MP.mpf(2) ** -40


def parse_gram(text: str) -> Matrix:
    """Read ``n`` followed by ``n`` rows of integers or ``p/q`` rationals."""
    tokens = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not tokens or len(tokens[0]) != 1:
        raise ValueError("first line must hold the dimension n")
    n = int(tokens[0][0])
    rows = tokens[1:]
    if n < 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n} rows of {n} entries")
    G = [[to_rational(x) for x in r] for r in rows]
    for i in range(n):
        for j in range(i):
            if G[i][j] != G[j][i]:
                raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
    return G


def read_gram(path: Union[str, Path]) -> Matrix:
    return parse_gram(Path(path).read_text())


def cholesky(G: Sequence[Sequence]) -> list[list]:
    """Lower-triangular ``L`` with ``L L^t = G`` in 128-bit arithmetic."""
    n = len(G)
    L = [[MP.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            g = G[i][j]
            g = MP.mpf(g.numerator) / g.denominator if isinstance(g, Fraction) else MP.mpf(g)
            acc = g - MP.fsum(L[i][k] * L[j][k] for k in range(j))
            if i == j:
                if acc <= 0:
                    raise NotPositiveDefinite(i, acc)
                L[i][i] = MP.sqrt(acc)
            else:
                L[i][j] = acc / L[j][j]
    return L


def round_half_up(x) -> int:
    return int(MP.floor(x + MP.mpf(1) / 2))


def build_B(L_rounded: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(L_rounded)
    B = []
    for i in range(n):
        row = [int(L_rounded[i][j]) if j <= i else 0 for j in range(n + 1)]
        row[i + 1] = 1
        B.append(row)
    return B


def kernel_vector(B: Sequence[Sequence[int]]) -> list[int]:
    """The integer ``v`` with ``v_0 = 1`` and ``B v = 0``."""
    n = len(B)
    v = [1]
    for i in range(n):
        if B[i][i + 1] != 1 or any(B[i][j] for j in range(i + 2, n + 1)):
            raise ValueError("B must have ones on the superdiagonal and zeros beyond")
        v.append(-sum(B[i][j] * v[j] for j in range(i + 1)))
    return v


@dataclass(frozen=True)
class ApproxResult:
    kappa: int
    L: list
    L_rounded: list[list[int]]
    B: list[list[int]]
    v: list[int]
    s: tuple[int, ...]
    error: Fraction

    @property
    def n(self) -> int:
        return len(self.B)


def approximate(G: Sequence[Sequence], kappa: int) -> ApproxResult:
    """Run the rounding construction for one scale ``kappa``.

    ``error`` is the exact max-norm of ``B B^t / kappa^2 - G``. The weight
    vector ``s = |v|`` starts with ``s_0 = |v_0| = 1``.
    """
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    G = [[Fraction(x) for x in row] for row in G]
    n = len(G)
    L = cholesky(G)
    Lr = [[round_half_up(kappa * L[i][j]) if j <= i else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1):
            if abs(Lr[i][j] - kappa * L[i][j]) > MP.mpf(1) / 2 + ROUNDING_MARGIN:
                raise AssertionError(f"rounding invariant broken at ({i}, {j})")
    B = build_B(Lr)
    v = kernel_vector(B)
    k2 = kappa * kappa
    error = max(
        abs(Fraction(sum(a * b for a, b in zip(B[i], B[j])), k2) - G[i][j])
        for i in range(n) for j in range(n)
    )
    return ApproxResult(kappa, L, Lr, B, v, tuple(abs(x) for x in v), error)


@dataclass(frozen=True)
class SweepRow:
    kappa: int
    error: Fraction
    s: tuple[int, ...]
    minimum: Optional[int]
    determinant: int
    delta: Optional[HighReal]
    Delta: Optional[HighReal]
    status: str


def convergence_sweep(G: Sequence[Sequence], kappas: Sequence[int],
                      svp_budget: int = DEFAULT_SVP_BUDGET) -> list[SweepRow]:
    """Approximation error and packing density of the kernel lattice for each ``kappa``.

    An SVP budget overrun only marks its own row (``status="budget"``).
    """
    rows = []
    for kappa in kappas:
        res = approximate(G, kappa)
        n = res.n
        det = sum(x * x for x in res.s)
        try:
            cert = shortest_vector(kernel_basis(res.s), budget=svp_budget)
        except BudgetExceeded:
            rows.append(SweepRow(kappa, res.error, res.s, None, det, None, None, "budget"))
            continue
        delta = center_density(cert.minimum, det, n)
        rows.append(SweepRow(kappa, res.error, res.s, cert.minimum, det, delta,
                             delta * unit_ball_volume(n), "ok"))
    return rows
