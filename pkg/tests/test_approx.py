import random
from fractions import Fraction

import mpmath
import pytest

from museq.approx import (
    approximate,
    build_B,
    cholesky,
    convergence_sweep,
    kernel_vector,
    parse_gram,
    round_half_up,
)
from museq.core import NotPositiveDefinite
from museq.density import midpoint
from museq.reduce import determinant_identity_check

A2 = [[2, 1], [1, 2]]


def oracle_pipeline(G, kappa):
    """Textbook Cholesky in 60-digit mpmath, rounding, and the exact error."""
    n = len(G)
    with mpmath.workdps(60):
        L = mpmath.cholesky(mpmath.matrix([[mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
                                            for x in row] for row in G]))
        Lr = [[int(mpmath.floor(kappa * L[i, j] + mpmath.mpf(1) / 2)) if j <= i else 0
               for j in range(n)] for i in range(n)]
    B = [[Lr[i][j] if j <= i else int(j == i + 1) for j in range(n + 1)] for i in range(n)]
    err = max(abs(Fraction(sum(a * b for a, b in zip(B[i], B[j])), kappa * kappa) - Fraction(G[i][j]))
              for i in range(n) for j in range(n))
    return Lr, err


def test_cholesky_examples():
    L = cholesky([[1, 0], [0, 1]])
    assert [[float(x) for x in r] for r in L] == [[1, 0], [0, 1]]
    L = cholesky(A2)
    assert float(L[0][0]) == pytest.approx(2 ** 0.5, rel=1e-15)
    assert float(L[1][0]) == pytest.approx(2 ** -0.5, rel=1e-15)
    assert float(L[1][1]) == pytest.approx(1.5 ** 0.5, rel=1e-15)
    assert float(cholesky([[4]])[0][0]) == 2.0


def test_cholesky_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite) as exc:
        cholesky([[1, 2], [2, 1]])
    assert exc.value.pivot == 1
    with pytest.raises(NotPositiveDefinite) as exc:
        cholesky([[0]])
    assert exc.value.pivot == 0


@pytest.mark.parametrize("Lr, B, v", [
    ([[3]], [[3, 1]], [1, -3]),
    ([[3, 0], [1, 2]], [[3, 1, 0], [1, 2, 1]], [1, -3, 5]),
    ([[14, 0], [7, 12]], [[14, 1, 0], [7, 12, 1]], [1, -14, 161]),
])
def test_build_B_and_kernel_vector(Lr, B, v):
    assert build_B(Lr) == B
    assert kernel_vector(B) == v


def test_kernel_vector_rejects_bad_shape():
    with pytest.raises(ValueError):
        kernel_vector([[3, 2]])
    with pytest.raises(ValueError):
        kernel_vector([[3, 1, 1], [1, 2, 1]])


def test_round_half_up():
    assert [round_half_up(mpmath.mpf(x)) for x in (0.5, 1.5, -0.5, -1.5, 2.4999)] == [1, 2, 0, -1, 2]


def test_approximate_examples():
    r = approximate(A2, 10)
    assert r.L_rounded == [[14, 0], [7, 12]]
    assert r.s == (1, 14, 161)
    assert r.error == Fraction(1, 10)
    # the superdiagonal one of B adds 1 to kappa^2, so the identity is not reproduced exactly
    for k in (1, 7, 1000):
        r = approximate([[1]], k)
        assert r.s == (1, k) and r.error == Fraction(1, k * k)
    # 0.0133 exactly; the "<= 0.012" printed for this case does not hold
    r = approximate(A2, 100)
    assert r.error == Fraction(133, 10000)
    assert oracle_pipeline(A2, 100)[1] == r.error
    with pytest.raises(ValueError):
        approximate(A2, 0)


def random_gram(rng, n):
    while True:
        M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        G = [[sum(M[i][k] * M[j][k] for k in range(n)) + (i == j) * Fraction(rng.randint(0, 3), rng.randint(1, 4))
              for j in range(n)] for i in range(n)]
        if G[0][0] > 0:
            try:
                cholesky(G)
                return G
            except NotPositiveDefinite:
                continue


def test_pipeline_invariants_random():
    rng = random.Random(1234)
    for trial in range(1000):
        n = rng.randint(1, 4)
        G = random_gram(rng, n)
        kappa = rng.randint(1, 10**4)
        r = approximate(G, kappa)
        assert r.v[0] == 1 and r.s[0] == 1
        for row in r.B:
            assert sum(a * b for a, b in zip(row, r.v)) == 0
        for i in range(n):
            assert r.B[i][i + 1] == 1
            assert all(x == 0 for x in r.B[i][i + 2:])
            for j in range(i + 1):
                assert abs(r.L_rounded[i][j] - kappa * r.L[i][j]) <= 0.5 + 2 ** -40
        if trial % 10 == 0:
            Lr, err = oracle_pipeline(G, kappa)
            assert Lr == r.L_rounded and err == r.error
            assert determinant_identity_check(r.s)[2]


def test_sweep_a2():
    rows = convergence_sweep(A2, [10, 20, 40, 80])
    errors = [r.error for r in rows]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert all(r.status == "ok" for r in rows)
    # error(kappa) <= C / kappa over a longer doubling sweep with one bounded C
    kappas = [10 * 2 ** i for i in range(10)]
    C = max(approximate(A2, k).error * k for k in kappas)
    assert C < 2
    last = rows[-1]
    assert abs(midpoint(last.delta) / (1 / (2 * 3 ** 0.5)) - 1) <= 0.05
    assert last.determinant == sum(x * x for x in last.s)


def test_sweep_identity_and_budget():
    rows = convergence_sweep([[1, 0], [0, 1]], [3, 9, 27])
    assert [r.error for r in rows] == [Fraction(1, 3), Fraction(1, 9), Fraction(1, 27)]
    assert all(r.status == "ok" and r.minimum >= 1 for r in rows)
    rows = convergence_sweep(A2, [10, 10**6], svp_budget=1)
    assert [r.status for r in rows] in (["ok", "budget"], ["budget", "budget"])


def test_parse_gram():
    G = parse_gram("2\n2 1/2\n1/2 3\n")
    assert G == [[2, Fraction(1, 2)], [Fraction(1, 2), 3]]
    assert parse_gram("# comment\n1\n\n7\n") == [[7]]
    for bad in ("", "2\n1 0\n", "2\n1 0\n1 1\n", "x\n1\n", "1 2\n3\n", "1\n1/0\n"):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_gram(bad)
