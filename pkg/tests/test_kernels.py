"""Both kernel backends must return identical results and node counts."""
import random

import pytest

from museq import _backend, _pykernels
from museq.core import BudgetExceeded
from museq.reduce import gso_floats, kernel_basis, lll

try:
    from museq import _kernels as ckernels
except ImportError:  # pragma: no cover
    ckernels = None

needs_ext = pytest.mark.skipif(ckernels is None, reason="compiled kernels not built")


def random_prefixes(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 6)
        yield [1] + [rng.randint(1, 60) for _ in range(n - 1)], rng.randint(2, 9)


@needs_ext
def test_forbidden_pairs_identical():
    for s, mu in random_prefixes(1, 60):
        assert _pykernels.forbidden_pairs(s, mu, 10**9) == ckernels.forbidden_pairs(s, mu, 10**9)


@needs_ext
@pytest.mark.parametrize("n", range(1, 8))
def test_count_identical(n):
    for bound in range(0, 15):
        assert _pykernels.count_ball(n, bound, 10**9) == ckernels.count_ball(n, bound, 10**9)


@needs_ext
def test_svp_enum_identical():
    rng = random.Random(7)
    for _ in range(40):
        w = [1] + [rng.randint(1, 50) for _ in range(rng.randint(1, 6))]
        red = lll(kernel_basis(w))
        mu, bstar = gso_floats(red)
        radius = float(min(sum(x * x for x in row) for row in red.basis))
        assert _pykernels.svp_enum(mu, bstar, radius, 10**8) == ckernels.svp_enum(mu, bstar, radius, 10**8)


def test_budget_errors(kernels):
    with pytest.raises(BudgetExceeded):
        kernels.forbidden_pairs([1, 2, 3, 4, 5], 9, 10)
    with pytest.raises(BudgetExceeded):
        kernels.count_ball(6, 20, 10)
    red = lll(kernel_basis([1] * 10))
    mu, bstar = gso_floats(red)
    with pytest.raises(BudgetExceeded):
        kernels.svp_enum(mu, bstar, 2.0, 5)


def test_trivial_inputs(kernels):
    assert kernels.forbidden_pairs([1], 2, 100) == ([], 0)
    assert kernels.count_ball(1, 0, 100) == (1, 0)
    assert kernels.svp_enum([], [], 1.0, 100) == ([], 0)


def test_select_falls_back_for_big_integers():
    assert _backend.select(2**70) is _pykernels
    if ckernels is not None and _backend.NAME == "cython":
        assert _backend.select(10) is ckernels
