"""Pure-Python versions of the enumeration kernels.

Every function here has a twin with the same signature and the same
visiting order in ``_kernels.pyx``. The node counts returned by both must
agree, which the test-suite checks.
"""
from __future__ import annotations

from math import ceil, floor, isqrt, sqrt

from .core import BudgetExceeded

SLACK_REL = 1e-9
SLACK_ABS = 1e-9


def forbidden_pairs(s, mu, budget):
    """Return ``(pairs, nodes)`` for the weight prefix ``s``.

    ``pairs`` lists every ``(a, k)`` with ``a*k = |<z, s>|``, ``k >= 1`` and
    ``|z|^2 + k^2 < mu``, over half-mode ``z`` (first nonzero coordinate
    positive). Duplicates are not removed.
    """
    n = len(s)
    bound = mu - 2
    pairs = []
    nodes = 0
    if bound < 1 or n == 0:
        return pairs, nodes

    def walk(i, norm, dot, lead_zero):
        nonlocal nodes
        r = isqrt(bound - norm)
        lo = 0 if lead_zero else -r
        si = s[i]
        last = i == n - 1
        for x in range(lo, r + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"forbidden-set enumeration exceeded {budget} nodes")
            nn = norm + x * x
            dd = dot + x * si
            lz = lead_zero and x == 0
            if last:
                if lz:
                    continue
                d = -dd if dd < 0 else dd
                for k in range(1, isqrt(mu - 1 - nn) + 1):
                    if d % k == 0:
                        pairs.append((d // k, k))
            else:
                walk(i + 1, nn, dd, lz)

    walk(0, 0, 0, True)
    return pairs, nodes


def count_ball(n, bound, budget):
    """Count all ``z`` in Z^n with ``|z|^2 <= bound`` (zero included).

    Returns ``(count, nodes)``; the innermost coordinate is counted in closed
    form.
    """
    nodes = 0

    def walk(i, rem):
        nonlocal nodes
        if i == n - 1:
            return 2 * isqrt(rem) + 1
        r = isqrt(rem)
        total = 0
        for x in range(-r, r + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"ball count exceeded {budget} nodes")
            total += walk(i + 1, rem - x * x)
        return total

    return walk(0, bound), nodes


def svp_enum(mu, bstar, radius, budget):
    """Enumerate coefficient vectors of a lattice of norm at most ``radius``.

    ``mu[i][j]`` (``j < i``) and ``bstar`` are the Gram-Schmidt data of a
    basis. The search keeps a best-so-far bound that only shrinks, with a
    relative slack so that rounding can never prune a true minimal vector.
    Only one of each pair ``x, -x`` is visited.

    Returns ``(candidates, nodes)`` where ``candidates`` holds every leaf
    that was within the bound at the time it was reached; callers must
    verify norms exactly.
    """
    n = len(bstar)
    x = [0] * n
    cands = []
    nodes = 0
    bound = radius * (1.0 + SLACK_REL) + SLACK_ABS

    def walk(i, partial, lead_zero):
        nonlocal nodes, bound
        c = 0.0
        for j in range(i + 1, n):
            c -= mu[j][i] * x[j]
        bi = bstar[i]
        rem = bound - partial
        if rem < 0.0:
            return
        r = sqrt(rem / bi)
        lo = ceil(c - r)
        hi = floor(c + r)
        if lead_zero and lo < 0:
            lo = 0
        for xi in range(lo, hi + 1):
            d = xi - c
            ln = partial + bi * d * d
            if ln > bound:
                if xi > c:
                    break
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"SVP enumeration exceeded {budget} nodes")
            x[i] = xi
            lz = lead_zero and xi == 0
            if i == 0:
                if not lz:
                    cands.append(tuple(x))
                    nb = ln * (1.0 + SLACK_REL) + SLACK_ABS
                    if nb < bound:
                        bound = nb
            else:
                walk(i - 1, ln, lz)
        x[i] = 0

    if n:
        walk(n - 1, 0.0, True)
    return cands, nodes
