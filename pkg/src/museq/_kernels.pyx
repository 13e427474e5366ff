# distutils: language = c++
"""Compiled enumeration kernels.

Same contracts and visiting order as ``museq._pykernels``. Integer work is
done in 64-bit; callers must check that their inputs cannot overflow (see
``museq._backend.fits_int64``).
"""
from libc.math cimport sqrt, ceil, floor
from libcpp.vector cimport vector

from .core import BudgetExceeded

cdef double SLACK_REL = 1e-9
cdef double SLACK_ABS = 1e-9


cdef inline long long isqrt_ll(long long v):
    cdef long long r
    if v <= 0:
        return 0
    r = <long long>sqrt(<double>v)
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


cdef struct ForbiddenCtx:
    int n
    long long mu
    long long bound
    long long budget
    long long nodes
    bint over
    long long *s


cdef void _forbidden_walk(ForbiddenCtx *ctx, int i, long long norm, long long dot,
                          bint lead_zero, vector[long long] *out_a,
                          vector[long long] *out_k):
    cdef long long r = isqrt_ll(ctx.bound - norm)
    cdef long long lo = 0 if lead_zero else -r
    cdef long long x, nn, dd, d, k, kmax
    cdef bint lz
    cdef bint last = i == ctx.n - 1
    cdef long long si = ctx.s[i]
    x = lo
    while x <= r:
        ctx.nodes += 1
        if ctx.nodes > ctx.budget:
            ctx.over = True
            return
        nn = norm + x * x
        dd = dot + x * si
        lz = lead_zero and x == 0
        if last:
            if not lz:
                d = -dd if dd < 0 else dd
                kmax = isqrt_ll(ctx.mu - 1 - nn)
                k = 1
                while k <= kmax:
                    if d % k == 0:
                        out_a.push_back(d // k)
                        out_k.push_back(k)
                    k += 1
        else:
            _forbidden_walk(ctx, i + 1, nn, dd, lz, out_a, out_k)
            if ctx.over:
                return
        x += 1


def forbidden_pairs(s, long long mu, long long budget):
    cdef int n = len(s)
    cdef vector[long long] sv
    cdef vector[long long] out_a
    cdef vector[long long] out_k
    cdef ForbiddenCtx ctx
    cdef size_t t
    if mu - 2 < 1 or n == 0:
        return [], 0
    for v in s:
        sv.push_back(v)
    ctx.n = n
    ctx.mu = mu
    ctx.bound = mu - 2
    ctx.budget = budget
    ctx.nodes = 0
    ctx.over = False
    ctx.s = sv.data()
    _forbidden_walk(&ctx, 0, 0, 0, True, &out_a, &out_k)
    if ctx.over:
        raise BudgetExceeded(f"forbidden-set enumeration exceeded {budget} nodes")
    pairs = [(out_a[t], out_k[t]) for t in range(out_a.size())]
    return pairs, ctx.nodes


cdef long long _count_walk(int n, int i, long long rem, long long *nodes,
                           long long budget):
    cdef long long r, x, total, sub
    if i == n - 1:
        return 2 * isqrt_ll(rem) + 1
    r = isqrt_ll(rem)
    total = 0
    x = -r
    while x <= r:
        nodes[0] += 1
        if nodes[0] > budget:
            return -1
        sub = _count_walk(n, i + 1, rem - x * x, nodes, budget)
        if sub < 0:
            return -1
        total += sub
        x += 1
    return total


def count_ball(int n, long long bound, long long budget):
    cdef long long nodes = 0
    cdef long long total = _count_walk(n, 0, bound, &nodes, budget)
    if total < 0:
        raise BudgetExceeded(f"ball count exceeded {budget} nodes")
    return total, nodes


cdef struct SvpCtx:
    int n
    double *mu      # row-major n*n, mu[j*n + i] for i < j
    double *bstar
    long long *x
    double bound
    long long budget
    long long nodes
    bint over


cdef void _svp_walk(SvpCtx *ctx, int i, double partial, bint lead_zero,
                    vector[long long] *out):
    cdef int n = ctx.n
    cdef double c = 0.0
    cdef int j
    for j in range(i + 1, n):
        c -= ctx.mu[j * n + i] * ctx.x[j]
    cdef double bi = ctx.bstar[i]
    cdef double rem = ctx.bound - partial
    if rem < 0.0:
        return
    cdef double r = sqrt(rem / bi)
    cdef long long lo = <long long>ceil(c - r)
    cdef long long hi = <long long>floor(c + r)
    cdef long long xi
    cdef double d, ln, nb
    cdef bint lz
    if lead_zero and lo < 0:
        lo = 0
    xi = lo
    while xi <= hi:
        d = xi - c
        ln = partial + bi * d * d
        if ln > ctx.bound:
            if xi > c:
                break
            xi += 1
            continue
        ctx.nodes += 1
        if ctx.nodes > ctx.budget:
            ctx.over = True
            return
        ctx.x[i] = xi
        lz = lead_zero and xi == 0
        if i == 0:
            if not lz:
                for j in range(n):
                    out.push_back(ctx.x[j])
                nb = ln * (1.0 + SLACK_REL) + SLACK_ABS
                if nb < ctx.bound:
                    ctx.bound = nb
        else:
            _svp_walk(ctx, i - 1, ln, lz, out)
            if ctx.over:
                return
        xi += 1
    ctx.x[i] = 0


def svp_enum(mu, bstar, double radius, long long budget):
    cdef int n = len(bstar)
    cdef vector[double] muv
    cdef vector[double] bv
    cdef vector[long long] xv
    cdef vector[long long] out
    cdef SvpCtx ctx
    cdef int i, j
    cdef size_t t
    if n == 0:
        return [], 0
    muv.resize(n * n, 0.0)
    for i in range(n):
        row = mu[i]
        for j in range(i):
            muv[i * n + j] = row[j]
        bv.push_back(bstar[i])
    xv.resize(n, 0)
    ctx.n = n
    ctx.mu = muv.data()
    ctx.bstar = bv.data()
    ctx.x = xv.data()
    ctx.bound = radius * (1.0 + SLACK_REL) + SLACK_ABS
    ctx.budget = budget
    ctx.nodes = 0
    ctx.over = False
    _svp_walk(&ctx, n - 1, 0.0, True, &out)
    if ctx.over:
        raise BudgetExceeded(f"SVP enumeration exceeded {budget} nodes")
    flat = [out[t] for t in range(out.size())]
    cands = [tuple(flat[t:t + n]) for t in range(0, len(flat), n)]
    return cands, ctx.nodes
