"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import sys
import timeit

from museq import _pykernels
from museq.construct import build_sequence
from museq.reduce import gso_floats, kernel_basis, lll

try:
    from museq import _kernels
except ImportError:
    _kernels = None

BUDGET = 10**9


def cases():
    seq = build_sequence(9, 8).sequence.terms
    red = lll(kernel_basis(build_sequence(6, 12).sequence.terms))
    mu, bstar = gso_floats(red)
    radius = float(min(sum(x * x for x in row) for row in red.basis))
    return [
        ("forbidden_pairs mu=9 n=9", lambda k: k.forbidden_pairs(list(seq), 9, BUDGET)),
        ("count_ball n=8 bound=20", lambda k: k.count_ball(8, 20, BUDGET)),
        ("count_ball n=10 bound=12", lambda k: k.count_ball(10, 12, BUDGET)),
        ("svp_enum mu=6 rank 12", lambda k: k.svp_enum(mu, bstar, radius, BUDGET)),
    ]


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels are not built; only the fallback can be timed", file=sys.stderr)
    print(f"{'case':28s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, fn in cases():
        if _kernels is not None:
            assert fn(_pykernels) == fn(_kernels), name
        py = best_of(lambda: fn(_pykernels), args.repeat)
        if _kernels is None:
            print(f"{name:28s} {py * 1e3:12.2f} {'-':>12s} {'-':>8s}")
            continue
        cy = best_of(lambda: fn(_kernels), args.repeat)
        print(f"{name:28s} {py * 1e3:12.2f} {cy * 1e3:12.3f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
