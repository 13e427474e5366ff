"""Command-line driver: ``museq build|verify|table|bounds|count|approx``.

Exit codes: 0 success, 2 validation failure (or no admissible interval
term), 3 budget exhausted, 4 bad input.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .approx import convergence_sweep, read_gram
from .construct import ExtensionFailed, IntervalSchedule, build_sequence
from .core import (
    DEFAULT_ENUM_BUDGET,
    DEFAULT_SVP_BUDGET,
    BudgetExceeded,
    MuSequence,
    dump_sequence,
    load_sequence,
    validate_mu_sequence,
)
from .density import (
    bounds_row,
    certainly_le,
    corollary_density_bound,
    lemma31_bound,
    midpoint,
    packing_density,
    center_density,
    upper,
)
from .enumerate import count_norm_le
from .reduce import kernel_basis, shortest_vector

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INPUT = 0, 2, 3, 4

BUILD_COLUMNS = ["n", "s_n", "f", "bound_first", "bound_second", "sigma_tilde",
                 "minimum", "determinant", "delta", "Delta"]
VERIFY_COLUMNS = ["n", "s_n", "minimum", "witness", "status", "delta", "Delta"]
TABLE_COLUMNS = ["mu", "n", "s_n", "f", "bound_first", "bound_second", "sigma_tilde",
                 "minimum", "Delta", "corollary", "status"]
BOUNDS_COLUMNS = ["n", "V_n", "corollary", "mh", "ball", "mainB_over_2n"]
COUNT_COLUMNS = ["n", "mu", "count", "bound", "status"]
APPROX_COLUMNS = ["kappa", "error", "s", "minimum", "determinant", "delta", "Delta", "status"]


class InputError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """``"5"``, ``"2,3,7"`` or ``"2..8"`` (inclusive)."""
    try:
        out: list[int] = []
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise InputError(f"cannot parse integer list {text!r}") from None
    if not out:
        raise InputError("empty integer list")
    return out


def fmt(x, digits: int = 10) -> str:
    if x is None:
        return "-"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{float(x):.{digits}g}"
    return f"{midpoint(x):.{digits}g}"


def emit(rows: list[dict], columns: list[str], fmt_name: str, out) -> None:
    if fmt_name == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([r[c] for c in columns])
    out.write(buf.getvalue())


def _open_out(path: Optional[str]):
    return open(path, "w", newline="") if path else contextlib.nullcontext(sys.stdout)


def _schedule(args) -> object:
    if args.strategy == "greedy":
        return "greedy"
    try:
        return IntervalSchedule(sigma=args.sigma, eps=args.eps if args.eps is not None else "0.1")
    except (ValueError, ArithmeticError) as exc:
        raise InputError(str(exc)) from None


def _certify(seq: MuSequence, svp_budget: int) -> list[Optional[int]]:
    """Certified minimum of every prefix lattice (None for the empty lattice)."""
    minima: list[Optional[int]] = [None]
    for length in range(2, len(seq.terms) + 1):
        minima.append(shortest_vector(kernel_basis(seq.terms[:length]), budget=svp_budget).minimum)
    return minima


# -- commands -------------------------------------------------------------------

def cmd_build(args) -> int:
    if len(args.mu) != 1 or len(args.dim) != 1:
        raise InputError("build takes a single --mu and a single --dim")
    mu, dim = args.mu[0], args.dim[0]
    result = build_sequence(mu, dim, _schedule(args), budget=args.enum_budget)
    seq = result.sequence
    minima = _certify(seq, args.svp_budget)
    certified = all(m >= mu for m in minima[1:])
    rows = []
    for rep in result.reports:
        n = rep.n
        det = sum(t * t for t in seq.terms[: n + 1])
        m = minima[n]
        delta = center_density(m, det, n)
        rows.append({
            "n": n, "s_n": rep.s_n, "f": rep.f,
            "bound_first": fmt(rep.bound_first), "bound_second": fmt(rep.bound_second),
            "sigma_tilde": fmt(rep.sigma_tilde), "minimum": m, "determinant": det,
            "delta": fmt(delta), "Delta": fmt(packing_density(m, det, n)),
        })
    if args.out:
        dump_sequence(seq, args.out, certified=certified)
    with _open_out(args.report) as out:
        emit(rows, BUILD_COLUMNS, args.format, out)
    return EXIT_OK if certified else EXIT_INVALID


def cmd_verify(args) -> int:
    try:
        seq, _ = load_sequence(args.file)
    except (OSError, ValueError) as exc:
        raise InputError(f"{args.file}: {exc}") from None
    verdict = validate_mu_sequence(seq, oracle_budget=args.svp_budget)
    rows = []
    for p in verdict.prefixes:
        n = p.length - 1
        det = sum(t * t for t in seq.terms[: p.length])
        row = {"n": n, "s_n": seq.terms[n], "minimum": fmt(p.minimum),
               "witness": " ".join(map(str, p.witness)) if p.witness else "-",
               "status": "PASS" if p.passed else "FAIL", "delta": "-", "Delta": "-"}
        if p.minimum is not None:
            row["delta"] = fmt(center_density(p.minimum, det, n))
            row["Delta"] = fmt(packing_density(p.minimum, det, n))
        rows.append(row)
    with _open_out(args.out) as out:
        if args.format == "json":
            doc = {"mu": str(seq.mu), "verdict": "PASS" if verdict.passed else "FAIL",
                   "failing_prefix": [str(t) for t in verdict.failing_prefix] if verdict.failing_prefix else None,
                   "prefixes": rows}
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            emit(rows, VERIFY_COLUMNS, "csv", out)
    if verdict.passed:
        print("PASS", file=sys.stderr)
        return EXIT_OK
    w = verdict.witness
    print(f"FAIL at prefix {verdict.failing_prefix}: witness {w} has norm "
          f"{sum(x * x for x in w)} < {seq.mu}", file=sys.stderr)
    return EXIT_INVALID


def cmd_table(args) -> int:
    rows = []
    ok = True
    schedule = _schedule(args)
    for mu in args.mu:
        result = build_sequence(mu, args.dim[0], schedule, budget=args.enum_budget)
        terms = result.sequence.terms
        for rep in result.reports:
            n = rep.n
            det = sum(t * t for t in terms[: n + 1])
            m = shortest_vector(kernel_basis(terms[: n + 1]), budget=args.svp_budget).minimum
            Delta = packing_density(m, det, n)
            cor = corollary_density_bound(mu, n)
            good = m >= mu and certainly_le(cor, Delta)
            if schedule == "greedy":
                good = good and rep.s_n <= rep.f + 1 and certainly_le(rep.f + 1, rep.bound_first) \
                    and certainly_le(rep.bound_first, rep.bound_second)
            ok = ok and good
            rows.append({
                "mu": mu, "n": n, "s_n": rep.s_n, "f": rep.f,
                "bound_first": fmt(rep.bound_first), "bound_second": fmt(rep.bound_second),
                "sigma_tilde": fmt(rep.sigma_tilde), "minimum": m, "Delta": fmt(Delta),
                "corollary": fmt(cor), "status": "OK" if good else "VIOLATION",
            })
    with _open_out(args.out) as out:
        emit(rows, TABLE_COLUMNS, args.format, out)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_bounds(args) -> int:
    rows = []
    for n in args.dim:
        if n < 2:
            raise InputError("bounds need dimensions >= 2")
        r = bounds_row(n, args.mu[0] if args.mu else None)
        rows.append({k: (v if k == "n" else fmt(v)) for k, v in r.items()})
    with _open_out(args.out) as out:
        emit(rows, BOUNDS_COLUMNS, args.format, out)
    return EXIT_OK


def cmd_count(args) -> int:
    rows = []
    ok = True
    for n in args.dim:
        for mu in args.mu:
            c = count_norm_le(n, mu, budget=args.enum_budget)
            bound = lemma31_bound(n, mu)
            good = certainly_le(c, bound)
            ok = ok and good
            rows.append({"n": n, "mu": mu, "count": c, "bound": f"{float(upper(bound)):.4f}",
                         "status": "OK" if good else "VIOLATION"})
    with _open_out(args.out) as out:
        emit(rows, COUNT_COLUMNS, args.format, out)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_approx(args) -> int:
    try:
        G = read_gram(args.gram)
    except (OSError, ValueError) as exc:
        raise InputError(f"{args.gram}: {exc}") from None
    kappas = parse_int_list(args.kappas)
    rows = []
    for r in convergence_sweep(G, kappas, svp_budget=args.svp_budget):
        rows.append({"kappa": r.kappa, "error": fmt(r.error), "s": " ".join(map(str, r.s)),
                     "minimum": fmt(r.minimum), "determinant": r.determinant,
                     "delta": fmt(r.delta), "Delta": fmt(r.Delta), "status": r.status})
    with _open_out(args.out) as out:
        emit(rows, APPROX_COLUMNS, args.format, out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="museq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, mu=False, dim=False, strategy=False, enum=False, svp=False):
        if mu:
            sp.add_argument("--mu", type=_int_list, required=mu == "required",
                            help="integer, list a,b,c or range a..b")
        if dim:
            sp.add_argument("--dim", "--dims", dest="dim", type=_int_list, required=True)
        if strategy:
            sp.add_argument("--strategy", choices=["greedy", "interval"], default="greedy")
            sp.add_argument("--sigma", type=str, default=None,
                            help="interval strategy: sigma_n as a number, or 'track' to follow the "
                                 "prefix statistic (default: sum exp(-k^2 pi))")
            sp.add_argument("--eps", type=str, default=None, help="interval strategy: relative width")
        if enum:
            sp.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
        if svp:
            sp.add_argument("--svp-budget", type=int, default=DEFAULT_SVP_BUDGET)
        sp.add_argument("--format", choices=["csv", "json"], default="csv")

    b = sub.add_parser("build", help="construct a mu-sequence and certify it")
    common(b, mu="required", dim=True, strategy=True, enum=True, svp=True)
    b.add_argument("--out", help="write the sequence file here")
    b.add_argument("--report", help="write the per-step report here (default stdout)")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="re-certify a sequence file")
    v.add_argument("file")
    common(v, svp=True)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="per-step bound checks and sigma statistic")
    common(t, mu="required", dim=True, strategy=True, enum=True, svp=True)
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    bd = sub.add_parser("bounds", help="volumes and comparison bounds per dimension")
    common(bd, mu=True, dim=True)
    bd.add_argument("--out")
    bd.set_defaults(func=cmd_bounds)

    c = sub.add_parser("count", help="exact ball counts against the volume bound")
    common(c, mu="required", dim=True, enum=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_count)

    a = sub.add_parser("approx", help="approximate a Gram matrix by kernel lattices")
    a.add_argument("--gram", required=True)
    a.add_argument("--kappas", required=True)
    common(a, svp=True)
    a.add_argument("--out")
    a.set_defaults(func=cmd_approx)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ExtensionFailed as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
