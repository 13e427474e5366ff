"""Shared domain types, errors and the sequence file format.

Integral quantities are plain Python ``int`` (arbitrary precision) and exact
rationals are ``fractions.Fraction``. Real-valued quantities that take part
in bound comparisons are mpmath intervals evaluated with outward rounding;
see :mod:`museq.density` for the helpers that compare them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from mpmath.ctx_iv import MPIntervalContext
from mpmath.ctx_mp import MPContext

# Private contexts so the global mpmath precision is never touched.
IV = MPIntervalContext()
IV.prec = 96
MP = MPContext()
MP.prec = 128

HighReal = Any  # an ``IV.mpf`` interval; endpoints ``.a`` / ``.b``

DEFAULT_ENUM_BUDGET = 10**8
DEFAULT_SVP_BUDGET = 10**8


class MuSeqError(Exception):
    """Base class for errors raised by this package."""


class BudgetExceeded(MuSeqError):
    """An enumeration needs more work than its configured budget allows.

    This is a desk-scale limit, not a statement about the input.
    """


class NotPositiveDefinite(MuSeqError, ValueError):
    def __init__(self, pivot: int, value):
        super().__init__(f"matrix is not positive definite (pivot {pivot} = {value})")
        self.pivot = pivot


def to_rational(x: Union[int, str, Fraction]) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class MuSequence:
    """A candidate mu-sequence ``1 = s_0, s_1, ...`` together with its mu.

    Construction only checks the cheap shape conditions. Whether every
    prefix lattice really has minimum ``>= mu`` is decided by
    :func:`validate_mu_sequence`.
    """

    mu: int
    terms: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if int(self.mu) != self.mu or self.mu < 2:
            raise ValueError(f"mu must be an integer >= 2, got {self.mu}")
        object.__setattr__(self, "mu", int(self.mu))
        if not self.terms:
            raise ValueError("a mu-sequence needs at least the term s_0 = 1")
        if self.terms[0] != 1:
            raise ValueError(f"s_0 must be 1, got {self.terms[0]}")
        if any(t < 1 for t in self.terms):
            raise ValueError("terms must be strictly positive")

    def __len__(self):
        return len(self.terms)

    @property
    def dimension(self) -> int:
        """Dimension ``n`` of the lattice attached to the full sequence."""
        return len(self.terms) - 1

    def prefix(self, length: int) -> "MuSequence":
        return MuSequence(self.mu, self.terms[:length])

    def extended(self, term: int) -> "MuSequence":
        return MuSequence(self.mu, self.terms + (term,))


@dataclass(frozen=True)
class KernelLattice:
    """The lattice of integer vectors orthogonal to ``weights``."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights or self.weights[0] != 1:
            raise ValueError("kernel lattices need weights[0] = 1")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be strictly positive")

    @property
    def dimension(self) -> int:
        return len(self.weights) - 1

    @property
    def determinant(self) -> int:
        return sum(w * w for w in self.weights)

    def basis(self) -> list[list[int]]:
        from .reduce import kernel_basis

        return kernel_basis(self.weights)

    def gram(self) -> list[list[int]]:
        from .reduce import gram_of

        return gram_of(self.basis())


@dataclass(frozen=True)
class DensityReport:
    n: int
    minimum: int
    determinant: int
    delta: HighReal
    Delta: HighReal
    bound_corollary: Optional[HighReal] = None
    bound_mh: Optional[HighReal] = None
    bound_ball: Optional[HighReal] = None


@dataclass(frozen=True)
class PrefixCertificate:
    length: int
    minimum: Optional[int]
    witness: Optional[tuple[int, ...]]
    passed: bool


@dataclass
class ValidationVerdict:
    passed: bool
    prefixes: list[PrefixCertificate] = field(default_factory=list)
    failing_prefix: Optional[tuple[int, ...]] = None
    witness: Optional[tuple[int, ...]] = None

    @property
    def minima(self) -> list[Optional[int]]:
        return [p.minimum for p in self.prefixes]


def validate_mu_sequence(seq: MuSequence, oracle_budget: int = DEFAULT_SVP_BUDGET) -> ValidationVerdict:
    """Certify that every prefix of ``seq`` spans a lattice of minimum ``>= mu``.

    Each prefix ``(s_0, ..., s_n)`` with ``n >= 1`` is checked by exact SVP
    (LLL followed by enumeration), so the verdict does not depend on how the
    sequence was produced. The scan stops at the first failing prefix.
    Raises :class:`BudgetExceeded` if an SVP call needs more than
    ``oracle_budget`` enumeration nodes.
    """
    from .reduce import kernel_basis, shortest_vector

    verdict = ValidationVerdict(passed=True)
    verdict.prefixes.append(PrefixCertificate(1, None, None, True))
    for length in range(2, len(seq.terms) + 1):
        prefix = seq.terms[:length]
        cert = shortest_vector(kernel_basis(prefix), budget=oracle_budget)
        ok = cert.minimum >= seq.mu
        verdict.prefixes.append(PrefixCertificate(length, cert.minimum, cert.witness, ok))
        if not ok:
            verdict.passed = False
            verdict.failing_prefix = prefix
            verdict.witness = cert.witness
            break
    return verdict


# -- sequence file format ---------------------------------------------------

def sequence_to_document(seq: MuSequence, certified: Optional[bool] = None) -> dict:
    doc: dict = {"mu": str(seq.mu), "terms": [str(t) for t in seq.terms]}
    if certified is not None:
        doc["certified"] = bool(certified)
    return doc


def sequence_from_document(doc: dict) -> tuple[MuSequence, Optional[bool]]:
    """Parse the ``{"mu": ..., "terms": [...], "certified": ...}`` document.

    Numbers are expected as decimal strings; plain JSON integers are
    accepted as well.
    """
    if not isinstance(doc, dict) or "mu" not in doc or "terms" not in doc:
        raise ValueError("sequence document needs fields 'mu' and 'terms'")
    terms = doc["terms"]
    if not isinstance(terms, list):
        raise ValueError("'terms' must be an array")
    certified = doc.get("certified")
    if certified is not None and not isinstance(certified, bool):
        raise ValueError("'certified' must be a boolean")
    return MuSequence(_parse_int(doc["mu"]), tuple(_parse_int(t) for t in terms)), certified


def _parse_int(v) -> int:
    if isinstance(v, bool):
        raise ValueError(f"not an integer: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and v.strip().lstrip("+-").isdigit():
        return int(v.strip())
    raise ValueError(f"not a decimal integer: {v!r}")


def dump_sequence(seq: MuSequence, path: Union[str, Path], certified: Optional[bool] = None) -> None:
    Path(path).write_text(json.dumps(sequence_to_document(seq, certified), indent=2) + "\n")


def load_sequence(path: Union[str, Path]) -> tuple[MuSequence, Optional[bool]]:
    return sequence_from_document(json.loads(Path(path).read_text()))
