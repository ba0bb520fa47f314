"""Decide the universal cover from a tensor polynomial psi.

psi is homogeneous of degree k = m * n in n variables.  Its irreducible
factors N_j with multiplicities a_j determine each factor domain through
rank r_j = deg N_j and dimension n_j = a_j r_j / m.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .domains import DomainProduct, IrreducibleDomain, lookup
from .polyalg import (
    FactoredForm,
    Irreducibility,
    Polynomial,
    exact_divide,
    irreducibility_check,
    split_coprime,
    squarefree_decomposition,
    variable_blocks,
)

REASON_DEGREE = "degree not a multiple of dim"
REASON_FRACTIONAL = "factor dimension not an integer"
REASON_NO_DOMAIN = "no tube domain with (r,n)"
REASON_DIM_MISMATCH = "dimension mismatch"
REASON_UNDECIDED = "irreducibility undecided"

DEFAULT_TRIALS = 32


class Verdict(enum.Enum):
    POLYDISK = "Polydisk"
    TUBE_PRODUCT = "TubeProduct"
    REJECTED = "Rejected"


@dataclass(frozen=True)
class FactorRecord:
    poly: Polynomial
    degree: int
    multiplicity: int
    dim: Fraction | None
    domain: IrreducibleDomain | None
    # set when poly is an irreducible binary form counted as one of its linear factors over C
    complex_linear: bool = False

    def to_json(self) -> dict:
        dim = None
        if self.dim is not None:
            dim = int(self.dim) if self.dim.denominator == 1 else str(self.dim)
        out = {
            "poly": str(self.poly),
            "degree": self.degree,
            "multiplicity": self.multiplicity,
            "dim": dim,
            "domain": None if self.domain is None else str(self.domain),
        }
        if self.complex_linear:
            out["complex_linear"] = True
        return out


@dataclass
class ClassificationReport:
    k: int
    n: int
    m: int | None
    factors: list[FactorRecord] = field(default_factory=list)
    verdict: Verdict = Verdict.REJECTED
    product: DomainProduct | None = None
    reason: str | None = None
    detail: str | None = None
    offending: Polynomial | None = None
    signature_character_possible: bool = False
    blocks: list[list[int]] = field(default_factory=list)
    semispecial: bool = False

    @property
    def accepted(self) -> bool:
        return self.verdict is not Verdict.REJECTED

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "factors": [f.to_json() for f in self.factors],
            "verdict": self.verdict.value,
        }
        if self.product is not None:
            out["product"] = str(self.product)
        if self.reason is not None:
            out["reason"] = self.reason
            out["detail"] = self.detail
        if self.offending is not None:
            out["offending"] = str(self.offending)
        out["signature_character_possible"] = self.signature_character_possible
        return out


def _reject(report: ClassificationReport, reason: str, detail: str, offending: Polynomial | None = None):
    report.verdict = Verdict.REJECTED
    report.reason = reason
    report.detail = detail
    report.offending = offending
    return report


def _prepare(psi: Polynomial, n: int) -> Polynomial:
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if psi.is_zero():
        raise ValueError("psi is the zero polynomial")
    if psi.is_homogeneous() is None:
        raise ValueError("psi is not homogeneous")
    if psi.nvars > n:
        extra = [v for v in psi.support() if v > n]
        if extra:
            raise ValueError(f"psi uses variable x{extra[0]} beyond dimension {n}")
        return psi.embed(n, list(range(1, n + 1)))
    if psi.nvars < n:
        return psi.embed(n, list(range(1, psi.nvars + 1)))
    return psi


def irreducible_factors(
    psi: Polynomial | FactoredForm, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> tuple[list[tuple[Polynomial, int, bool]], Polynomial | None]:
    """Irreducible factors (poly, multiplicity, splits_over_complex) of psi.

    Returns the offending piece as second element when irreducibility stays
    undecided within the trial budget.
    """
    rng = random.Random(seed)
    out = []
    ff = psi if isinstance(psi, FactoredForm) else squarefree_decomposition(psi)
    for s, mult in ff.factors:
        stack = split_coprime(s)
        while stack:
            q = stack.pop()
            if q.is_constant():
                continue
            res = irreducibility_check(q, trials=trials, seed=rng)
            if res.status is Irreducibility.REDUCIBLE:
                w = res.witness.normalized()
                stack.append(w)
                stack.append(exact_divide(q, w).normalized())
            elif res.status is Irreducibility.IRREDUCIBLE:
                out.append((q, mult, res.splits_over_complex))
            else:
                return out, q
    out.sort(key=lambda t: (t[0].total_degree, t[1], str(t[0])))
    return out, None


def classify(psi: Polynomial, n: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> ClassificationReport:
    psi = _prepare(psi, n)
    k = psi.is_homogeneous()
    report = ClassificationReport(k=k, n=n, m=None)
    if k == 0 or k % n:
        return _reject(report, REASON_DEGREE, f"deg psi = {k} is not a positive multiple of n = {n}")
    m = k // n
    report.m = m

    ff = squarefree_decomposition(psi)
    report.blocks = [sorted(b.variables) for b in variable_blocks(ff)]
    factors, undecided = irreducible_factors(ff, trials, seed)
    if undecided is not None:
        return _reject(report, REASON_UNDECIDED, f"no certificate within {trials} trials", undecided)

    records = []
    for q, a, splits in factors:
        copies, r = (q.total_degree, 1) if splits else (1, q.total_degree)
        nj = Fraction(a * r, m)
        dom = lookup(r, int(nj)) if nj.denominator == 1 else None
        records.extend([FactorRecord(q, r, a, nj, dom, splits)] * copies)
    report.factors = records

    for rec in records:
        if rec.dim.denominator != 1:
            return _reject(
                report,
                REASON_FRACTIONAL,
                f"a*r/m = {rec.multiplicity}*{rec.degree}/{m} for factor {rec.poly}",
                rec.poly,
            )
    for rec in records:
        if rec.domain is None:
            return _reject(report, REASON_NO_DOMAIN, f"(r,n) = ({rec.degree},{rec.dim}) for factor {rec.poly}", rec.poly)
    total = sum(int(rec.dim) for rec in records)
    if total != n:
        return _reject(report, REASON_DIM_MISMATCH, f"factor dimensions sum to {total}, not {n}")

    report.product = DomainProduct(rec.domain for rec in records)
    report.verdict = Verdict.POLYDISK if report.product.is_polydisk else Verdict.TUBE_PRODUCT
    counts = Counter(report.product.factors)
    report.signature_character_possible = m == 1 and any(c > 1 for c in counts.values())
    return report


def classify_semispecial(psi: Polynomial, n: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> ClassificationReport:
    """classify for a degree-n tensor (twist m = 1), possibly carrying a 2-torsion character."""
    k = psi.is_homogeneous() if not psi.is_zero() else None
    if k is not None and k != n:
        raise ValueError(f"a semi-special tensor has degree n = {n}, got {k}")
    report = classify(psi, n, trials, seed)
    report.semispecial = True
    if report.accepted:
        for rec in report.factors:
            if int(rec.dim) % rec.degree:
                raise AssertionError(f"rank {rec.degree} does not divide dimension {rec.dim}")
    return report


def explain(report: ClassificationReport) -> str:
    lines = [f"psi has degree k = {report.k} on n = {report.n} variables."]
    if report.m is None:
        lines.append(f"Rejected: {report.reason} ({report.detail}).")
        return "\n".join(lines)
    lines.append(f"Twist m = k/n = {report.m}.")
    if report.factors:
        lines.append("Irreducible factors (square-free decomposition, then irreducibility per piece):")
        for rec in report.factors:
            extra = " (one linear factor over C)" if rec.complex_linear else ""
            dom = rec.domain if rec.domain is not None else "unresolved"
            lines.append(
                f"  {rec.poly}{extra}: rank r = {rec.degree}, multiplicity a = {rec.multiplicity}, "
                f"dim a*r/m = {rec.dim} -> {dom}"
            )
    if report.verdict is Verdict.REJECTED:
        lines.append(f"Rejected: {report.reason} ({report.detail}).")
        if report.offending is not None:
            lines.append(f"Offending factor: {report.offending}")
        return "\n".join(lines)
    if report.verdict is Verdict.POLYDISK:
        if report.m == 1:
            lines.append("psi is square-free with linear factors only: square-free criterion gives the polydisk.")
        else:
            lines.append("Every factor is linear with multiplicity m: the cover is a polydisk.")
        lines.append(f"Cover: H^{report.n}")
    else:
        lines.append("Each (rank, dimension) pair names one tube domain; degrees and multiplicities fix the cover.")
        lines.append(f"Cover: {report.product}")
    if report.signature_character_possible:
        lines.append("Repeated factors at m = 1: the tensor may carry a 2-torsion signature character.")
    return "\n".join(lines)


__all__ = [
    "ClassificationReport",
    "FactorRecord",
    "REASON_DEGREE",
    "REASON_DIM_MISMATCH",
    "REASON_FRACTIONAL",
    "REASON_NO_DOMAIN",
    "REASON_UNDECIDED",
    "Verdict",
    "classify",
    "classify_semispecial",
    "explain",
    "irreducible_factors",
]
