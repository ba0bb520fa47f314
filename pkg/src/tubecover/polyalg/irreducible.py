"""Monte Carlo irreducibility over the rationals via restriction to random lines.

If p = f*g is homogeneous and p(b) != 0 then p(a + t*b) has the factor
f(a + t*b) of degree exactly deg f.  So every restriction's factor-degree
pattern must admit a sub-sum equal to deg f; once no degree survives across
trials, p is proven irreducible.  Reducible answers always carry an exact
divisor as witness.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .gcd import exact_divide, gcd
from .poly import Polynomial
from .sqfree import split_coprime


class Irreducibility(enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Restriction:
    base: tuple[int, ...]
    direction: tuple[int, ...]
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class IrreducibilityResult:
    status: Irreducibility
    witness: Polynomial | None = None
    evidence: Restriction | None = None
    trials_used: int = 0
    # binary forms split into linear factors over C
    splits_over_complex: bool = False

    @property
    def irreducible(self) -> bool:
        return self.status is Irreducibility.IRREDUCIBLE


def _subset_sums(degrees) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _univariate_factor_degrees(coeffs: list[Fraction]) -> list[int]:
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for f, mult in facs:
        out.extend([f.degree()] * mult)
    return sorted(out)


def _univariate_squarefree(coeffs: list[Fraction]) -> bool:
    u = Polynomial(1, {(i,): c for i, c in enumerate(coeffs) if c})
    return gcd(u, u.partial_derivative(1)).is_constant()


def _exact_factor_witness(p: Polynomial) -> Polynomial | None:
    gens = sympy.symbols(f"x1:{p.nvars + 1}")
    expr = sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}, gens, domain="QQ"
    )
    _, facs = expr.factor_list()
    for f, _ in facs:
        if 0 < f.total_degree() < p.total_degree:
            cand = Polynomial(p.nvars, {e: Fraction(int(c.p), int(c.q)) for e, c in f.as_dict().items()})
            exact_divide(p, cand)
            return cand.normalized()
    return None


def irreducibility_check(p: Polynomial, trials: int = 32, seed: int | random.Random = 0) -> IrreducibilityResult:
    """Decide rational irreducibility of a homogeneous square-free polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    deg = p.is_homogeneous()
    if deg is None:
        raise ValueError("polynomial is not homogeneous")
    if deg == 0:
        raise ValueError("constants are units, not irreducible elements")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    binary = len(p.support()) == 2 and deg >= 2
    if deg == 1:
        return IrreducibilityResult(Irreducibility.IRREDUCIBLE, splits_over_complex=False)

    pieces = split_coprime(p)
    if len(pieces) > 1:
        return IrreducibilityResult(Irreducibility.REDUCIBLE, witness=pieces[0], splits_over_complex=binary)

    n = p.nvars
    possible = set(range(1, deg))
    useful = 0
    last = None
    for t in range(trials):
        radius = 3 + 2 * t
        direction = tuple(rng.randint(-radius, radius) for _ in range(n))
        base = tuple(rng.randint(-radius, radius) for _ in range(n))
        if not p.evaluate(direction):
            continue
        coeffs = p.restrict_to_line(base, direction)
        if len(coeffs) != deg + 1 or not _univariate_squarefree(coeffs):
            continue
        useful += 1
        degrees = tuple(_univariate_factor_degrees(coeffs))
        last = Restriction(base, direction, degrees)
        possible &= _subset_sums(degrees)
        if not possible:
            return IrreducibilityResult(
                Irreducibility.IRREDUCIBLE, evidence=last, trials_used=t + 1, splits_over_complex=binary
            )
    if not useful:
        return IrreducibilityResult(Irreducibility.INCONCLUSIVE, trials_used=trials, splits_over_complex=binary)
    witness = _exact_factor_witness(p)
    if witness is None:
        # the exact factorization found no divisor, so p is irreducible after all
        return IrreducibilityResult(
            Irreducibility.IRREDUCIBLE, evidence=last, trials_used=trials, splits_over_complex=binary
        )
    return IrreducibilityResult(
        Irreducibility.REDUCIBLE, witness=witness, evidence=last, trials_used=trials, splits_over_complex=binary
    )
