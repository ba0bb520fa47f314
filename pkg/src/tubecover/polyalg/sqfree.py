"""Square-free decomposition and splitting into variable blocks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gcd import content_in, exact_divide, gcd
from .poly import Polynomial
from .structure import perfect_power, separate_variables

# below this size the generic GCD path is already fast
SHORTCUT_MIN_TERMS = 64


@dataclass(frozen=True)
class FactoredForm:
    """``constant * prod(f**mult for f, mult in factors)``."""

    constant: Fraction
    factors: tuple[tuple[Polynomial, int], ...]
    nvars: int

    def __post_init__(self):
        if not self.constant:
            raise ValueError("constant must be nonzero")
        for f, mult in self.factors:
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            if f.nvars != self.nvars:
                raise ValueError("factor lives in the wrong number of variables")

    def expand(self) -> Polynomial:
        out = Polynomial.constant(self.nvars, self.constant)
        for f, mult in self.factors:
            out = out * f**mult
        return out

    def multiplicities(self) -> list[int]:
        return [m for _, m in self.factors]


def _require_nonzero(p: Polynomial) -> None:
    if p.is_zero():
        raise ValueError("zero polynomial")


def _yun(b: Polynomial, k: int) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm in x_k for b primitive w.r.t. x_k."""
    out = []
    db = b.partial_derivative(k)
    a0 = gcd(b, db)
    c = exact_divide(b, a0)
    d = exact_divide(db, a0) - c.partial_derivative(k)
    i = 1
    while c.degree_in(k) > 0:
        a = gcd(c, d)
        if a.degree_in(k) > 0:
            out.append((a, i))
        c = exact_divide(c, a)
        d = exact_divide(d, a) - c.partial_derivative(k)
        i += 1
    return out


def _parts(p: Polynomial) -> list[tuple[Polynomial, int]]:
    n = p.nvars
    parts: list[tuple[Polynomial, int]] = []
    exps = list(p.terms)
    low = [min(e[k] for e in exps) for k in range(n)]
    if any(low):
        for k, m in enumerate(low):
            if m:
                parts.append((Polynomial.var(n, k + 1), m))
        mono = Polynomial.monomial(low)
        p = exact_divide(p, mono)
    if p.is_constant():
        return parts
    k = min(p.support(), key=lambda v: (p.degree_in(v), v))
    cont = content_in(p, k)
    pp = exact_divide(p, cont)
    parts.extend(_yun(pp, k))
    if not cont.is_constant():
        parts.extend(_parts(cont))
    return parts


def _structured_parts(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """_parts after splitting off disjoint variable blocks and perfect powers."""
    parts = []
    for block in separate_variables(p):
        # constants are recovered from leading coefficients at the end
        block = block.normalized()
        found = perfect_power(block) if len(block) > SHORTCUT_MIN_TERMS else None
        if found is None:
            parts.extend(_parts(block))
        else:
            g, mu = found
            parts.extend((f, m * mu) for f, m in _parts(g))
    return parts


def squarefree_decomposition(p: Polynomial) -> FactoredForm:
    """p = c * prod S_m**m with S_m square-free, pairwise coprime, m increasing."""
    _require_nonzero(p)
    parts = _structured_parts(p) if len(p) > SHORTCUT_MIN_TERMS else _parts(p)
    grouped: dict[int, Polynomial] = {}
    for f, m in parts:
        grouped[m] = grouped[m] * f if m in grouped else f
    factors = tuple((grouped[m].normalized(), m) for m in sorted(grouped))
    # grlex is a monomial order, so leading coefficients multiply
    lead = Fraction(1)
    for f, m in factors:
        lead *= f.leading_coefficient() ** m
    return FactoredForm(p.leading_coefficient() / lead, factors, p.nvars)


def is_squarefree(p: Polynomial) -> bool:
    """True iff p and its whole gradient have a constant common divisor."""
    _require_nonzero(p)
    if p.is_constant():
        return True
    g = p
    for i in sorted(p.support()):
        g = gcd(g, p.partial_derivative(i))
        if g.is_constant():
            return True
    return g.is_constant()


@dataclass
class Block:
    """A connected group of variables and the coprime factors supported on it."""

    variables: frozenset[int]
    factors: list[tuple[Polynomial, int]] = field(default_factory=list)

    def degree(self) -> int:
        return sum(f.total_degree * m for f, m in self.factors)


def split_coprime(s: Polynomial) -> list[Polynomial]:
    """Split a square-free polynomial into coprime pieces along variable restrictions.

    A factor not involving x_v survives setting x_v = 0, so gcd(s, s|x_v=0)
    peels it off; the pieces are exact divisors, not necessarily irreducible.
    """
    pending = [s.normalized()]
    done = []
    while pending:
        piece = pending.pop()
        if piece.total_degree <= 1:
            done.append(piece)
            continue
        for v in sorted(piece.support()):
            rest = piece.substitute({v: 0})
            g = Polynomial.var(piece.nvars, v) if rest.is_zero() else gcd(piece, rest)
            if 0 < g.total_degree < piece.total_degree:
                pending.append(g.normalized())
                pending.append(exact_divide(piece, g).normalized())
                break
        else:
            done.append(piece)
    return sorted(done, key=lambda f: (min(f.support(), default=0), str(f)))


def variable_blocks(ff: FactoredForm) -> list[Block]:
    """Group the coprime pieces of each square-free part by connected variable support."""
    pieces = []
    for s, m in ff.factors:
        pieces.extend((f, m) for f in split_coprime(s) if not f.is_constant())
    parent: dict[int, int] = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f, _ in pieces:
        sup = sorted(f.support())
        for v in sup[1:]:
            parent[find(v)] = find(sup[0])
        find(sup[0])
    blocks: dict[int, Block] = {}
    for f, m in pieces:
        root = find(min(f.support()))
        blocks.setdefault(root, Block(frozenset()))
        blocks[root].factors.append((f, m))
    for root, b in blocks.items():
        b.variables = frozenset(v for v in parent if find(v) == root)
    return sorted(blocks.values(), key=lambda b: min(b.variables))
