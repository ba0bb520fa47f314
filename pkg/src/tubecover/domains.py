"""Irreducible bounded symmetric domains of tube type and their numerology.

Kinds use Cartan's names.  ``(rank, dim)`` determines a tube domain only up to
the classical low-dimensional isomorphisms; :func:`lookup` always answers with
one fixed representative:

    (1, 1) -> I_{1,1} (the disk)       (2, 3) -> IV_3  (= III_2)
    (2, 4) -> I_{2,2} (= IV_4)         (2, 6) -> II_4  (= IV_6)
    (2, d) -> IV_d for d = 5 or d >= 7
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm


class Kind(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    E = "E"


_ORDER = {Kind.I: 0, Kind.II: 1, Kind.III: 2, Kind.IV: 3, Kind.E: 4}


class InvalidDomainError(ValueError):
    pass


def rank_dim(kind: Kind, param: int | None = None) -> tuple[int, int]:
    """(rank, complex dimension) of a tube-type domain.

    ``param`` is n for I_{n,n} and III_n, the matrix size 2k for II_{2k},
    the dimension d >= 3 for IV_d, and ignored for E27.
    """
    if kind is Kind.E:
        return 3, 27
    if param is None or param < 1:
        raise InvalidDomainError(f"{kind.value} needs a positive parameter")
    if kind is Kind.I:
        return param, param * param
    if kind is Kind.II:
        if param % 2:
            raise InvalidDomainError(f"II_{param}: only even sizes are of tube type")
        k = param // 2
        return k, k * (2 * k - 1)
    if kind is Kind.III:
        return param, param * (param + 1) // 2
    if kind is Kind.IV:
        if param < 3:
            raise InvalidDomainError(f"IV_{param}: Lie balls start at dimension 3")
        return 2, param
    raise InvalidDomainError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class IrreducibleDomain:
    kind: Kind
    param: int = 0

    def __post_init__(self):
        if self.kind is Kind.E:
            object.__setattr__(self, "param", 27)
        rank_dim(self.kind, self.param)

    @property
    def rank(self) -> int:
        return rank_dim(self.kind, self.param)[0]

    @property
    def dim(self) -> int:
        return rank_dim(self.kind, self.param)[1]

    @property
    def is_disk(self) -> bool:
        return self.rank == 1

    def sort_key(self):
        return (self.rank, self.dim, _ORDER[self.kind], self.param)

    def canonical(self) -> "IrreducibleDomain":
        return lookup(self.rank, self.dim)

    def __str__(self) -> str:
        if self.kind is Kind.I:
            return f"I_{{{self.param},{self.param}}}"
        if self.kind is Kind.E:
            return "E27"
        return f"{self.kind.value}_{self.param}"

    @classmethod
    def parse(cls, text: str) -> "IrreducibleDomain":
        text = text.strip()
        if text == "E27":
            return cls(Kind.E)
        m = re.fullmatch(r"I_\{(\d+),(\d+)\}", text)
        if m:
            if m.group(1) != m.group(2):
                raise InvalidDomainError(f"{text} is not of tube type")
            return cls(Kind.I, int(m.group(1)))
        m = re.fullmatch(r"(II|III|IV)_\{?(\d+)\}?", text)
        if m:
            return cls(Kind(m.group(1)), int(m.group(2)))
        raise InvalidDomainError(f"cannot parse domain {text!r}")


DISK = IrreducibleDomain(Kind.I, 1)
E27 = IrreducibleDomain(Kind.E)


def lookup(rank: int, dim: int) -> IrreducibleDomain | None:
    """The canonical tube-type irreducible domain with this (rank, dim), if any."""
    if rank < 1 or dim < 1:
        return None
    if rank == 1:
        return DISK if dim == 1 else None
    if rank == 2:
        if dim == 4:
            return IrreducibleDomain(Kind.I, 2)
        if dim == 6:
            return IrreducibleDomain(Kind.II, 4)
        return IrreducibleDomain(Kind.IV, dim) if dim >= 3 else None
    if (rank, dim) == (3, 27):
        return E27
    if dim == rank * rank:
        return IrreducibleDomain(Kind.I, rank)
    if dim == rank * (2 * rank - 1):
        return IrreducibleDomain(Kind.II, 2 * rank)
    if 2 * dim == rank * (rank + 1):
        return IrreducibleDomain(Kind.III, rank)
    return None


def canonical_domains(max_dim: int) -> list[IrreducibleDomain]:
    """Every canonical representative of dimension <= max_dim."""
    out = set()
    for r in range(1, max_dim + 1):
        for d in range(r, max_dim + 1):
            dom = lookup(r, d)
            if dom is not None:
                out.add(dom)
    return sorted(out, key=IrreducibleDomain.sort_key)


def enumerate_divisible(max_dim: int) -> list[IrreducibleDomain]:
    """Canonical domains with rank | dim and dim <= max_dim."""
    if max_dim < 1:
        raise ValueError("max_dim must be positive")
    return [d for d in canonical_domains(max_dim) if d.dim % d.rank == 0]


@dataclass(frozen=True)
class DomainProduct:
    factors: tuple[IrreducibleDomain, ...]

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(sorted(factors, key=IrreducibleDomain.sort_key)))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def is_polydisk(self) -> bool:
        return all(f.is_disk for f in self.factors)

    def canonical(self) -> "DomainProduct":
        return DomainProduct(f.canonical() for f in self.factors)

    def __str__(self) -> str:
        return " × ".join(str(f) for f in self.factors) if self.factors else "point"

    @classmethod
    def parse(cls, text: str) -> "DomainProduct":
        parts = re.split(r"\s*(?:×|\bx\b|\*)\s*", text.strip())
        out = []
        one = lambda t: DISK if t in ("H", "disk") else IrreducibleDomain.parse(t)
        for part in parts:
            m = re.fullmatch(r"(.+?)\^(\d+)", part)
            if m:
                out.extend([one(m.group(1))] * int(m.group(2)))
            else:
                out.append(one(part))
        return cls(out)


def enumerate_products(max_dim: int) -> list[DomainProduct]:
    """Every product of canonical domains with total dimension <= max_dim."""
    doms = canonical_domains(max_dim)
    out = []

    def extend(start: int, current: list[IrreducibleDomain], dim: int) -> None:
        if current:
            out.append(DomainProduct(current))
        for i in range(start, len(doms)):
            if dim + doms[i].dim <= max_dim:
                current.append(doms[i])
                extend(i, current, dim + doms[i].dim)
                current.pop()

    extend(0, [], 0)
    return out


@dataclass(frozen=True)
class TensorDegreeSpec:
    """Twist m, total symmetric degree k = m * dim, and per-factor norm exponents."""

    m: int
    k: int
    exponents: tuple[int, ...]


def minimal_m(factors: list[tuple[int, int]]) -> tuple[int, list[int]]:
    """Least m > 0 with r_j | m * n_j for all (r_j, n_j), and a_j = m * n_j / r_j."""
    if not factors:
        raise ValueError("need at least one factor")
    for r, n in factors:
        if r < 1 or n < 1:
            raise ValueError(f"invalid (rank, dim) pair {(r, n)}")
    m = reduce(lcm, (r // gcd(r, n) for r, n in factors), 1)
    return m, [m * n // r for r, n in factors]


def admissible(product: DomainProduct, m: int) -> bool:
    return m >= 1 and all((m * f.dim) % f.rank == 0 for f in product.factors)


def tensor_degrees(product: DomainProduct, m: int) -> TensorDegreeSpec:
    if not admissible(product, m):
        raise ValueError(f"m={m} gives non-integral norm exponents for {product}")
    return TensorDegreeSpec(m, m * product.dim, tuple(m * f.dim // f.rank for f in product.factors))


def solve_prop61(n: int, p: int) -> tuple[int, int] | None:
    """Non-negative (a, b) with 4a + 6b = n and a + b = p, or None.

    a counts I_{2,2} factors and b counts III_3 factors of a cover whose
    tensor polynomial is a product of p squares.
    """
    if n < 0 or p < 0:
        return None
    twice_a = 6 * p - n
    if twice_a % 2:
        return None
    a = twice_a // 2
    b = p - a
    if a < 0 or b < 0:
        return None
    return a, b
