"""Sparse multivariate polynomials over the rationals.

Terms are stored as ``{exponent tuple: Fraction}`` with no zero coefficients.
Iteration and printing use graded lexicographic order (x1 > x2 > ...), so two
equal polynomials always serialize identically.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence


def grlex_key(exp: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exp), exp)


def _as_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables ``x1..xN``."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = _as_coeff(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        # trusted constructor: keys are tuples of right length, values nonzero
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = {e: (c if isinstance(c, Fraction) else Fraction(c)) for e, c in terms.items()}
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = _as_coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        """The variable x_i (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): c})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (descending grlex) order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        """Degree in x_i (1-based); -1 for zero."""
        return max((e[i - 1] for e in self._terms), default=-1)

    def support(self) -> frozenset[int]:
        """1-based indices of the variables that actually occur."""
        used = set()
        for e in self._terms:
            used.update(k + 1 for k, v in enumerate(e) if v)
        return frozenset(used)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def is_homogeneous(self) -> int | None:
        """Common total degree of all terms, or None if the terms disagree."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        degs = {sum(e) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.nvars, mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (1 / c)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == Polynomial.constant(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def partial_derivative(self, i: int) -> "Polynomial":
        k = i - 1
        if not 0 <= k < self.nvars:
            raise ValueError(f"variable index {i} out of range 1..{self.nvars}")
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                out[ne] = c * e[k]
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point: Sequence):
        """Value at ``point``; exact for rational points, works for complex/float too."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

    def substitute(self, values: Mapping[int, object]) -> "Polynomial":
        """Replace x_i by the given number or Polynomial (same nvars) for each i in ``values``."""
        polys = {}
        consts = {}
        for i, v in values.items():
            if not 1 <= i <= self.nvars:
                raise ValueError(f"variable index {i} out of range")
            if isinstance(v, Polynomial):
                self._check(v)
                polys[i - 1] = v
            else:
                consts[i - 1] = _as_coeff(v)
        out = Polynomial.zero(self.nvars)
        pow_cache: dict[tuple[int, int], Polynomial] = {}
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self._terms.items():
            ne = list(e)
            for k, v in consts.items():
                if e[k]:
                    c = c * v ** e[k]
                ne[k] = 0
            if not c:
                continue
            if not polys or not any(e[k] for k in polys):
                for k in polys:
                    ne[k] = 0
                t = tuple(ne)
                v = acc.get(t, 0) + c
                if v:
                    acc[t] = v
                else:
                    acc.pop(t, None)
                continue
            term = Polynomial.constant(self.nvars, c)
            for k, v in polys.items():
                if e[k]:
                    key = (k, e[k])
                    if key not in pow_cache:
                        pow_cache[key] = v ** e[k]
                    term = term * pow_cache[key]
                ne[k] = 0
            out = out + term * Polynomial._raw(self.nvars, {tuple(ne): Fraction(1)})
        return out + Polynomial._raw(self.nvars, acc)

    def linear_transform(self, matrix: Sequence[Sequence]) -> "Polynomial":
        """p(M x): x_i is replaced by sum_j M[i][j] x_j."""
        n = self.nvars
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError("matrix must be nvars x nvars")
        images = {}
        for i, row in enumerate(matrix):
            terms = {}
            for j, a in enumerate(row):
                if a:
                    exp = [0] * n
                    exp[j] = 1
                    terms[tuple(exp)] = a
            images[i + 1] = Polynomial(n, terms)
        return self.substitute(images)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Re-home this polynomial in ``nvars`` variables; x_i goes to x_{positions[i-1]}."""
        if len(positions) != self.nvars:
            raise ValueError("need one target position per variable")
        if len(set(positions)) != len(positions) or not all(1 <= p <= nvars for p in positions):
            raise ValueError("positions must be distinct indices in 1..nvars")
        out = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for k, p in zip(e, positions):
                ne[p - 1] = k
            out[tuple(ne)] = c
        return Polynomial._raw(nvars, out)

    def restrict_to_line(self, base: Sequence, direction: Sequence) -> list[Fraction]:
        """Coefficients (low to high) of t -> p(base + t*direction)."""
        n = self.nvars
        if len(base) != n or len(direction) != n:
            raise ValueError("line must live in the polynomial's variable space")
        deg = max(self.total_degree, 0)
        # univariate images of each coordinate raised to needed powers
        lin = [[Fraction(base[k]), Fraction(direction[k])] for k in range(n)]
        cache: dict[tuple[int, int], list[Fraction]] = {}

        def upow(k: int, e: int) -> list[Fraction]:
            key = (k, e)
            if key not in cache:
                if e == 0:
                    cache[key] = [Fraction(1)]
                else:
                    prev = upow(k, e - 1)
                    a, b = lin[k]
                    res = [Fraction(0)] * (len(prev) + 1)
                    for i, c in enumerate(prev):
                        res[i] += a * c
                        res[i + 1] += b * c
                    cache[key] = res
            return cache[key]

        out = [Fraction(0)] * (deg + 1)
        for e, c in self._terms.items():
            acc = [c]
            for k, p in enumerate(e):
                if p:
                    f = upow(k, p)
                    nxt = [Fraction(0)] * (len(acc) + len(f) - 1)
                    for i, u in enumerate(acc):
                        if u:
                            for j, v in enumerate(f):
                                nxt[i + j] += u * v
                    acc = nxt
            for i, u in enumerate(acc):
                out[i] += u
        while len(out) > 1 and not out[-1]:
            out.pop()
        return out

    # -- content ------------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content; the primitive part has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        from math import gcd, lcm

        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "Polynomial":
        """Primitive integer-coefficient associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        from .textfmt import format_polynomial

        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {str(self)!r})"


def mul_terms(a: Mapping, b: Mapping) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def product(polys: Iterable[Polynomial], nvars: int) -> Polynomial:
    out = Polynomial.constant(nvars, 1)
    for p in polys:
        out = out * p
    return out
