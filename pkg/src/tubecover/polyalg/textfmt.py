"""Text form of polynomials: ``3/2*x1^2*x2 - x3^3``."""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+)(?:\^(?P<exp>\d+))?)|(?P<op>[-+*]))")


class PolynomialSyntaxError(ValueError):
    pass


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse the sum-of-terms grammar.

    The variable count is ``nvars`` when given, otherwise the largest index used.
    """
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("var"):
            idx = int(m.group("idx"))
            if idx < 1:
                raise PolynomialSyntaxError("variables are numbered from x1")
            tokens.append(("var", (idx, int(m.group("exp") or 1))))
        else:
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial")

    terms: list[tuple[Fraction, dict[int, int]]] = []
    sign = 1
    i = 0
    expect_factor = True
    coeff = Fraction(1)
    powers: dict[int, int] = {}
    have_factor = False
    while i < len(tokens):
        kind, val = tokens[i]
        if expect_factor:
            if kind == "op" and val in "+-" and not have_factor:
                if val == "-":
                    sign = -sign
                i += 1
                continue
            if kind == "num":
                coeff *= val
            elif kind == "var":
                idx, e = val
                powers[idx] = powers.get(idx, 0) + e
            else:
                raise PolynomialSyntaxError(f"expected a factor, got {val!r}")
            have_factor = True
            expect_factor = False
        else:
            if kind != "op":
                raise PolynomialSyntaxError("missing operator between factors")
            if val == "*":
                expect_factor = True
            else:
                terms.append((sign * coeff, powers))
                sign = -1 if val == "-" else 1
                coeff, powers, have_factor = Fraction(1), {}, False
                expect_factor = True
        i += 1
    if expect_factor:
        raise PolynomialSyntaxError("expression ends with an operator")
    terms.append((sign * coeff, powers))

    used = max((k for _, pw in terms for k in pw), default=0)
    if nvars is None:
        nvars = used
    elif used > nvars:
        raise PolynomialSyntaxError(f"x{used} used but only {nvars} variables declared")
    out: dict[tuple[int, ...], Fraction] = {}
    for c, pw in terms:
        exp = [0] * nvars
        for k, e in pw.items():
            exp[k - 1] = e
        key = tuple(exp)
        out[key] = out.get(key, Fraction(0)) + c
    return Polynomial(nvars, out)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exp, c in p.items():
        factors = [f"x{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(exp) if e]
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
