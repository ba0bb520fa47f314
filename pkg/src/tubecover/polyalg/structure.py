"""Exact shortcuts for large structured polynomials.

Both are guess-then-verify.  A modular or truncated computation proposes a
structure, and exact arithmetic confirms it before anything is returned:

* :func:`separate_variables` splits p into factors on disjoint variable sets
* :func:`perfect_power` writes p = g**mu

A failed guess only costs time; callers fall back to the generic path.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

import numpy as np
from sympy import integer_nthroot
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_sqf_list

from .poly import Polynomial

PRIME = 2147483647  # 2**31 - 1; products of two residues fit in int64


def _mod_form(p: Polynomial, variables: list[int]):
    """Exponent matrix restricted to ``variables`` and coefficients mod PRIME."""
    items = list(p.terms.items())
    exps = np.array([[e[v - 1] for v in variables] for e, _ in items], dtype=np.int64)
    coeffs = []
    for _, c in items:
        den = c.denominator % PRIME
        if den == 0:
            return None
        coeffs.append(c.numerator % PRIME * pow(den, -1, PRIME) % PRIME)
    return exps, np.array(coeffs, dtype=np.int64)


def _monomials_mod(exps: np.ndarray, point: list[int]) -> np.ndarray:
    mono = np.ones(exps.shape[0], dtype=np.int64)
    for i, a in enumerate(point):
        col = exps[:, i]
        top = int(col.max()) if len(col) else 0
        table = np.empty(top + 1, dtype=np.int64)
        acc = 1
        for e in range(top + 1):
            table[e] = acc
            acc = acc * a % PRIME
        mono = mono * table[col] % PRIME
    return mono


def _log_hessian_pattern(exps: np.ndarray, coeffs: np.ndarray, point: list[int]) -> np.ndarray | None:
    """Nonzero pattern of p p_ij - p_i p_j at ``point`` mod PRIME (None if p(point) = 0)."""
    n = len(point)
    cm = coeffs * _monomials_mod(exps, point) % PRIME
    val = int(cm.sum() % PRIME)
    if val == 0:
        return None
    inv = [pow(a, -1, PRIME) for a in point]
    w = [cm * (exps[:, i] % PRIME) % PRIME * inv[i] % PRIME for i in range(n)]
    grad = [int(wi.sum() % PRIME) for wi in w]
    pattern = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            hij = int((w[i] * (exps[:, j] % PRIME) % PRIME * inv[j] % PRIME).sum() % PRIME)
            if (val * hij - grad[i] * grad[j]) % PRIME:
                pattern[i, j] = pattern[j, i] = True
    return pattern


def _components(pattern: np.ndarray) -> list[list[int]]:
    n = pattern.shape[0]
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in np.nonzero(pattern[i])[0]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        comps.append(sorted(comp))
    return comps


def separate_variables(p: Polynomial, seed: int | random.Random = 0) -> list[Polynomial]:
    """Factors of p on pairwise disjoint variable sets, multiplying back to p exactly.

    Variables i, j can only be split apart when the mixed second derivative of
    log p vanishes; a random modular evaluation of that pattern proposes the
    finest split, which is then verified by exact multiplication.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    sup = sorted(p.support())
    if len(sup) < 2 or p.is_zero():
        return [p]
    form = _mod_form(p, sup)
    if form is None:
        return [p]
    exps, coeffs = form
    pattern = None
    for _ in range(3):
        pattern = _log_hessian_pattern(exps, coeffs, [rng.randrange(1, PRIME) for _ in sup])
        if pattern is not None:
            break
    if pattern is None:
        return [p]
    comps = _components(pattern)
    if len(comps) == 1:
        return [p]
    for _ in range(5):
        base = {v: rng.randint(1, 9) for v in sup}
        c = p.evaluate([base.get(i + 1, 0) for i in range(p.nvars)])
        if c:
            break
    else:
        return [p]
    pieces = []
    for comp in comps:
        keep = {sup[i] for i in comp}
        pieces.append(p.substitute({v: base[v] for v in sup if v not in keep}))
    scale = Fraction(1) / c ** (len(pieces) - 1)
    pieces[0] = pieces[0] * scale
    check = pieces[0]
    for f in pieces[1:]:
        check = check * f
    if check != p:
        return [p]
    return pieces


# -- perfect powers ---------------------------------------------------------------


def _interpolate_mod(xs: list[int], ys: list[int]) -> list[int]:
    """Coefficients (high to low) of the interpolating polynomial mod PRIME."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, PRIME) % PRIME
    poly = [0]
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        out = poly + [0]
        for k in range(len(poly)):
            out[k + 1] = (out[k + 1] - xs[i] * poly[k]) % PRIME
        out[-1] = (out[-1] + coef[i]) % PRIME
        poly = out
    while len(poly) > 1 and poly[0] == 0:
        poly.pop(0)
    return poly


def power_hint(p: Polynomial, seed: int | random.Random = 0) -> int:
    """Likely largest mu with p = g**mu, read off one random line restriction mod PRIME."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    d = p.total_degree
    if d < 2:
        return 1
    sup = sorted(p.support())
    form = _mod_form(p, sup)
    if form is None:
        return 1
    exps, coeffs = form
    for _ in range(3):
        a = [rng.randrange(PRIME) for _ in sup]
        b = [rng.randrange(1, PRIME) for _ in sup]
        ts = list(range(d + 1))
        ys = []
        for t in ts:
            pt = [(ai + t * bi) % PRIME for ai, bi in zip(a, b)]
            ys.append(int((coeffs * _monomials_mod(exps, pt) % PRIME).sum() % PRIME))
        uni = _interpolate_mod(ts, ys)
        if len(uni) - 1 != d:
            continue
        _, factors = gf_sqf_list([ZZ(c) for c in uni], PRIME, ZZ)
        mu = 0
        for _, m in factors:
            mu = gcd(mu, m)
        return max(mu, 1)
    return 1


def _rational_root(c: Fraction, mu: int) -> Fraction | None:
    if c < 0 and mu % 2 == 0:
        return None
    sign = -1 if c < 0 else 1
    num, exact_n = integer_nthroot(abs(c.numerator), mu)
    den, exact_d = integer_nthroot(c.denominator, mu)
    if not (exact_n and exact_d):
        return None
    return sign * Fraction(int(num), int(den))


def _mul_trunc(a: dict, b: dict, r: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) > r:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _taylor(p: Polynomial, anchor: list[int], r: int) -> dict:
    """Part of degree <= r (in y) of p(anchor + y)."""
    n = p.nvars
    zero = [i for i in range(n) if anchor[i] == 0]
    out: dict = {}
    binoms: dict = {}
    for exp, c in p.terms.items():
        if sum(exp[i] for i in zero) > r:
            continue
        acc = {(0,) * n: c}
        for i, e in enumerate(exp):
            if not e:
                continue
            a = anchor[i]
            key = (a, e)
            if key not in binoms:
                ser, coef = {}, 1
                for k in range(min(e, r) + 1):
                    if a or k == e:
                        ser[k] = coef * a ** (e - k)
                    coef = coef * (e - k) // (k + 1)
                binoms[key] = ser
            nxt: dict = {}
            for ea, ca in acc.items():
                da = sum(ea)
                for k, cb in binoms[key].items():
                    if da + k > r:
                        continue
                    eb = list(ea)
                    eb[i] += k
                    eb = tuple(eb)
                    nxt[eb] = nxt.get(eb, 0) + ca * cb
            acc = nxt
        for e, v in acc.items():
            out[e] = out.get(e, 0) + v
    return {e: Fraction(v) for e, v in out.items() if v}


def _anchors(p: Polynomial, rng: random.Random):
    """Integer points with few nonzero coordinates, then fully random ones."""
    seen = set()
    for exp in sorted(p.terms, key=lambda e: sum(1 for x in e if x)):
        sup = tuple(i for i, x in enumerate(exp) if x)
        if sup in seen:
            continue
        seen.add(sup)
        if len(seen) > 4:
            break
        yield [rng.randint(1, 9) if i in sup else 0 for i in range(p.nvars)]
    sup = {v - 1 for v in p.support()}
    for _ in range(3):
        yield [rng.randint(1, 9) if i in sup else 0 for i in range(p.nvars)]


def nth_root(p: Polynomial, mu: int, seed: int | random.Random = 0) -> Polynomial | None:
    """g with g**mu == p exactly, or None.

    Around an anchor a with p(a) != 0, g(a + y) is the truncated binomial
    series p(a)^(1/mu) (1 + H)^(1/mu) with H = p(a + y)/p(a) - 1, and only
    the part of degree <= deg p / mu is needed.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if mu == 1:
        return p
    if p.is_zero() or p.total_degree % mu:
        return None
    r = p.total_degree // mu
    n = p.nvars
    for anchor in _anchors(p, rng):
        c0 = p.evaluate(anchor)
        if not c0:
            continue
        root0 = _rational_root(Fraction(c0), mu)
        if root0 is None:
            return None
        taylor = _taylor(p, anchor, r)
        h = {e: v / c0 for e, v in taylor.items() if any(e)}
        series = {(0,) * n: Fraction(1)}
        power = {(0,) * n: Fraction(1)}
        coef = Fraction(1)
        for i in range(1, r + 1):
            coef = coef * (Fraction(1, mu) - (i - 1)) / i
            power = _mul_trunc(power, h, r)
            for e, v in power.items():
                series[e] = series.get(e, 0) + coef * v
        g_shift = Polynomial(n, {e: root0 * v for e, v in series.items() if v})
        shift = {i + 1: Polynomial.var(n, i + 1) - anchor[i] for i in range(n) if anchor[i]}
        g = g_shift.substitute(shift) if shift else g_shift
        if g.total_degree == r and g**mu == p:
            return g
        return None
    return None


def perfect_power(p: Polynomial, seed: int | random.Random = 0) -> tuple[Polynomial, int] | None:
    """(g, mu) with p = g**mu and mu > 1 as large as the line restriction suggests."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    mu = power_hint(p, rng)
    if mu < 2:
        return None
    g = nth_root(p, mu, rng)
    return None if g is None else (g, mu)
