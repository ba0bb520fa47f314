"""Exact multivariate division and GCD over the rationals.

Internally polynomials are plain ``{exponent: int}`` dicts with integer
coefficients; the GCD runs a recursive subresultant remainder sequence in a
chosen main variable, with contents taken recursively in the others.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

from .poly import Polynomial, grlex_key, mul_terms


class NotDivisibleError(ArithmeticError):
    pass


# -- raw dict helpers -------------------------------------------------------

def _exact_coeff_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def _primitive(d: dict) -> dict:
    """Integer coprime coefficients, positive grlex-leading coefficient."""
    if not d:
        return d
    den = 1
    for c in d.values():
        if isinstance(c, Fraction):
            den = ilcm(den, c.denominator)
    if den != 1 or any(isinstance(c, Fraction) for c in d.values()):
        d = {e: int(c * den) for e, c in d.items()}
    g = 0
    for c in d.values():
        g = igcd(g, c)
        if g == 1:
            break
    lead = d[max(d, key=grlex_key)]
    if lead < 0:
        g = -g
    if g != 1:
        d = {e: c // g for e, c in d.items()}
    return d


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def _is_const(a: dict) -> bool:
    return all(not any(e) for e in a)


def _support(a: dict) -> set[int]:
    s = set()
    for e in a:
        for k, v in enumerate(e):
            if v:
                s.add(k)
    return s


def _deg(a: dict, k: int) -> int:
    return max((e[k] for e in a), default=-1)


def raw_exact_div(a: dict, b: dict) -> dict | None:
    """Quotient a/b if b divides a exactly, else None."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    lb = max(b, key=grlex_key)
    lc = b[lb]
    rest = [(e, c) for e, c in b.items() if e != lb]
    r = dict(a)
    heap = [((-sum(e), tuple(-x for x in e)), e) for e in r]
    heapq.heapify(heap)
    q: dict = {}
    while r:
        while True:
            _, e = heapq.heappop(heap)
            if e in r:
                break
        qe = tuple(x - y for x, y in zip(e, lb))
        if any(x < 0 for x in qe):
            return None
        qc = _exact_coeff_div(r.pop(e), lc)
        q[qe] = qc
        for eb, cb in rest:
            t = tuple(x + y for x, y in zip(qe, eb))
            v = r.get(t, 0) - qc * cb
            if v:
                if t not in r:
                    heapq.heappush(heap, ((-sum(t), tuple(-x for x in t)), t))
                r[t] = v
            else:
                r.pop(t, None)
    return q


def _must_div(a: dict, b: dict) -> dict:
    q = raw_exact_div(a, b)
    if q is None:
        raise NotDivisibleError("polynomial division is not exact")
    return q


def _coeffs(a: dict, k: int) -> dict[int, dict]:
    """Split a into {degree in x_k: coefficient dict with x_k removed}."""
    out: dict[int, dict] = {}
    for e, c in a.items():
        d = e[k]
        ne = e[:k] + (0,) + e[k + 1:]
        out.setdefault(d, {})[ne] = c
    return out


def _from_coeffs(cs: dict[int, dict], k: int) -> dict:
    out = {}
    for d, poly in cs.items():
        for e, c in poly.items():
            out[e[:k] + (d,) + e[k + 1:]] = c
    return out


def _pow(a: dict, n: int, nvars: int) -> dict:
    out = {(0,) * nvars: 1}
    base = a
    while n:
        if n & 1:
            out = mul_terms(out, base)
        n >>= 1
        if n:
            base = mul_terms(base, base)
    return out


def _content_in(a: dict, k: int) -> dict:
    """GCD of the coefficients of a viewed as a polynomial in x_k (primitive)."""
    cs = sorted(_coeffs(a, k).values(), key=len)
    nv = len(next(iter(a)))
    one = {(0,) * nv: 1}
    if _is_const(cs[0]):
        return one
    g = _primitive(cs[0])
    for c in cs[1:]:
        g = _raw_gcd(g, c)
        if _is_const(g):
            return one
    return g


def _prem(a: dict, b: dict, k: int) -> dict:
    ca = _coeffs(a, k)
    cb = _coeffs(b, k)
    db = max(cb)
    lcb = cb[db]
    r = ca
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        nr: dict[int, dict] = {}
        for d, poly in r.items():
            if d == dr:
                continue
            v = mul_terms(poly, lcb)
            if v:
                nr[d] = v
        for d, poly in cb.items():
            if d == db:
                continue
            t = mul_terms(poly, lr)
            cur = _sub(nr.get(d + shift, {}), t)
            if cur:
                nr[d + shift] = cur
            else:
                nr.pop(d + shift, None)
        r = nr
    return _from_coeffs(r, k)


def _subresultant_gcd(a: dict, b: dict, k: int) -> dict:
    """GCD of a, b which are primitive w.r.t. x_k and both involve x_k."""
    nv = len(next(iter(a)))
    one = {(0,) * nv: 1}
    if _deg(a, k) < _deg(b, k):
        a, b = b, a
    g = one
    h = one
    while True:
        d = _deg(a, k) - _deg(b, k)
        r = _prem(a, b, k)
        if not r:
            return _primitive(_must_div(b, _content_in(b, k)))
        if _deg(r, k) == 0:
            return one
        a, b = b, _must_div(r, mul_terms(g, _pow(h, d, nv)))
        g = _coeffs(a, k)[_deg(a, k)]
        if d == 0:
            continue
        h = _must_div(_pow(g, d, nv), _pow(h, d - 1, nv)) if d > 1 else g


def _raw_gcd(a: dict, b: dict) -> dict:
    if not a:
        return _primitive(b)
    if not b:
        return _primitive(a)
    nv = len(next(iter(a)))
    one = {(0,) * nv: 1}
    # monomial parts
    ma = [min(e[k] for e in a) for k in range(nv)]
    mb = [min(e[k] for e in b) for k in range(nv)]
    m = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(ma):
        a = {tuple(x - y for x, y in zip(e, ma)): c for e, c in a.items()}
    if any(mb):
        b = {tuple(x - y for x, y in zip(e, mb)): c for e, c in b.items()}
    g = _gcd_no_monomial(_primitive(a), _primitive(b), one)
    if any(m):
        g = {tuple(x + y for x, y in zip(e, m)): c for e, c in g.items()}
    return g


def _gcd_no_monomial(a: dict, b: dict, one: dict) -> dict:
    while True:
        if _is_const(a) or _is_const(b):
            return one
        if a == b:
            return a
        sa, sb = _support(a), _support(b)
        if sa == sb:
            break
        for v in sorted(sa - sb):
            a = _content_in(a, v)
            if _is_const(a):
                return one
        for v in sorted(sb - sa):
            b = _content_in(b, v)
            if _is_const(b):
                return one
    k = min(sa, key=lambda v: (max(_deg(a, v), _deg(b, v)), len(_coeffs(a, v)) + len(_coeffs(b, v)), v))
    ca = _content_in(a, k)
    cb = _content_in(b, k)
    c = _raw_gcd(ca, cb)
    pa = a if _is_const(ca) else _must_div(a, ca)
    pb = b if _is_const(cb) else _must_div(b, cb)
    g = _subresultant_gcd(pa, pb, k)
    return _primitive(mul_terms(c, g))


# -- public API ---------------------------------------------------------------

def _int_terms(p: Polynomial) -> dict:
    return _primitive({e: c for e, c in p.terms.items()})


def _wrap(nvars: int, d: dict) -> Polynomial:
    return Polynomial._raw(nvars, {e: Fraction(c) for e, c in d.items()})


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Normalized GCD: primitive, integer coefficients, positive leading coefficient.

    gcd(p, 0) is the normalized p; gcd(0, 0) is 0.
    """
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    if p.is_zero() and q.is_zero():
        return Polynomial.zero(p.nvars)
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    return _wrap(p.nvars, _raw_gcd(_int_terms(p), _int_terms(q)))


def gcd_many(polys) -> Polynomial:
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    g = Polynomial.zero(polys[0].nvars)
    for p in sorted(polys, key=len):
        g = gcd(g, p)
        if not g.is_zero() and g.is_constant():
            break
    return g


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """p / q, raising NotDivisibleError unless q divides p exactly."""
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    res = raw_exact_div(p.terms, q.terms)
    if res is None:
        raise NotDivisibleError(f"{q} does not divide {p}")
    return Polynomial._raw(p.nvars, {e: Fraction(c) for e, c in res.items()})


def divides(q: Polynomial, p: Polynomial) -> bool:
    if q.is_zero():
        return p.is_zero()
    return raw_exact_div(p.terms, q.terms) is not None


def content_in(p: Polynomial, i: int) -> Polynomial:
    """Normalized GCD of the coefficients of p as a polynomial in x_i."""
    if p.is_zero():
        return p
    return _wrap(p.nvars, _content_in(_int_terms(p), i - 1))
