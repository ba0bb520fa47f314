import json
import random
from fractions import Fraction

import pytest
import sympy
from conftest import roundtrip_cases
from hypothesis import given, settings
from hypothesis import strategies as st

from tubecover.classifier import (
    REASON_DEGREE,
    REASON_DIM_MISMATCH,
    REASON_FRACTIONAL,
    REASON_NO_DOMAIN,
    REASON_UNDECIDED,
    Verdict,
    classify,
    classify_semispecial,
    explain,
)
from tubecover.domains import DISK, DomainProduct, IrreducibleDomain, Kind
from tubecover.polyalg import Polynomial, is_squarefree, parse_polynomial, product
from tubecover.tensors import build_psi

P = parse_polynomial
D = P("x1*x4 - x2*x3")
Q3 = P("x1^2 + x2^2 + x3^2")


def embed(p, n):
    return p.embed(n, list(range(1, p.nvars + 1)))


def test_polydisk_example():
    r = classify(P("x1*x2*x3"), 3)
    assert r.m == 1 and r.verdict is Verdict.POLYDISK
    assert r.product == DomainProduct([DISK] * 3)
    assert not r.signature_character_possible or r.m == 1


def test_determinant_square_example():
    r = classify(D**2, 4)
    assert r.m == 1 and r.verdict is Verdict.TUBE_PRODUCT
    (rec,) = r.factors
    assert (rec.degree, rec.multiplicity, rec.dim) == (2, 2, 4)
    assert r.product == DomainProduct.parse("I_{2,2}")


def test_lie_ball_example():
    r = classify(Q3**3, 3)
    assert r.m == 2
    (rec,) = r.factors
    assert (rec.degree, rec.multiplicity, rec.dim) == (2, 3, 3)
    assert rec.domain == IrreducibleDomain(Kind.IV, 3)


def test_rejects_square_times_linear():
    r = classify(P("x1^2*x2"), 3)
    assert r.verdict is Verdict.REJECTED and r.reason == REASON_NO_DOMAIN
    assert r.m == 1
    by_poly = {str(f.poly): (f.multiplicity, f.dim) for f in r.factors}
    assert by_poly == {"x1": (2, 2), "x2": (1, 1)}
    assert r.offending == P("x1", 3)


def test_rejection_reasons():
    assert classify(P("x1*x2"), 3).reason == REASON_DEGREE
    # m = 2, factor x1 with a = 1: n_j = 1/2
    assert classify(P("x1*x2^3"), 2).reason == REASON_FRACTIONAL
    # two disks on three variables
    assert classify(P("x1*x2^2"), 3).reason == REASON_NO_DOMAIN
    r = classify(P("x1*x2*x3"), 4)
    assert r.reason == REASON_DEGREE


def test_factor_dimensions_always_sum_to_n():
    # sum a_j r_j / m = k / m, so the mismatch rejection is a guard only
    for psi, n in [(P("x1^2*x2"), 3), (Q3**3, 3), (embed(D, 5) ** 2 * P("x5"), 5)]:
        r = classify(psi, n)
        assert r.reason != REASON_DIM_MISMATCH
        assert sum(f.dim for f in r.factors) == n


def test_undecided_irreducibility_is_a_rejection():
    r = classify(Q3**3, 3, trials=0)
    assert r.reason == REASON_UNDECIDED
    assert r.offending is not None


def test_input_errors():
    with pytest.raises(ValueError):
        classify(Polynomial.zero(3), 3)
    with pytest.raises(ValueError):
        classify(P("x1^2 + x2"), 2)
    with pytest.raises(ValueError):
        classify(P("x1*x2*x5"), 3)
    with pytest.raises(ValueError):
        classify(P("x1"), 0)


def test_binary_quadratic_splits_over_complex():
    r = classify(P("x1^2 + x2^2"), 2)
    assert r.verdict is Verdict.POLYDISK
    assert all(f.complex_linear for f in r.factors)


def test_fewer_variables_than_dimension_are_embedded():
    assert classify(P("x1*x2"), 2).verdict is Verdict.POLYDISK
    r = classify(P("x1^2*x2^2"), 3)
    assert r.reason == REASON_DEGREE or r.verdict is Verdict.REJECTED


def test_signature_character_flag():
    assert classify(P("x1*x2*x3"), 3).signature_character_possible
    assert not classify(Q3**3, 3).signature_character_possible
    assert not classify(D**2, 4).signature_character_possible


# -- semi-special ------------------------------------------------------------------


def test_semispecial_pfaffian():
    r = classify_semispecial(P("x1*x6 - x2*x5 + x3*x4") ** 3, 6)
    assert r.product == DomainProduct.parse("II_4")
    (rec,) = r.factors
    assert (rec.degree, rec.dim) == (2, 6)
    assert r.semispecial


def test_semispecial_rejects_rank_two_dim_two():
    with pytest.raises(ValueError):
        classify_semispecial(embed(D, 5) * P("x5"), 5)
    r = classify_semispecial(embed(D, 5) * P("x5^3"), 5)
    (bad,) = [f for f in r.factors if f.degree == 2]
    assert (bad.multiplicity, bad.dim, bad.domain) == (1, 2, None)
    assert r.reason == REASON_NO_DOMAIN


def test_semispecial_degree_error():
    with pytest.raises(ValueError):
        classify_semispecial(D**2, 2)


# -- explain -----------------------------------------------------------------------


def test_explain_texts():
    text = explain(classify(P("x1*x2*x3"), 3))
    assert "square-free" in text
    text = explain(classify(P("x1^2*x2"), 3))
    assert REASON_NO_DOMAIN in text and "Offending factor: x1" in text
    text = explain(classify(build_psi(DomainProduct.parse("I_{2,2} x III_3"), 1), 10))
    assert "I_{2,2}" in text
    text = explain(classify(P("x1*x2"), 3))
    assert REASON_DEGREE in text


def test_report_json():
    data = classify(P("x1^2*x2"), 3).to_json()
    json.dumps(data)
    assert {"k", "n", "m", "factors", "verdict", "reason"} <= set(data)
    assert set(data["factors"][0]) >= {"poly", "degree", "multiplicity", "dim", "domain"}
    data = classify(D**2, 4).to_json()
    assert data["factors"][0]["domain"] == "I_{2,2}"
    assert "reason" not in data or data["reason"] is None


# -- roundtrip on the tractable part of the product table --------------------------

SMALL = [(p, m) for t, p, m in roundtrip_cases(cap=120) if t <= 120]


@pytest.mark.parametrize("prod_,m", SMALL, ids=[f"{p}-m{m}" for p, m in SMALL])
def test_roundtrip_small(prod_, m):
    r = classify(build_psi(prod_, m), prod_.dim)
    assert r.m == m
    assert r.product == prod_
    assert (r.verdict is Verdict.POLYDISK) == prod_.is_polydisk


def test_roundtrip_covers_every_domain_kind():
    kinds = {f.kind for p, _ in SMALL for f in p.factors}
    assert kinds == {Kind.I, Kind.II, Kind.III, Kind.IV}


# -- invariances ---------------------------------------------------------------------


def _block_change(psi, blocks, rng):
    """Apply a random invertible rational change inside each variable block."""
    n = psi.nvars
    subs = {}
    for block in blocks:
        while True:
            mat = [[Fraction(rng.randint(-3, 3)) for _ in block] for _ in block]
            if sympy.Matrix(mat).det() != 0:
                break
        for i, v in enumerate(block):
            subs[v] = sum((Polynomial.var(n, w) * mat[i][j] for j, w in enumerate(block)), Polynomial.zero(n))
    return psi.substitute(subs)


@pytest.mark.parametrize("text,m", [("I_{2,2} x H", 1), ("IV_3 x H", 2), ("II_4", 1), ("III_3 x H", 1)])
def test_invariant_under_block_linear_change(text, m):
    prod_ = DomainProduct.parse(text)
    psi = build_psi(prod_, m)
    base = classify(psi, prod_.dim)
    rng = random.Random(11)
    changed = _block_change(psi, base.blocks, rng)
    r = classify(changed, prod_.dim)
    assert r.verdict == base.verdict and r.product == base.product


@given(st.fractions(min_value=-50, max_value=50).filter(lambda c: c != 0))
@settings(max_examples=25, deadline=None)
def test_invariant_under_scaling(c):
    psi = embed(D, 5) ** 2 * P("x5")
    a, b = classify(psi, 5), classify(psi * c, 5)
    assert a.verdict == b.verdict and a.product == b.product and a.reason == b.reason


LINEAR = st.lists(st.integers(-3, 3), min_size=4, max_size=4).filter(any)


@given(st.lists(LINEAR, min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_polydisk_iff_squarefree_with_linear_factors(rows):
    forms = [sum((Polynomial.var(4, i + 1) * c for i, c in enumerate(r)), Polynomial.zero(4)) for r in rows]
    psi = product(forms, 4)
    r = classify(psi, 4)
    assert r.m == 1
    assert (r.verdict is Verdict.POLYDISK) == is_squarefree(psi)


def test_quadratic_factor_is_not_polydisk():
    r = classify(embed(Q3, 4) * P("x4"), 4)
    assert r.verdict is not Verdict.POLYDISK


def test_deterministic_given_seed():
    psi = build_psi(DomainProduct.parse("III_3 x IV_3"), 2)
    a = json.dumps(classify(psi, 9, seed=5).to_json(), sort_keys=True)
    b = json.dumps(classify(psi, 9, seed=5).to_json(), sort_keys=True)
    assert a == b
