import pytest
from hypothesis import given
from hypothesis import strategies as st

from tubecover.domains import (
    DISK,
    E27,
    DomainProduct,
    InvalidDomainError,
    IrreducibleDomain,
    Kind,
    admissible,
    canonical_domains,
    enumerate_divisible,
    lookup,
    minimal_m,
    rank_dim,
    solve_prop61,
    tensor_degrees,
)


def dom(text):
    return IrreducibleDomain.parse(text)


def all_kinds(max_param=8):
    out = [E27]
    for n in range(1, max_param + 1):
        out += [IrreducibleDomain(Kind.I, n), IrreducibleDomain(Kind.III, n)]
        if n % 2 == 0:
            out.append(IrreducibleDomain(Kind.II, n))
        if n >= 3:
            out.append(IrreducibleDomain(Kind.IV, n))
    return out


def brute_force_table(r, d):
    """Every (kind, param) giving (r, d), straight from the closed forms."""
    hits = []
    for n in range(1, 40):
        if (n, n * n) == (r, d):
            hits.append(("I", n))
        if (n, n * (n + 1) // 2) == (r, d):
            hits.append(("III", n))
        if (n, n * (2 * n - 1)) == (r, d):
            hits.append(("II", 2 * n))
    if r == 2 and d >= 3:
        hits.append(("IV", d))
    if (r, d) == (3, 27):
        hits.append(("E", 27))
    return hits


@pytest.mark.parametrize(
    "kind,param,expected",
    [(Kind.I, 3, (3, 9)), (Kind.II, 8, (4, 28)), (Kind.E, None, (3, 27)), (Kind.III, 3, (3, 6)), (Kind.IV, 5, (2, 5))],
)
def test_rank_dim(kind, param, expected):
    assert rank_dim(kind, param) == expected


@pytest.mark.parametrize("kind,param", [(Kind.II, 3), (Kind.IV, 2), (Kind.I, 0), (Kind.III, None)])
def test_rank_dim_invalid(kind, param):
    with pytest.raises(InvalidDomainError):
        rank_dim(kind, param)


def test_lookup_examples():
    assert lookup(1, 1) == DISK
    assert lookup(3, 27) == E27
    assert lookup(3, 5) is None
    assert lookup(2, 2) is None
    assert lookup(0, 3) is None
    assert lookup(2, 3) == IrreducibleDomain(Kind.IV, 3)
    assert lookup(2, 4) == IrreducibleDomain(Kind.I, 2)
    assert lookup(2, 6) == IrreducibleDomain(Kind.II, 4)
    assert lookup(2, 5) == IrreducibleDomain(Kind.IV, 5)


@pytest.mark.parametrize("d", all_kinds())
def test_lookup_inverts_rank_dim_up_to_isomorphism(d):
    found = lookup(d.rank, d.dim)
    assert found is not None
    assert (found.rank, found.dim) == (d.rank, d.dim)
    assert found == d.canonical()
    assert lookup(found.rank, found.dim) == found


def test_lookup_agrees_with_brute_force():
    for r in range(1, 7):
        for d in range(1, 40):
            hits = brute_force_table(r, d)
            assert (lookup(r, d) is None) == (not hits)


def test_rank_le_dim_with_equality_only_for_disk():
    for d in all_kinds():
        assert d.rank <= d.dim
        assert (d.rank == d.dim) == (d.canonical() == DISK)


def test_enumerate_divisible():
    assert enumerate_divisible(1) == [DISK]
    assert [str(d) for d in enumerate_divisible(4)] == ["I_{1,1}", "I_{2,2}"]
    six = [str(d) for d in enumerate_divisible(6)]
    assert six == ["I_{1,1}", "I_{2,2}", "II_4", "III_3"]
    for d in enumerate_divisible(40):
        assert d.dim % d.rank == 0
        assert len(brute_force_table(d.rank, d.dim)) >= 1


def test_canonical_domains_are_fixed_points():
    for d in canonical_domains(30):
        assert d.canonical() == d


@pytest.mark.parametrize("text", ["I_{3,3}", "II_4", "III_5", "IV_7", "E27"])
def test_domain_string_roundtrip(text):
    assert str(dom(text)) == text


@pytest.mark.parametrize("bad", ["I_{2,3}", "II_3", "IV_2", "V_3", ""])
def test_domain_parse_errors(bad):
    with pytest.raises(InvalidDomainError):
        dom(bad)


def test_product_canonical_sort_and_parse():
    p = DomainProduct([dom("III_3"), DISK, dom("I_{2,2}")])
    assert str(p) == "I_{1,1} × I_{2,2} × III_3"
    assert p.dim == 11
    assert DomainProduct.parse("III_3 x H x I_{2,2}") == p
    assert DomainProduct.parse("H^3").is_polydisk
    assert DomainProduct.parse("IV_4").canonical() == DomainProduct.parse("I_{2,2}")


def test_minimal_m_examples():
    assert minimal_m([(1, 1)]) == (1, [1])
    assert minimal_m([(2, 3)]) == (2, [3])
    assert minimal_m([(2, 4), (3, 6)]) == (1, [2, 2])
    with pytest.raises(ValueError):
        minimal_m([])


@given(st.lists(st.sampled_from([(d.rank, d.dim) for d in canonical_domains(30)]), min_size=1, max_size=4))
def test_minimal_m_is_least(pairs):
    m, a = minimal_m(pairs)
    assert all(aj * r == m * n for aj, (r, n) in zip(a, pairs))
    for smaller in range(1, m):
        assert any((smaller * n) % r for r, n in pairs)


def test_tensor_degrees_and_admissible():
    p = DomainProduct.parse("IV_3 x III_3")
    assert not admissible(p, 1)
    t = tensor_degrees(p, 2)
    assert (t.m, t.k, t.exponents) == (2, 18, (3, 4))
    with pytest.raises(ValueError):
        tensor_degrees(p, 3)


def test_square_count_solver_examples():
    assert solve_prop61(10, 2) == (1, 1)
    assert solve_prop61(8, 2) == (2, 0)
    assert solve_prop61(7, 1) is None
    assert solve_prop61(0, 0) == (0, 0)
    assert solve_prop61(-1, 0) is None


@given(st.integers(0, 20), st.integers(0, 20))
def test_square_count_solver_inverts(a, b):
    assert solve_prop61(4 * a + 6 * b, a + b) == (a, b)
