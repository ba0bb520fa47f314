from functools import lru_cache
from math import comb, prod

from tubecover.domains import Kind, admissible, enumerate_products
from tubecover.tensors import norm_polynomial


@lru_cache(maxsize=None)
def norm_power_terms(dom, a, cap):
    """Number of terms of N**a, or cap + 1 as soon as it is known to exceed cap."""
    if dom.is_disk:
        return 1
    if dom.kind is Kind.IV:
        # diagonal quadratic form: monomials of degree a in the squares
        return min(comb(a + dom.dim - 1, dom.dim - 1), cap + 1)
    norm = norm_polynomial(dom)
    power = norm
    for _ in range(a - 1):
        if len(power) > cap:
            break
        power = power * norm
    return min(len(power), cap + 1)


def roundtrip_cases(max_dim=12, max_m=4, cap=10**9):
    """(term count of psi, product, m) for every admissible pair, smallest psi first.

    Counts above cap are reported as cap + 1.
    """
    rows = []
    for p in enumerate_products(max_dim):
        for m in range(1, max_m + 1):
            if admissible(p, m):
                t = prod(norm_power_terms(f, m * f.dim // f.rank, cap) for f in p.factors)
                rows.append((min(t, cap + 1), p, m))
    rows.sort(key=lambda r: (r[0], str(r[1]), r[2]))
    return rows


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
