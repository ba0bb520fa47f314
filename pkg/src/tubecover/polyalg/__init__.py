"""Exact sparse polynomial arithmetic over Q: GCD, square-free parts, blocks."""

from .gcd import NotDivisibleError, content_in, divides, exact_divide, gcd, gcd_many
from .irreducible import Irreducibility, IrreducibilityResult, Restriction, irreducibility_check
from .poly import Polynomial, product
from .sqfree import Block, FactoredForm, is_squarefree, split_coprime, squarefree_decomposition, variable_blocks
from .textfmt import PolynomialSyntaxError, format_polynomial, parse_polynomial

__all__ = [
    "Block",
    "FactoredForm",
    "Irreducibility",
    "IrreducibilityResult",
    "NotDivisibleError",
    "Polynomial",
    "PolynomialSyntaxError",
    "Restriction",
    "content_in",
    "divides",
    "exact_divide",
    "format_polynomial",
    "gcd",
    "gcd_many",
    "irreducibility_check",
    "is_squarefree",
    "parse_polynomial",
    "product",
    "split_coprime",
    "squarefree_decomposition",
    "variable_blocks",
]
