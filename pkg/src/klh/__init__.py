"""
Kazhdan-Lusztig polynomials and the statistic h(w) for Weyl groups of
types A and D.

>>> from klh import CoxeterContext, parse_one_line, h_via_kl
>>> h_via_kl(parse_one_line(CoxeterContext("A", 3), "3412"))
1
"""

__version__ = "0.1.0"

from .groups import (  # noqa: E402
    CoxeterContext, Permutation, SignedPermutation, element, identity,
    parse_one_line, simple_reflection, word_to_element,
)
from .polynomial import IntPolynomial  # noqa: E402
from .bruhat import leq, lower_interval, poincare  # noqa: E402
from .kl import (  # noqa: E402
    INFINITY, h_via_kl, kl_polynomial, r_polynomial, is_smooth_kl,
)
from .patterns import PatternId, contains, is_smooth_by_patterns  # noqa: E402
from .heights import (  # noqa: E402
    h_bjorner_ekedahl, h_formula_type_a, h_upper_bound_type_d, verify_bound,
    extremal_type_a, exceptional_type_d,
)

__all__ = [
    "CoxeterContext", "Permutation", "SignedPermutation", "element",
    "identity", "parse_one_line", "simple_reflection", "word_to_element",
    "IntPolynomial", "leq", "lower_interval", "poincare", "INFINITY",
    "h_via_kl", "kl_polynomial", "r_polynomial", "is_smooth_kl", "PatternId",
    "contains", "is_smooth_by_patterns", "h_bjorner_ekedahl",
    "h_formula_type_a", "h_upper_bound_type_d", "verify_bound",
    "extremal_type_a", "exceptional_type_d",
]
