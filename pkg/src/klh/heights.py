"""
The statistic h(w) computed without Kazhdan-Lusztig polynomials.

h(w) can be read off the Poincare polynomial L(w) as the first index where
its coefficients stop being symmetric. For permutations there is a closed
form in terms of patterns; for type D only upper bounds are available.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .bruhat import poincare
from .groups import Element, Permutation, SignedPermutation
from .kl import INFINITY, Height, h_via_kl
from .patterns import (
    PatternId, contains, h_equals_one_detect, is_smooth_by_patterns,
    magnitude, min_height,
)
from .polynomial import IntPolynomial

__all__ = [
    "Method", "HValue", "NotTopHeavy", "BoundReport", "top_heavy_h",
    "polynomial_h",
    "is_top_heavy", "h_bjorner_ekedahl", "h_formula_type_a",
    "h_upper_bound_type_d", "verify_bound", "min_of_h_check",
    "extremal_type_a", "exceptional_type_d",
]


class Method(str, enum.Enum):
    KL = "kl"
    BJORNER_EKEDAHL = "be"
    FORMULA_A = "formula"
    BOUND_D = "bound"


@dataclass(frozen=True)
class HValue:
    value: Height
    method: Method

    def __post_init__(self):
        if self.value != INFINITY and (not isinstance(self.value, int)
                                       or self.value < 1):
            raise ValueError(f"h must be a positive integer or infinity, "
                             f"got {self.value!r}")

    @property
    def smooth(self) -> bool:
        return self.value == INFINITY


class NotTopHeavy(ValueError):
    def __init__(self, f: IntPolynomial, index: int):
        self.polynomial = f
        self.index = index
        d = f.degree
        super().__init__(
            f"{f} is not top-heavy: [q^{index}] = {f[index]} > "
            f"[q^{d - index}] = {f[d - index]}")


def is_top_heavy(f: IntPolynomial) -> bool:
    d = f.degree
    return f.is_nonnegative() and all(f[i] <= f[d - i] for i in range(d // 2 + 1))


def polynomial_h(f: IntPolynomial) -> Height:
    """First i <= d/2 with [q^i]f < [q^{d-i}]f, infinity if there is none.

    No top-heaviness is assumed. A product of top-heavy polynomials need
    not be top-heavy, yet its h is still the minimum of the two:

    >>> polynomial_h(IntPolynomial([1, 2]) * IntPolynomial([1, 0, 1]))
    0
    """
    d = f.degree
    for i in range(d // 2 + 1):
        if f[i] < f[d - i]:
            return i
    return INFINITY


def top_heavy_h(f: IntPolynomial) -> Height:
    """h of a nonnegative top-heavy polynomial; infinity if f is palindromic.

    >>> top_heavy_h(IntPolynomial([1, 3, 5, 4, 1]))
    1
    """
    if not f.is_nonnegative():
        raise ValueError(f"{f} has a negative coefficient")
    d = f.degree
    for i in range(d // 2 + 1):
        if f[i] > f[d - i]:
            raise NotTopHeavy(f, i)
    return polynomial_h(f)


def h_bjorner_ekedahl(w: Element) -> Height:
    return top_heavy_h(poincare(w))


def h_formula_type_a(w: Permutation) -> Height:
    """1 if w contains 4231, otherwise the minimum height of a 3412."""
    if not isinstance(w, Permutation):
        raise TypeError("the closed formula applies to permutations only")
    if is_smooth_by_patterns(w):
        return INFINITY
    if contains(w, PatternId.P4231):
        return 1
    return min_height(w)


def h_upper_bound_type_d(w: SignedPermutation) -> Height:
    """Best upper bound on h(w) available from pattern containment."""
    if not isinstance(w, SignedPermutation):
        raise TypeError("type D bounds apply to signed permutations only")
    r = w.context.rank
    if r < 4:
        raise ValueError("type D bounds need rank >= 4")
    if is_smooth_by_patterns(w):
        return INFINITY
    if h_equals_one_detect(w):
        return 1
    if contains(w, PatternId.P4231):
        return 2
    mg = magnitude(w)
    if mg is not None:
        return mg - 1
    return r - 2


@dataclass(frozen=True)
class BoundReport:
    element: Element
    rank: int
    h: Height
    method: Method
    singular: bool

    @property
    def bound(self) -> int:
        return self.rank - 2

    @property
    def holds(self) -> bool:
        return not self.singular or self.h <= self.bound


def verify_bound(w: Element, method: Union[Method, str, None] = None) -> BoundReport:
    """Check that a singular w has h(w) <= rank - 2.

    By default h comes from the closed formula in type A and from the
    Poincare polynomial in type D.
    """
    if method is None:
        method = Method.FORMULA_A if isinstance(w, Permutation) \
            else Method.BJORNER_EKEDAHL
    method = Method(method)
    if method == Method.FORMULA_A:
        h = h_formula_type_a(w)
    elif method == Method.BJORNER_EKEDAHL:
        h = h_bjorner_ekedahl(w)
    elif method == Method.KL:
        h = h_via_kl(w)
    else:
        raise ValueError(f"{method} does not compute h exactly")
    return BoundReport(w, w.context.rank, h, method, h != INFINITY)


def min_of_h_check(f1: IntPolynomial, f2: IntPolynomial) -> bool:
    for f in (f1, f2):
        if not is_top_heavy(f):
            raise ValueError(f"{f} is not a nonnegative top-heavy polynomial")
    return polynomial_h(f1 * f2) == min(top_heavy_h(f1), top_heavy_h(f2))


def extremal_type_a(n: int) -> Permutation:
    """(n-1) n (n-2) (n-3) ... 3 1 2, the permutation with h = n - 3."""
    if n < 4:
        raise ValueError("need n >= 4")
    middle = [n - i + 1 for i in range(3, n - 1)]
    return Permutation((n - 1, n, *middle, 1, 2))


def exceptional_type_d(n: int) -> SignedPermutation:
    """[n, 2, -3, -4, ..., -(n-1), +-1] with the sign making it type D."""
    if n < 4:
        raise ValueError("need n >= 4")
    body = [n, 2] + [-i for i in range(3, n)]
    last = 1 if sum(x < 0 for x in body) % 2 == 0 else -1
    return SignedPermutation((*body, last))
