"""
R-polynomials and Kazhdan-Lusztig polynomials.

R_{y,w} follows the right-descent recursion, always peeling off the
largest-label right descent of w. P_{y,w} is obtained from

    q^{l(w)-l(y)} P_{y,w}(1/q) = sum_{y <= a <= w} R_{y,a}(q) P_{a,w}(q)

by walking [e, w] downward: once P_{a,w} is known, R_{y,a} P_{a,w} is
pushed into the accumulator of every y < a. The accumulator of y then equals
q^d P_{y,w}(1/q) - P_{y,w}(q) with d = l(w) - l(y), and the degree bound
deg P_{y,w} <= (d-1)/2 separates the two halves.

Internally polynomials are packed into Python ints by evaluating at
q = 2**PACK_BITS with balanced digits, so a polynomial product is a single
integer multiplication.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Union

from .groups import CoxeterContext, Element
from .polynomial import INT64_MAX, CoefficientOverflow, IntPolynomial
from .table import GroupTable, group_table

__all__ = [
    "INFINITY", "KLTable", "KLInvariantError", "IntervalTooLarge",
    "kl_table", "r_polynomial", "kl_polynomial", "h_via_kl",
    "h_via_kl_all_y", "is_smooth_kl", "min_positive_degree",
    "pack", "unpack", "KL_INTERVAL_LIMIT",
]

INFINITY = math.inf
PACK_BITS = 64
_BASE = 1 << PACK_BITS
_HALF = _BASE >> 1
_MASK = _BASE - 1

# refuse KL columns over lower intervals larger than this
KL_INTERVAL_LIMIT = 10_000

Height = Union[int, float]


class KLInvariantError(AssertionError):
    """A computed polynomial broke positivity, normalization or degree bounds."""


class IntervalTooLarge(ValueError):
    pass


def pack(coeffs: Iterable[int]) -> int:
    v = 0
    for c in reversed(tuple(coeffs)):
        if abs(c) > INT64_MAX // 2:
            raise CoefficientOverflow(f"coefficient {c} too large to pack")
        v = (v << PACK_BITS) + c
    return v


def unpack(v: int) -> list[int]:
    out = []
    while v:
        r = v & _MASK
        if r >= _HALF:
            r -= _BASE
        out.append(r)
        v = (v - r) >> PACK_BITS
    return out


def min_positive_degree(p: IntPolynomial) -> Height:
    for i, c in enumerate(p.coeffs):
        if i > 0 and c:
            return i
    return INFINITY


class KLTable:
    """Memoized R- and P-polynomials for one group.

    Columns are keyed by the table index of their top element:
    ``r_columns[w]`` maps y < w to packed R_{y,w}, ``p_columns[w]`` maps every
    y <= w to packed P_{y,w}. Every P entry is checked on insertion.
    """

    def __init__(self, context: CoxeterContext, table: GroupTable | None = None):
        self.context = context
        self.table = table or group_table(context)
        self.r_columns: dict[int, dict[int, int]] = {}
        self.p_columns: dict[int, dict[int, int]] = {}
        self._lower_lists: dict[int, list[int]] = {}

    # -- R ----------------------------------------------------------------

    def _lower_list(self, w: int) -> list[int]:
        got = self._lower_lists.get(w)
        if got is None:
            mask = self.table.lower(w) & ~(1 << w)
            got = []
            while mask:
                low = mask & -mask
                got.append(low.bit_length() - 1)
                mask ^= low
            self._lower_lists[w] = got
        return got

    def r_column(self, w: int) -> dict[int, int]:
        col = self.r_columns.get(w)
        if col is not None:
            return col
        t = self.table
        chain = []
        x = w
        while x not in self.r_columns and x != t.identity:
            chain.append(x)
            x = t.right[max(t.right_descents[x])][x]
        if x == t.identity:
            self.r_columns[x] = {}
        for x in reversed(chain):
            self._build_r_column(x)
        return self.r_columns[w]

    def _build_r_column(self, w: int):
        t = self.table
        desc = t.right_descents
        s = max(desc[w])
        ws = t.right[s][w]
        right_s = t.right[s]
        below = self.r_columns[ws]
        col = {}
        for y in self._lower_list(w):
            ys = right_s[y]
            if s in desc[y]:
                # y <= w with a shared descent forces ys <= ws
                col[y] = 1 if ys == ws else below[ys]
            else:
                a = 1 if ys == ws else below.get(ys, 0)
                b = 1 if y == ws else below.get(y, 0)
                col[y] = ((a + b) << PACK_BITS) - b
        self.r_columns[w] = col

    def r(self, y: int, w: int) -> IntPolynomial:
        if y == w:
            return IntPolynomial((1,))
        return IntPolynomial(unpack(self.r_column(w).get(y, 0)))

    # -- P ----------------------------------------------------------------

    def p_column(self, w: int) -> dict[int, int]:
        col = self.p_columns.get(w)
        if col is not None:
            return col
        members = self._lower_list(w)
        if len(members) + 1 > KL_INTERVAL_LIMIT:
            raise IntervalTooLarge(
                f"[e, {self.table.element(w)}] has {len(members) + 1} elements,"
                f" above the limit of {KL_INTERVAL_LIMIT}")
        for a in members:
            self.r_column(a)
        self.r_column(w)

        lengths = self.table.lengths
        top = lengths[w]
        acc = dict.fromkeys(members, 0)
        for y, r in self.r_columns[w].items():
            acc[y] += r
        col = {w: 1}
        for a in reversed(members):
            p = self._solve(acc.pop(a), top - lengths[a], a, w)
            col[a] = p
            for y, r in self.r_columns[a].items():
                acc[y] += r * p
        self.p_columns[w] = col
        return col

    def _solve(self, acc: int, d: int, y: int, w: int) -> int:
        coeffs = unpack(acc)
        half = (d - 1) // 2
        low = [-c for c in coeffs[: half + 1]]
        while low and low[-1] == 0:
            low.pop()
        expected = [0] * (d + 1)
        for k, c in enumerate(low):
            expected[k] -= c
            expected[d - k] += c
        while expected and expected[-1] == 0:
            expected.pop()
        if coeffs != expected:
            raise KLInvariantError(
                f"defining identity fails for y={self.table.element(y)}, "
                f"w={self.table.element(w)}: {coeffs} vs {expected}")
        self._check_p(low, d, y, w)
        return pack(low)

    def _check_p(self, coeffs: list[int], d: int, y: int, w: int):
        where = f"P(y={self.table.element(y)}, w={self.table.element(w)})"
        if not coeffs or coeffs[0] != 1:
            raise KLInvariantError(f"{where} = {coeffs} has constant term != 1")
        if any(c < 0 for c in coeffs):
            raise KLInvariantError(f"{where} = {coeffs} has a negative coefficient")
        if 2 * (len(coeffs) - 1) > d - 1:
            raise KLInvariantError(f"{where} = {coeffs} breaks the degree bound")
        if any(c > INT64_MAX for c in coeffs):
            raise CoefficientOverflow(f"{where} exceeds int64")

    def p(self, y: int, w: int) -> IntPolynomial:
        if not self.table.leq(y, w):
            return IntPolynomial(())
        return IntPolynomial(unpack(self.p_column(w)[y]))

    def p_polynomials(self, w: int) -> dict[int, IntPolynomial]:
        return {y: IntPolynomial(unpack(v)) for y, v in self.p_column(w).items()}

    # -- bulk access for serialization --------------------------------------

    def entries(self, kind: str = "P"):
        """Yield (y, w, coeffs) for every stored entry of the given kind."""
        columns = self.p_columns if kind == "P" else self.r_columns
        for w in sorted(columns):
            for y in sorted(columns[w]):
                yield y, w, tuple(unpack(columns[w][y]))

    def load_entries(self, kind: str, entries):
        columns = self.p_columns if kind == "P" else self.r_columns
        for y, w, coeffs in entries:
            columns.setdefault(w, {})[y] = pack(coeffs)

    def __eq__(self, other):
        return (isinstance(other, KLTable) and self.context == other.context
                and self.p_columns == other.p_columns
                and self.r_columns == other.r_columns)


@lru_cache(maxsize=None)
def kl_table(context: CoxeterContext) -> KLTable:
    return KLTable(context)


def _indices(y: Element, w: Element):
    if y.context != w.context:
        raise ValueError(f"{y} and {w} live in different groups")
    tab = kl_table(w.context)
    return tab, tab.table.index_of(y), tab.table.index_of(w)


def r_polynomial(y: Element, w: Element) -> IntPolynomial:
    tab, a, b = _indices(y, w)
    if not tab.table.leq(a, b):
        return IntPolynomial(())
    return tab.r(a, b)


def kl_polynomial(y: Element, w: Element) -> IntPolynomial:
    tab, a, b = _indices(y, w)
    return tab.p(a, b)


def h_via_kl(w: Element) -> Height:
    """Smallest positive degree of P_{e,w}; infinity when P_{e,w} = 1."""
    tab = kl_table(w.context)
    return min_positive_degree(tab.p(tab.table.identity, tab.table.index_of(w)))


def h_via_kl_all_y(w: Element) -> Height:
    tab = kl_table(w.context)
    col = tab.p_polynomials(tab.table.index_of(w))
    return min(min_positive_degree(p) for p in col.values())


def is_smooth_kl(w: Element) -> bool:
    return h_via_kl(w) == INFINITY
