"""
Bruhat order, lower intervals and their rank generating functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .groups import (
    Element, Permutation, descents, identity, parabolic_decompose,
    reduced_word, support,
)
from .polynomial import IntPolynomial
from .roots import cover_labels, reflection_of_root
from .table import TABLE_LIMIT, group_table, iter_bits

__all__ = [
    "BruhatInterval", "leq", "leq_gale", "leq_lifting", "leq_subword",
    "sorted_prefix", "covers_down", "lower_interval", "poincare",
    "quotient_poincare", "is_bp_decomposition", "subword_products",
]


def sorted_prefix(w: Permutation, r: int) -> tuple[int, ...]:
    """Sorted values {w(1), ..., w(r)}."""
    if not 1 <= r <= w.n:
        raise ValueError(f"prefix length {r} out of range 1..{w.n}")
    return tuple(sorted(w.images[:r]))


def leq_gale(u: Permutation, w: Permutation) -> bool:
    """Tableau criterion: every sorted prefix of u is below that of w."""
    if not isinstance(u, Permutation) or not isinstance(w, Permutation):
        raise TypeError("the tableau criterion applies to type A only")
    if u.n != w.n:
        raise ValueError("elements live in different groups")
    a, b = u.images, w.images
    for r in range(1, len(a)):
        if any(x > y for x, y in zip(sorted(a[:r]), sorted(b[:r]))):
            return False
    return True


@lru_cache(maxsize=1 << 20)
def leq_lifting(u: Element, w: Element) -> bool:
    """Descent lifting: for s a right descent of w, u <= w iff min(u, us) <= ws."""
    if u.length > w.length:
        return False
    if w.length == 0:
        return u.length == 0
    s = max(descents(w))
    ws = w.right_multiply(s)
    if u.has_right_descent(s):
        u = u.right_multiply(s)
    return leq_lifting(u, ws)


def subword_products(w: Element) -> set[Element]:
    """Products of all reduced subwords of the canonical reduced word of w."""
    found = {identity(w.context)}
    for s in reduced_word(w):
        found |= {x.right_multiply(s) for x in found if not x.has_right_descent(s)}
    return found


def leq_subword(u: Element, w: Element) -> bool:
    """Exponential oracle straight from the subword property."""
    return u in subword_products(w)


def leq(u: Element, w: Element) -> bool:
    if u.context != w.context:
        raise ValueError(f"{u} and {w} live in different groups")
    if isinstance(u, Permutation):
        return leq_gale(u, w)
    return leq_lifting(u, w)


def covers_down(w: Element) -> frozenset[Element]:
    ctx = w.context
    return frozenset(w * reflection_of_root(b, ctx) for b in cover_labels(w))


@dataclass(frozen=True)
class BruhatInterval:
    """The lower interval [e, top], with members grouped by length."""

    top: Element
    ranks: tuple[tuple[Element, ...], ...]

    @property
    def members(self) -> tuple[Element, ...]:
        return tuple(x for rank in self.ranks for x in rank)

    @property
    def rank_sizes(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.ranks)

    def __len__(self):
        return sum(len(r) for r in self.ranks)

    def __contains__(self, x):
        return x.length < len(self.ranks) and x in self.ranks[x.length]


def _by_rank(top: Element, members: Iterable[Element]) -> BruhatInterval:
    ranks: list[list[Element]] = [[] for _ in range(top.length + 1)]
    for x in members:
        ranks[x.length].append(x)
    key = (lambda x: x.images) if isinstance(top, Permutation) \
        else (lambda x: x.window)
    return BruhatInterval(top, tuple(tuple(sorted(r, key=key)) for r in ranks))


def lower_interval(w: Element, method: str = "auto") -> BruhatInterval:
    """All y <= w.

    "filter" tests every group element against w using the precomputed
    Bruhat table; "closure" walks down covers from w. "auto" filters when
    the group has at most 50,000 elements.
    """
    if method == "auto":
        method = "filter" if w.context.order <= TABLE_LIMIT else "closure"
    if method == "filter":
        table = group_table(w.context)
        mask = table.lower(table.index_of(w))
        return _by_rank(w, (table.element(k) for k in iter_bits(mask)))
    if method == "closure":
        seen = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for x in frontier:
                for y in covers_down(x):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return _by_rank(w, seen)
    raise ValueError(f"unknown interval method {method!r}")


def poincare(w: Element) -> IntPolynomial:
    """L(w): the rank generating function of [e, w]."""
    if w.context.order <= TABLE_LIMIT:
        table = group_table(w.context)
        return IntPolynomial(table.rank_sizes(table.lower(table.index_of(w))))
    return IntPolynomial(lower_interval(w).rank_sizes)


def quotient_poincare(w: Element, J: Iterable[int]) -> IntPolynomial:
    """L^J(w): rank generating function of [e, w] restricted to W^J."""
    J = w.context.check_labels(J)
    if descents(w) & J:
        raise ValueError(f"{w} has a right descent in {sorted(J)}; not in W^J")
    if w.context.order <= TABLE_LIMIT:
        table = group_table(w.context)
        mask = table.lower(table.index_of(w)) & table.minimal_mask(J)
        return IntPolynomial(table.rank_sizes(mask))
    sizes = [0] * (w.length + 1)
    for x in lower_interval(w).members:
        if not descents(x) & J:
            sizes[x.length] += 1
    return IntPolynomial(sizes)


def is_bp_decomposition(w: Element, J: Iterable[int]) -> bool:
    """Whether supp(w^J) meets J only inside the left descents of w_J."""
    J = w.context.check_labels(J)
    upper, lower = parabolic_decompose(w, J)
    return (support(upper) & J) <= descents(lower, "left")
