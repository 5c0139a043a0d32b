"""
Indexed group tables for exhaustive sweeps.

Every element of a group gets an integer index in the deterministic
enumeration order (length, then one-line). Bruhat lower and upper sets are
stored as Python ints used as bitsets over those indices, built by closing
under covers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .groups import (
    CoxeterContext, Element, GroupTooLarge, element, enumerate_one_lines,
)
from .roots import positive_roots

__all__ = ["GroupTable", "group_table", "iter_bits", "TABLE_LIMIT"]

# largest group we are willing to tabulate in full
TABLE_LIMIT = 50_000


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GroupTable:
    def __init__(self, context: CoxeterContext, limit: int = TABLE_LIMIT):
        if context.order > limit:
            raise GroupTooLarge(context, limit)
        self.context = context
        self.labels = context.labels
        self.one_lines: list[tuple[int, ...]] = enumerate_one_lines(context)
        self.index = {w: k for k, w in enumerate(self.one_lines)}
        self.size = len(self.one_lines)
        self.lengths = [self._length(w) for w in self.one_lines]
        self.identity = 0
        self.longest = self.size - 1

        # right and left multiplication by simple reflections
        self.right = {s: [self.index[self._rmul(w, s)] for w in self.one_lines]
                      for s in self.labels}
        self.inverse = [self.index[self._inv(w)] for w in self.one_lines]
        inv = self.inverse
        self.left = {s: [inv[self.right[s][inv[k]]] for k in range(self.size)]
                     for s in self.labels}
        self.right_descents = [
            frozenset(s for s in self.labels
                      if self.lengths[self.right[s][k]] < self.lengths[k])
            for k in range(self.size)
        ]
        self._reflections = [self._root_action(b) for b in positive_roots(context)]
        self._covers_down: dict[int, tuple[int, ...]] = {}
        self._covers_up: dict[int, tuple[int, ...]] = {}
        self._lower: dict[int, int] = {}
        self._upper: dict[int, int] = {}

    # -- one-line helpers -------------------------------------------------

    def _length(self, w):
        n = len(w)
        if self.context.type == "A":
            return sum(w[i] > w[j] for i in range(n) for j in range(i + 1, n))
        return sum((w[i] > w[j]) + (w[i] + w[j] < 0)
                   for i in range(n) for j in range(i + 1, n))

    def _rmul(self, w, s):
        w = list(w)
        if self.context.type == "D" and s == 0:
            w[0], w[1] = -w[1], -w[0]
        else:
            w[s - 1], w[s] = w[s], w[s - 1]
        return tuple(w)

    def _inv(self, w):
        out = [0] * len(w)
        for i, x in enumerate(w, 1):
            out[abs(x) - 1] = i if x > 0 else -i
        return tuple(out)

    def _root_action(self, beta):
        """Right multiplication by r_beta as (i, j, negate) on positions."""
        i, j = beta.support
        return i - 1, j - 1, not beta.is_type_a

    def _times_reflection(self, w, refl):
        i, j, negate = refl
        w = list(w)
        if negate:
            w[i], w[j] = -w[j], -w[i]
        else:
            w[i], w[j] = w[j], w[i]
        return tuple(w)

    # -- element access ---------------------------------------------------

    def element(self, k: int) -> Element:
        return element(self.context, self.one_lines[k])

    def index_of(self, w: Element) -> int:
        key = w.images if self.context.type == "A" else w.window
        if w.context != self.context:
            raise ValueError(f"{w} is not in {self.context}")
        return self.index[key]

    def multiply(self, a: int, b: int) -> int:
        u, v = self.one_lines[a], self.one_lines[b]
        return self.index[tuple(
            (u[x - 1] if x > 0 else -u[-x - 1]) for x in v)]

    # -- Bruhat structure -------------------------------------------------

    def covers_down(self, k: int) -> tuple[int, ...]:
        got = self._covers_down.get(k)
        if got is None:
            w = self.one_lines[k]
            target = self.lengths[k] - 1
            out = []
            for refl in self._reflections:
                c = self.index[self._times_reflection(w, refl)]
                if self.lengths[c] == target:
                    out.append(c)
            got = self._covers_down[k] = tuple(sorted(out))
        return got

    def covers_up(self, k: int) -> tuple[int, ...]:
        got = self._covers_up.get(k)
        if got is None:
            w = self.one_lines[k]
            target = self.lengths[k] + 1
            out = []
            for refl in self._reflections:
                c = self.index[self._times_reflection(w, refl)]
                if self.lengths[c] == target:
                    out.append(c)
            got = self._covers_up[k] = tuple(sorted(out))
        return got

    def lower(self, k: int) -> int:
        """Bitset of the lower interval [e, w_k]."""
        got = self._lower.get(k)
        if got is not None:
            return got
        # iterative closure so deep chains never hit the recursion limit
        stack = [k]
        while stack:
            top = stack[-1]
            if top in self._lower:
                stack.pop()
                continue
            pending = [c for c in self.covers_down(top) if c not in self._lower]
            if pending:
                stack.extend(pending)
                continue
            mask = 1 << top
            for c in self.covers_down(top):
                mask |= self._lower[c]
            self._lower[top] = mask
            stack.pop()
        return self._lower[k]

    def upper(self, k: int) -> int:
        """Bitset of the upper interval [w_k, w_0]."""
        got = self._upper.get(k)
        if got is not None:
            return got
        stack = [k]
        while stack:
            top = stack[-1]
            if top in self._upper:
                stack.pop()
                continue
            pending = [c for c in self.covers_up(top) if c not in self._upper]
            if pending:
                stack.extend(pending)
                continue
            mask = 1 << top
            for c in self.covers_up(top):
                mask |= self._upper[c]
            self._upper[top] = mask
            stack.pop()
        return self._upper[k]

    def leq(self, a: int, b: int) -> bool:
        return bool(self.lower(b) >> a & 1)

    def rank_sizes(self, mask: int) -> list[int]:
        sizes: list[int] = []
        for k in iter_bits(mask):
            ell = self.lengths[k]
            while len(sizes) <= ell:
                sizes.append(0)
            sizes[ell] += 1
        return sizes

    def minimal_mask(self, J) -> int:
        """Bitset of W^J, the elements with no right descent in J."""
        J = frozenset(J)
        mask = 0
        for k, d in enumerate(self.right_descents):
            if not (d & J):
                mask |= 1 << k
        return mask


@lru_cache(maxsize=None)
def group_table(context: CoxeterContext) -> GroupTable:
    return GroupTable(context)
