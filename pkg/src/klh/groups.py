"""
Weyl groups of types A and D as permutation groups.

Type A_{n-1} is the symmetric group S_n acting on positions 1..n, written in
one-line notation. Type D_n is the group of signed permutations of
{-n..-1, 1..n} with w(-i) = -w(i) and an even number of negative entries in
the window [w(1) ... w(n)].

Products follow (u*v)(i) = u(v(i)), so right multiplication by a simple
reflection acts on positions:

>>> Permutation((3, 4, 1, 2)) * simple_reflection(CoxeterContext("A", 3), 2)
Permutation(images=(3, 1, 4, 2))
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "CoxeterContext", "Permutation", "SignedPermutation", "Element",
    "GroupTooLarge", "DEFAULT_GROUP_LIMIT",
    "element", "identity", "simple_reflection", "compose", "inverse",
    "length", "descents", "parabolic_decompose", "longest_element",
    "diagram_automorphism", "enumerate_group", "reduced_word", "support",
    "word_to_element", "parse_one_line",
]

DEFAULT_GROUP_LIMIT = 10**6


class GroupTooLarge(ValueError):
    """Raised when an operation would have to materialize too many elements."""

    def __init__(self, context: "CoxeterContext", limit: int):
        self.context = context
        self.limit = limit
        super().__init__(
            f"{context} has {context.order} elements, above the limit of "
            f"{limit}; a limit of at least {context.order} is required"
        )


@dataclass(frozen=True)
class CoxeterContext:
    """A Weyl group of type A or D, identified by its rank.

    Type A of rank r acts on S_{r+1} with simple labels 1..r. Type D of rank
    n acts on signed permutations of n letters with labels 0..n-1, where 0
    is the branch node attached to 2.
    """

    type: str
    rank: int

    def __post_init__(self):
        if self.type not in ("A", "D"):
            raise ValueError(f"unsupported Coxeter type {self.type!r}")
        if self.type == "A" and self.rank < 1:
            raise ValueError("type A needs rank >= 1")
        if self.type == "D" and self.rank < 2:
            raise ValueError("type D needs rank >= 2")

    def __str__(self):
        return f"{self.type}{self.rank}"

    @property
    def n(self) -> int:
        """Number of letters the group permutes."""
        return self.rank + 1 if self.type == "A" else self.rank

    @property
    def labels(self) -> tuple[int, ...]:
        if self.type == "A":
            return tuple(range(1, self.rank + 1))
        return tuple(range(0, self.rank))

    @property
    def order(self) -> int:
        if self.type == "A":
            return math.factorial(self.n)
        return 2 ** (self.n - 1) * math.factorial(self.n)

    @property
    def num_positive_roots(self) -> int:
        n = self.n
        return n * (n - 1) // 2 if self.type == "A" else n * (n - 1)

    def check_labels(self, labels: Iterable[int]) -> frozenset[int]:
        labels = frozenset(labels)
        bad = labels - set(self.labels)
        if bad:
            raise ValueError(f"labels {sorted(bad)} are not nodes of {self}")
        return labels


@dataclass(frozen=True)
class Permutation:
    """An element of S_n, stored as the one-line tuple (w(1), ..., w(n))."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..n")
        if len(self.images) < 2:
            raise ValueError("need at least 2 letters")

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def context(self) -> CoxeterContext:
        return CoxeterContext("A", len(self.images) - 1)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        _check_same(self, other)
        u = self.images
        return Permutation(tuple(u[j - 1] for j in other.images))

    def __str__(self):
        if self.n < 10:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    @cached_property
    def length(self) -> int:
        w = self.images
        n = len(w)
        return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])

    def has_right_descent(self, s: int) -> bool:
        return self.images[s - 1] > self.images[s]

    def right_multiply(self, s: int) -> "Permutation":
        w = list(self.images)
        w[s - 1], w[s] = w[s], w[s - 1]
        return Permutation(tuple(w))


@dataclass(frozen=True)
class SignedPermutation:
    """An element of the type D group, stored as its positive window.

    The negative half is never stored; w(-i) is computed as -w(i).
    """

    window: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(int(x) for x in self.window))
        w = self.window
        n = len(w)
        if n < 2:
            raise ValueError("type D needs at least 2 letters")
        if sorted(abs(x) for x in w) != list(range(1, n + 1)):
            raise ValueError(f"{w} is not a signed permutation of 1..{n}")
        if sum(1 for x in w if x < 0) % 2:
            raise ValueError(
                f"{w} has an odd number of negative entries; not in type D")

    @property
    def n(self) -> int:
        return len(self.window)

    @property
    def context(self) -> CoxeterContext:
        return CoxeterContext("D", len(self.window))

    def __call__(self, i: int) -> int:
        if i > 0:
            return self.window[i - 1]
        if i < 0:
            return -self.window[-i - 1]
        raise ValueError("0 is not a position")

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        _check_same(self, other)
        return SignedPermutation(tuple(self(j) for j in other.window))

    def __str__(self):
        return "[" + ",".join(map(str, self.window)) + "]"

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.n
        for i, x in enumerate(self.window, 1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return SignedPermutation(tuple(inv))

    @cached_property
    def length(self) -> int:
        # inversions plus negative-sum pairs; equals the inversion-set size
        w = self.window
        n = len(w)
        total = 0
        for i in range(n):
            for j in range(i + 1, n):
                if w[i] > w[j]:
                    total += 1
                if w[i] + w[j] < 0:
                    total += 1
        return total

    def has_right_descent(self, s: int) -> bool:
        w = self.window
        if s == 0:
            return -w[1] > w[0]
        return w[s - 1] > w[s]

    def right_multiply(self, s: int) -> "SignedPermutation":
        w = list(self.window)
        if s == 0:
            w[0], w[1] = -w[1], -w[0]
        else:
            w[s - 1], w[s] = w[s], w[s - 1]
        return SignedPermutation(tuple(w))


Element = Union[Permutation, SignedPermutation]


def _check_same(u: Element, v: Element):
    if type(u) is not type(v) or u.n != v.n:
        raise ValueError(f"elements {u} and {v} live in different groups")


def element(context: CoxeterContext, one_line: Sequence[int]) -> Element:
    """Build the group element of `context` with the given one-line notation."""
    one_line = tuple(one_line)
    if len(one_line) != context.n:
        raise ValueError(
            f"{context} needs {context.n} entries, got {len(one_line)}")
    if context.type == "A":
        return Permutation(one_line)
    return SignedPermutation(one_line)


def parse_one_line(context: CoxeterContext, text: str) -> Element:
    """Parse `5,2,-3,-4,1`; digit strings like `3412` are accepted for n < 10."""
    text = text.strip().strip("[]")
    if "," in text or " " in text.strip():
        parts = [p for p in text.replace(",", " ").split() if p]
        values = [int(p) for p in parts]
    elif text.isdigit() and len(text) == context.n:
        values = [int(c) for c in text]
    else:
        values = [int(text)]
    return element(context, values)


def identity(context: CoxeterContext) -> Element:
    return element(context, range(1, context.n + 1))


def simple_reflection(context: CoxeterContext, label: int) -> Element:
    if label not in context.labels:
        raise ValueError(f"{label} is not a node of {context}")
    return identity(context).right_multiply(label)


def compose(u: Element, v: Element) -> Element:
    """Return u*v, i.e. the map i -> u(v(i))."""
    return u * v


def inverse(w: Element) -> Element:
    return w.inverse()


def length(w: Element) -> int:
    return w.length


def descents(w: Element, side: str = "right") -> frozenset[int]:
    """Simple labels s with l(ws) < l(w) (right) or l(sw) < l(w) (left)."""
    if side == "left":
        w = w.inverse()
    elif side != "right":
        raise ValueError("side must be 'left' or 'right'")
    return frozenset(s for s in w.context.labels if w.has_right_descent(s))


def word_to_element(context: CoxeterContext, word: Iterable[int]) -> Element:
    w = identity(context)
    for s in word:
        w = w.right_multiply(s)
    return w


def reduced_word(w: Element) -> tuple[int, ...]:
    """Canonical reduced word: strip the smallest right descent repeatedly."""
    word = []
    labels = w.context.labels
    while True:
        for s in labels:
            if w.has_right_descent(s):
                word.append(s)
                w = w.right_multiply(s)
                break
        else:
            break
    return tuple(reversed(word))


def support(w: Element) -> frozenset[int]:
    return frozenset(reduced_word(w))


def parabolic_decompose(w: Element, J: Iterable[int], side: str = "right"):
    """Split w along the parabolic subgroup generated by J.

    With side="right" returns (w^J, w_J) where w = w^J * w_J and w^J has no
    right descent in J. With side="left" returns (_J w, ^J w) where
    w = _J w * ^J w, _J w lies in W_J and ^J w has no left descent in J.

    >>> A2 = CoxeterContext("A", 2)
    >>> [str(x) for x in parabolic_decompose(Permutation((3, 2, 1)), {1})]
    ['231', '213']
    """
    J = w.context.check_labels(J)
    if side == "left":
        upper, lower = parabolic_decompose(w.inverse(), J, "right")
        return lower.inverse(), upper.inverse()
    if side != "right":
        raise ValueError("side must be 'left' or 'right'")
    stripped = []
    u = w
    while True:
        for s in sorted(J):
            if u.has_right_descent(s):
                stripped.append(s)
                u = u.right_multiply(s)
                break
        else:
            break
    w_J = word_to_element(w.context, reversed(stripped))
    return u, w_J


def longest_element(context: CoxeterContext, J: Iterable[int]) -> Element:
    J = sorted(context.check_labels(J))
    w = identity(context)
    while True:
        for s in J:
            if not w.has_right_descent(s):
                w = w.right_multiply(s)
                break
        else:
            return w


def diagram_automorphism(w: Element) -> Element:
    """Reversal-complement in type A, conjugation by (1 -1) in type D."""
    if isinstance(w, Permutation):
        n = w.n
        return Permutation(tuple(n + 1 - x for x in reversed(w.images)))

    def flip(x):
        return -x if abs(x) == 1 else x

    window = [flip(w(-1 if i == 1 else i)) for i in range(1, w.n + 1)]
    return SignedPermutation(tuple(window))


def enumerate_group(context: CoxeterContext,
                    limit: int = DEFAULT_GROUP_LIMIT) -> Iterator[Element]:
    """Yield every element exactly once.

    Order is by length, then lexicographic on the one-line notation.
    """
    if context.order > limit:
        raise GroupTooLarge(context, limit)
    for images in enumerate_one_lines(context):
        yield element(context, images)


def enumerate_one_lines(context: CoxeterContext) -> list[tuple[int, ...]]:
    """All one-line tuples of the group, sorted by (length, one-line)."""
    n = context.n
    if context.type == "A":
        items = [(perm_length(p), p)
                 for p in itertools.permutations(range(1, n + 1))]
    else:
        items = []
        for p in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n - 1):
                last = 1 if signs.count(-1) % 2 == 0 else -1
                window = tuple(s * x for s, x in zip(signs + (last,), p))
                items.append((signed_length(window), window))
    items.sort()
    return [images for _, images in items]


def perm_length(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def signed_length(w: Sequence[int]) -> int:
    n = len(w)
    return sum((w[i] > w[j]) + (w[i] + w[j] < 0)
               for i in range(n) for j in range(i + 1, n))
