"""
Root systems of types A and D, inversion sets and cover labels.

Roots live in Z^n with e_1..e_n the coordinate vectors. Positive roots are
e_j - e_i and (type D only) e_j + e_i for i < j, so a root is positive
exactly when its last nonzero coordinate is +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .groups import CoxeterContext, Element, Permutation, SignedPermutation

__all__ = [
    "Root", "positive_roots", "reflection_of_root", "act_on_vector",
    "inversion_set", "cover_labels", "linearly_dependent", "integer_rank",
    "rational_rank", "split_inversion", "split_into_cover_labels",
]


def _last_nonzero(coords: Sequence[int]) -> int:
    for c in reversed(coords):
        if c:
            return c
    return 0


@dataclass(frozen=True, order=True)
class Root:
    """A root of type A or D, always stored in its positive form."""

    coords: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        nonzero = [x for x in c if x]
        if len(nonzero) != 2 or any(abs(x) != 1 for x in nonzero):
            raise ValueError(f"{c} is not a root of type A or D")
        if _last_nonzero(c) < 0:
            c = tuple(-x for x in c)
        object.__setattr__(self, "coords", c)

    @classmethod
    def minus(cls, n: int, j: int, i: int) -> "Root":
        """e_j - e_i"""
        c = [0] * n
        c[j - 1] += 1
        c[i - 1] -= 1
        return cls(tuple(c))

    @classmethod
    def plus(cls, n: int, j: int, i: int) -> "Root":
        """e_j + e_i"""
        c = [0] * n
        c[j - 1] += 1
        c[i - 1] += 1
        return cls(tuple(c))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def support(self) -> tuple[int, int]:
        """The two coordinates (i, j), i < j, where the root is nonzero."""
        i, j = (k + 1 for k, x in enumerate(self.coords) if x)
        return i, j

    @property
    def is_type_a(self) -> bool:
        return sum(self.coords) == 0

    def __add__(self, other: "Root") -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.coords, other.coords))

    def __str__(self):
        i, j = self.support
        sign = "-" if self.is_type_a else "+"
        return f"e{j}{sign}e{i}"


def positive_roots(context: CoxeterContext) -> tuple[Root, ...]:
    n = context.n
    roots = [Root.minus(n, j, i) for i in range(1, n + 1)
             for j in range(i + 1, n + 1)]
    if context.type == "D":
        roots += [Root.plus(n, j, i) for i in range(1, n + 1)
                  for j in range(i + 1, n + 1)]
    return tuple(sorted(roots))


def reflection_of_root(beta: Root, context: CoxeterContext) -> Element:
    """The reflection r_beta as a group element of `context`."""
    if beta.n != context.n:
        raise ValueError(f"{beta} does not live in {context}")
    i, j = beta.support
    if context.type == "A":
        if not beta.is_type_a:
            raise ValueError(f"{beta} is not a root of type A")
        w = list(range(1, context.n + 1))
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        return Permutation(tuple(w))
    w = list(range(1, context.n + 1))
    if beta.is_type_a:
        w[i - 1], w[j - 1] = j, i
    else:
        w[i - 1], w[j - 1] = -j, -i
    return SignedPermutation(tuple(w))


def _signed_images(w: Element) -> tuple[int, ...]:
    return w.images if isinstance(w, Permutation) else w.window


def act_on_vector(w: Element, v: Sequence[int]) -> tuple[int, ...]:
    """Apply w to a vector, where w(e_i) = e_{w(i)} and e_{-k} = -e_k."""
    out = [0] * len(v)
    for i, x in enumerate(_signed_images(w)):
        if x > 0:
            out[x - 1] += v[i]
        else:
            out[-x - 1] -= v[i]
    return tuple(out)


def inversion_set(w: Element) -> frozenset[Root]:
    """Positive roots sent to negative roots by w."""
    return frozenset(
        beta for beta in positive_roots(w.context)
        if _last_nonzero(act_on_vector(w, beta.coords)) < 0
    )


def cover_labels(w: Element) -> frozenset[Root]:
    """Positive roots beta with l(w r_beta) = l(w) - 1."""
    ctx = w.context
    target = w.length - 1
    return frozenset(
        beta for beta in positive_roots(ctx)
        if (w * reflection_of_root(beta, ctx)).length == target
    )


def integer_rank(vectors: Iterable[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    rows = [list(map(int, v)) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            rows[r] = [(p * rows[r][k] - f * rows[rank][k]) // prev
                       for k in range(ncols)]
        prev = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def rational_rank(vectors: Iterable[Sequence[int]]) -> int:
    """Rank by Gaussian elimination over Fractions; slow, used as an oracle."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def linearly_dependent(roots: Iterable[Root]) -> bool:
    roots = list(roots)
    return integer_rank(r.coords for r in roots) < len(roots)


def split_inversion(w: Element, beta: Root) -> Optional[tuple[Root, Root]]:
    """Write a non-cover inversion as a sum of two inversions.

    Returns None when w covers w r_beta; otherwise the pair (beta1, beta2)
    of inversions with beta1 + beta2 = beta and beta1 smallest.
    """
    inv = inversion_set(w)
    if beta not in inv:
        raise ValueError(f"{beta} is not an inversion of {w}")
    drop = w.length - (w * reflection_of_root(beta, w.context)).length
    if drop == 1:
        return None
    for beta1 in sorted(inv):
        diff = tuple(b - a for a, b in zip(beta1.coords, beta.coords))
        try:
            beta2 = Root(diff)
        except ValueError:
            continue
        if beta2.coords == diff and beta2 in inv:
            return beta1, beta2
    raise AssertionError(f"no splitting of {beta} found for {w}")


def split_into_cover_labels(w: Element, beta: Root) -> list[Root]:
    """Repeatedly split beta until every summand labels a cover below w."""
    pair = split_inversion(w, beta)
    if pair is None:
        return [beta]
    return (split_into_cover_labels(w, pair[0])
            + split_into_cover_labels(w, pair[1]))
