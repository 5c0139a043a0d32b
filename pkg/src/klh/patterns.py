"""
Pattern occurrences in S_n and in the type D group.

Two notions of containment are used for signed permutations:

* classic: positions i_1 < ... < i_k range over +-[n] with distinct absolute
  values, and the values w(i_1), ..., w(i_k) are in the relative order of an
  ordinary permutation p;
* signed: positions 1 <= i_1 < ... < i_k <= n, the signs of w(i_j) match the
  signs of p(j), and the absolute values are in the relative order of |p|.

3412 and 4231 are always searched classically; the remaining smoothness
patterns (each carrying a free sign on its first entry) are signed.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .groups import Element, Permutation, SignedPermutation

__all__ = [
    "PatternId", "Occurrence", "SIGNED_VARIANTS", "find_classic",
    "find_signed", "contains", "is_smooth_by_patterns", "min_height",
    "min_content", "magnitude", "h_equals_one_detect", "pattern_flags",
    "occurrence_height", "occurrence_content",
]


class PatternId(str, enum.Enum):
    P3412 = "3412"
    P4231 = "4231"
    P12m3 = "±12-3"
    P1m3m2 = "±1-3-2"
    P14m32 = "±14-32"


CLASSIC = {
    PatternId.P3412: (3, 4, 1, 2),
    PatternId.P4231: (4, 2, 3, 1),
}

SIGNED_VARIANTS = {
    PatternId.P12m3: ((1, 2, -3), (-1, 2, -3)),
    PatternId.P1m3m2: ((1, -3, -2), (-1, -3, -2)),
    PatternId.P14m32: ((1, 4, -3, 2), (-1, 4, -3, 2)),
}


@dataclass(frozen=True)
class Occurrence:
    pattern_id: Optional[PatternId]
    positions: tuple[int, ...]
    values: tuple[int, ...]
    pattern: tuple[int, ...]

    @property
    def height(self) -> int:
        """w(a) - w(d) for an occurrence of 3412 at a < b < c < d."""
        return occurrence_height(self)


def _standardize(values: Sequence[int]) -> tuple[int, ...]:
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return tuple(ranks)


def _pattern_id(p: tuple[int, ...]) -> Optional[PatternId]:
    for pid, q in CLASSIC.items():
        if q == p:
            return pid
    for pid, variants in SIGNED_VARIANTS.items():
        if p in variants:
            return pid
    return None


def find_classic(w: Element, p: Sequence[int]) -> list[Occurrence]:
    """All classic occurrences of the permutation p, sorted by positions."""
    p = tuple(p)
    k = len(p)
    pid = _pattern_id(p)
    out = []
    if isinstance(w, Permutation):
        for pos in itertools.combinations(range(1, w.n + 1), k):
            vals = tuple(w(i) for i in pos)
            if _standardize(vals) == p:
                out.append(Occurrence(pid, pos, vals, p))
        return out
    n = w.n
    signed_positions = list(range(-n, 0)) + list(range(1, n + 1))
    for pos in itertools.combinations(signed_positions, k):
        if len({abs(i) for i in pos}) < k:
            continue
        vals = tuple(w(i) for i in pos)
        if _standardize(vals) == p:
            out.append(Occurrence(pid, pos, vals, p))
    return out


def find_signed(w: SignedPermutation,
                p: Union[PatternId, Sequence[int]]) -> list[Occurrence]:
    """Signed occurrences at positive positions; +- families try both signs."""
    if isinstance(p, PatternId):
        variants = SIGNED_VARIANTS[p]
    else:
        variants = (tuple(p),)
    if isinstance(w, Permutation):
        # no negative entries, and every signed smoothness pattern has one
        if any(x < 0 for v in variants for x in v):
            return []
        w = SignedPermutation(w.images)
    out = []
    for v in variants:
        k = len(v)
        signs = tuple(x > 0 for x in v)
        shape = _standardize([abs(x) for x in v])
        pid = _pattern_id(v)
        for pos in itertools.combinations(range(1, w.n + 1), k):
            vals = tuple(w(i) for i in pos)
            if tuple(x > 0 for x in vals) != signs:
                continue
            if _standardize([abs(x) for x in vals]) == shape:
                out.append(Occurrence(pid, pos, vals, v))
    out.sort(key=lambda o: (o.positions, o.pattern))
    return out


def contains(w: Element, pid: PatternId) -> bool:
    if pid in CLASSIC:
        return bool(find_classic(w, CLASSIC[pid]))
    if isinstance(w, Permutation):
        return False
    return bool(find_signed(w, pid))


def is_smooth_by_patterns(w: Element) -> bool:
    return not any(contains(w, pid) for pid in PatternId)


def occurrence_height(occ: Occurrence) -> int:
    if occ.pattern != (3, 4, 1, 2):
        raise ValueError("height is defined for 3412 occurrences only")
    return occ.values[0] - occ.values[3]


def occurrence_content(w: Permutation, occ: Occurrence) -> int:
    a, b, c, d = occ.positions
    lo, hi = w(d), w(a)
    return 1 + sum(1 for i in range(b + 1, c) if lo < w(i) < hi)


def min_height(w: Element) -> Optional[int]:
    occs = find_classic(w, CLASSIC[PatternId.P3412])
    return min((o.height for o in occs), default=None)


def min_content(w: Permutation) -> Optional[int]:
    if not isinstance(w, Permutation):
        raise TypeError("content is defined in type A only")
    occs = find_classic(w, CLASSIC[PatternId.P3412])
    return min((occurrence_content(w, o) for o in occs), default=None)


def magnitude(w: SignedPermutation) -> Optional[int]:
    """Smallest b such that +-1 -3 -2 occurs with values (+-a, -c, -b)."""
    if isinstance(w, Permutation):
        return None
    occs = find_signed(w, PatternId.P1m3m2)
    return min((-o.values[2] for o in occs), default=None)


def h_equals_one_detect(w: Element) -> bool:
    if isinstance(w, Permutation) and contains(w, PatternId.P4231):
        return True
    if isinstance(w, SignedPermutation) and (
            contains(w, PatternId.P12m3) or contains(w, PatternId.P14m32)):
        return True
    return min_height(w) == 1


def pattern_flags(w: Element) -> dict[str, bool]:
    return {f"contains_{pid.name[1:]}": contains(w, pid) for pid in PatternId}
