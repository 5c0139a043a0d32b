"""
Exhaustive verification sweeps over a whole group.

Each suite is a list of named checks run on every element. A check returns
an iterable of failures; an empty report means every statement held.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

from .bruhat import (
    is_bp_decomposition, leq_gale, leq_lifting, quotient_poincare,
    subword_products,
)
from .groups import (
    CoxeterContext, Element, Permutation, diagram_automorphism,
    parabolic_decompose,
)
from .heights import (
    h_bjorner_ekedahl, h_formula_type_a, h_upper_bound_type_d, is_top_heavy,
)
from .kl import INFINITY, KLTable, kl_table, min_positive_degree, unpack
from .patterns import (
    PatternId, contains, h_equals_one_detect, is_smooth_by_patterns, magnitude,
)
from .polynomial import IntPolynomial
from .roots import (
    cover_labels, inversion_set, linearly_dependent, split_inversion,
    split_into_cover_labels,
)
from .table import GroupTable, iter_bits

__all__ = [
    "SUITES", "Failure", "VerificationReport", "RankCapExceeded",
    "rank_cap", "run_suite", "Sweep",
]

# default / --slow caps on the rank of each type
RANK_CAPS = {"A": (5, 6), "D": (4, 5)}


class RankCapExceeded(ValueError):
    pass


def rank_cap(context: CoxeterContext, slow: bool = False) -> int:
    return RANK_CAPS[context.type][1 if slow else 0]


@dataclass(frozen=True)
class Failure:
    element: tuple[int, ...]
    check: str
    expected: Any
    actual: Any

    def to_json(self):
        return {"element": list(self.element), "check": self.check,
                "expected": _jsonable(self.expected),
                "actual": _jsonable(self.actual)}


def _jsonable(v):
    if v == INFINITY:
        return "inf"
    if isinstance(v, IntPolynomial):
        return list(v.coeffs)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class VerificationReport:
    context: CoxeterContext
    suite: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0
    max_h_singular: Optional[int] = None
    checks: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checked = max(self.checked, other.checked)
        self.failures.extend(other.failures)
        self.elapsed += other.elapsed
        self.checks.update(other.checks)
        hs = [h for h in (self.max_h_singular, other.max_h_singular)
              if h is not None]
        self.max_h_singular = max(hs) if hs else None
        return self

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "type": self.context.type,
            "rank": self.context.rank,
            "suite": self.suite,
            "checked": self.checked,
            "failures": [f.to_json() for f in self.failures],
            "max_h_singular": self.max_h_singular,
            "checks": dict(sorted(self.checks.items())),
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


class Sweep:
    """Shared state for one pass over a group."""

    def __init__(self, context: CoxeterContext, kl: Optional[KLTable] = None):
        self.context = context
        self.kl = kl or kl_table(context)
        self.table: GroupTable = self.kl.table
        self.labels = context.labels
        self.subsets = [frozenset(c) for r in range(len(self.labels) + 1)
                        for c in itertools.combinations(self.labels, r)]
        self._h: dict[int, Any] = {}

    def h(self, k: int):
        got = self._h.get(k)
        if got is None:
            p = IntPolynomial(unpack(self.kl.p_column(k)[self.table.identity]))
            got = self._h[k] = min_positive_degree(p)
        return got

    def h_of(self, w: Element):
        return self.h(self.table.index_of(w))

    def key(self, k: int) -> tuple[int, ...]:
        return self.table.one_lines[k]


Check = Callable[[Sweep, int, Element], Iterator[tuple[str, Any, Any]]]


# -- individual checks ----------------------------------------------------
# each yields (check-id, expected, actual) for every violation

def check_formula_a(sw: Sweep, k: int, w: Element):
    h = sw.h(k)
    f = h_formula_type_a(w)
    if h != f:
        yield "formula-a", f, h


def check_simply_laced_bound(sw: Sweep, k: int, w: Element):
    h = sw.h(k)
    if h != INFINITY and h > sw.context.rank - 2:
        yield "bound-r-2", sw.context.rank - 2, h


def check_bounds_d(sw: Sweep, k: int, w: Element):
    h = sw.h(k)
    bound = h_upper_bound_type_d(w)
    if not h <= bound:
        yield "bound-d", bound, h
    if contains(w, PatternId.P4231) and not h <= 2:
        yield "bound-4231", 2, h
    mg = magnitude(w)
    if mg is not None and not contains(w, PatternId.P4231) and not h <= mg - 1:
        yield "bound-magnitude", mg - 1, h
    if h_equals_one_detect(w) and h != 1:
        yield "h-equals-one", 1, h


def check_smoothness(sw: Sweep, k: int, w: Element):
    by_kl = sw.h(k) == INFINITY
    by_patterns = is_smooth_by_patterns(w)
    if by_kl != by_patterns:
        yield "smooth-patterns-vs-kl", by_kl, by_patterns


def check_leq_agreement(sw: Sweep, k: int, w: Element):
    t = sw.table
    mask = t.lower(k)
    by_subword = {t.index_of(x) for x in subword_products(w)}
    by_mask = set(iter_bits(mask))
    if by_subword != by_mask:
        yield "leq-subword", sorted(by_mask), sorted(by_subword)
    for u in range(t.size):
        expected = bool(mask >> u & 1)
        x = t.element(u)
        if leq_lifting(x, w) != expected:
            yield "leq-lifting", expected, not expected
        if isinstance(w, Permutation) and leq_gale(x, w) != expected:
            yield "leq-gale", expected, not expected


def check_top_heavy(sw: Sweep, k: int, w: Element):
    L = IntPolynomial(sw.table.rank_sizes(sw.table.lower(k)))
    if not is_top_heavy(L):
        yield "top-heavy", True, list(L.coeffs)


def check_bp_factorization(sw: Sweep, k: int, w: Element):
    t = sw.table
    L = IntPolynomial(t.rank_sizes(t.lower(k)))
    for J in sw.subsets:
        upper, lower = parabolic_decompose(w, J)
        ku, kl_ = t.index_of(upper), t.index_of(lower)
        if t.multiply(ku, kl_) != k or t.lengths[ku] + t.lengths[kl_] != t.lengths[k]:
            yield "parabolic-decomposition", list(w.context.labels), sorted(J)
        base = set(iter_bits(t.lower(ku) & t.minimal_mask(J)))
        fiber = list(iter_bits(t.lower(kl_)))
        products = {t.multiply(a, b) for a in base for b in fiber}
        if len(products) != len(base) * len(fiber) or not all(
                t.lower(k) >> p & 1 for p in products):
            yield "injection", len(base) * len(fiber), len(products)
        if is_bp_decomposition(w, J):
            lhs = quotient_poincare(upper, J) * IntPolynomial(
                t.rank_sizes(t.lower(kl_)))
            if lhs != L:
                yield f"bp-factorization J={sorted(J)}", list(L.coeffs), list(lhs.coeffs)


def check_length_two_claim(sw: Sweep, k: int, w: Element):
    n = sw.context.n
    if sw.context.type != "D" or w(n) != -n:
        return
    t = sw.table
    for u in range(t.size):
        if t.lengths[u] == 2 and not t.leq(u, k):
            yield "length-two-below", True, list(t.one_lines[u])


def check_kl_properties(sw: Sweep, k: int, w: Element):
    t = sw.table
    col = sw.kl.p_polynomials(k)
    kinv = t.inverse[k]
    inv_col = sw.kl.p_column(kinv)
    rcol = sw.kl.r_column(k)
    for y, p in col.items():
        q = IntPolynomial(unpack(inv_col[t.inverse[y]]))
        if p != q:
            yield "inverse-symmetry", list(p.coeffs), list(q.coeffs)
        if not p.is_nonnegative() or p[0] != 1:
            yield "positivity", "nonnegative, P(0)=1", list(p.coeffs)
        d = t.lengths[k] - t.lengths[y]
        if y != k and 2 * p.degree > d - 1:
            yield "degree-bound", (d - 1) // 2, p.degree
        r = IntPolynomial(unpack(rcol[y])) if y != k else IntPolynomial((1,))
        if r.degree != d:
            yield "r-degree", d, r.degree


def check_h_agreement(sw: Sweep, k: int, w: Element):
    h = sw.h(k)
    be = h_bjorner_ekedahl(w)
    if h != be:
        yield "kl-vs-be", h, be
    all_y = min(min_positive_degree(p) for p in sw.kl.p_polynomials(k).values())
    if h != all_y:
        yield "kl-vs-all-y", h, all_y


def check_h_symmetries(sw: Sweep, k: int, w: Element):
    h = sw.h(k)
    if sw.h_of(diagram_automorphism(w)) != h:
        yield "diagram-symmetry", h, sw.h_of(diagram_automorphism(w))
    if sw.h(sw.table.inverse[k]) != h:
        yield "inverse-h", h, sw.h(sw.table.inverse[k])
    for J in sw.subsets:
        _, lower = parabolic_decompose(w, J)
        hj = sw.h_of(lower)
        if not h <= hj:
            yield f"parabolic-monotonicity J={sorted(J)}", f"<= {hj}", h


def check_cover_dependence(sw: Sweep, k: int, w: Element):
    if linearly_dependent(cover_labels(w)) and sw.h(k) != 1:
        yield "cover-dependence", 1, sw.h(k)


def check_split_inversion(sw: Sweep, k: int, w: Element):
    covers = cover_labels(w)
    inv = inversion_set(w)
    for beta in sorted(inv):
        pair = split_inversion(w, beta)
        if beta in covers:
            if pair is not None:
                yield "split-on-cover", None, [str(b) for b in pair]
            continue
        if pair is None:
            yield "split-missing", str(beta), None
            continue
        b1, b2 = pair
        if b1 not in inv or b2 not in inv or (b1 + b2) != beta.coords:
            yield "split-invalid", str(beta), [str(b1), str(b2)]
        parts = split_into_cover_labels(w, beta)
        total = tuple(map(sum, zip(*(p.coords for p in parts))))
        if total != beta.coords or not set(parts) <= covers:
            yield "split-into-covers", str(beta), [str(p) for p in parts]


SUITES: dict[str, list[tuple[str, Check]]] = {
    "formula-a": [("formula-a", check_formula_a),
                  ("bound", check_simply_laced_bound)],
    "bounds-d": [("bounds-d", check_bounds_d),
                 ("bound", check_simply_laced_bound)],
    "smoothness": [("smoothness", check_smoothness)],
    "bruhat": [("leq", check_leq_agreement),
               ("top-heavy", check_top_heavy),
               ("bp", check_bp_factorization),
               ("length-two", check_length_two_claim)],
    "klprops": [("kl-properties", check_kl_properties),
                ("h-agreement", check_h_agreement),
                ("h-symmetries", check_h_symmetries),
                ("cover-dependence", check_cover_dependence),
                ("split-inversion", check_split_inversion)],
}

# suites that compute h for every element and can report max_h_singular
_H_SUITES = {"formula-a", "bounds-d", "smoothness", "klprops"}


def suites_for(context: CoxeterContext, suite: str) -> list[str]:
    if suite == "all":
        names = ["smoothness", "bruhat", "klprops"]
        if context.type == "A":
            names.insert(0, "formula-a")
        elif context.rank >= 4:
            names.insert(0, "bounds-d")
        return names
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if suite == "formula-a" and context.type != "A":
        raise ValueError("suite formula-a applies to type A only")
    if suite == "bounds-d" and (context.type != "D" or context.rank < 4):
        raise ValueError("suite bounds-d needs type D of rank >= 4")
    return [suite]


def run_suite(context: CoxeterContext, suite: str = "all", slow: bool = False,
              kl: Optional[KLTable] = None,
              elements: Optional[Iterable[int]] = None) -> VerificationReport:
    """Run a suite on every element (or the given table indices)."""
    cap = rank_cap(context, slow)
    if context.rank > cap:
        raise RankCapExceeded(
            f"{context} is above the rank cap {cap}"
            + ("" if slow else "; pass --slow to raise it"))
    names = suites_for(context, suite)
    start = time.perf_counter()
    sw = Sweep(context, kl)
    report = VerificationReport(context, suite)
    indices = list(range(sw.table.size)) if elements is None else list(elements)
    max_h = None
    for k in indices:
        w = sw.table.element(k)
        for name in names:
            for check_name, check in SUITES[name]:
                report.checks[check_name] += 1
                for cid, expected, actual in check(sw, k, w):
                    report.failures.append(Failure(sw.key(k), cid, expected, actual))
        if any(n in _H_SUITES for n in names):
            h = sw.h(k)
            if h != INFINITY and (max_h is None or h > max_h):
                max_h = h
    report.checked = len(indices)
    report.max_h_singular = max_h
    report.elapsed = time.perf_counter() - start
    return report

