"""
Slow reference implementations sharing no code with the package beyond the
element classes. They are only run on small groups.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from klh.groups import (
    CoxeterContext, Permutation, SignedPermutation, element, simple_reflection,
)


def all_elements(ctx: CoxeterContext):
    n = ctx.n
    if ctx.type == "A":
        return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            if signs.count(-1) % 2 == 0:
                out.append(SignedPermutation(tuple(s * x for s, x in zip(signs, p))))
    return out


def length_by_words(ctx: CoxeterContext):
    """Lengths by breadth-first search on the Cayley graph."""
    gens = [simple_reflection(ctx, s) for s in ctx.labels]
    e = element(ctx, range(1, ctx.n + 1))
    dist = {e: 0}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                x = w * s
                if x not in dist:
                    dist[x] = dist[w] + 1
                    nxt.append(x)
        frontier = nxt
    return dist


def reflections(ctx: CoxeterContext):
    """Every reflection, as the conjugates w s w^-1 of simple reflections."""
    gens = [simple_reflection(ctx, s) for s in ctx.labels]
    out = set()
    for w in all_elements(ctx):
        for s in gens:
            out.add(w * s * w.inverse())
    return out


def bruhat_by_reflections(ctx: CoxeterContext):
    """The Bruhat order straight from its definition: y < y t with l(yt) > l(y)."""
    lengths = length_by_words(ctx)
    refl = reflections(ctx)
    up = {w: set() for w in lengths}
    for y in lengths:
        for t in refl:
            x = y * t
            if lengths[x] > lengths[y]:
                up[y].add(x)
    below = {w: {w} for w in lengths}
    for w in sorted(lengths, key=lengths.get):
        for y in lengths:
            if w in up[y]:
                below[w] |= below[y]
    return lengths, below


def kl_mu_recursion(ctx: CoxeterContext):
    """P_{x,w} for every pair, by the classical mu-coefficient recursion.

    For w = v s with s a right descent of w:
        P_{x,w} = q^{1-c} P_{xs,v} + q^c P_{x,v}
                  - sum_{z: zs<z, mu(z,v)!=0} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}
    where c = 1 if xs < x and 0 otherwise.
    """
    lengths, below = bruhat_by_reflections(ctx)
    gens = {s: simple_reflection(ctx, s) for s in ctx.labels}
    order = sorted(lengths, key=lambda w: (lengths[w], w.length))
    P: dict = {}

    def get(x, w):
        return P.get((x, w), ())

    def add(a, b, shift=0, scale=1):
        out = list(a) + [0] * max(0, len(b) + shift - len(a))
        for i, c in enumerate(b):
            out[i + shift] += scale * c
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def mu(z, v):
        d = lengths[v] - lengths[z]
        if d % 2 == 0 or z not in below[v] or z == v:
            return 0
        p = get(z, v)
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    e = element(ctx, range(1, ctx.n + 1))
    P[(e, e)] = (1,)
    for w in order:
        if w == e:
            continue
        s = next(s for s in ctx.labels if lengths[w * gens[s]] < lengths[w])
        v = w * gens[s]
        ws = [z for z in below[v] if lengths[z * gens[s]] < lengths[z]
              and mu(z, v)]
        for x in below[w]:
            xs = x * gens[s]
            c = 1 if lengths[xs] < lengths[x] else 0
            p = add(add((), get(xs, v), 1 - c), get(x, v), c)
            for z in ws:
                if x in below[z]:
                    p = add(p, get(x, z), (lengths[w] - lengths[z]) // 2, -mu(z, v))
            if p:
                P[(x, w)] = p
    return lengths, below, P


@lru_cache(maxsize=None)
def kl_oracle(ctx: CoxeterContext):
    return kl_mu_recursion(ctx)


def contains_classic_a(w, pattern):
    k = len(pattern)
    for pos in itertools.combinations(range(w.n), k):
        vals = [w.images[i] for i in pos]
        if all((vals[i] < vals[j]) == (pattern[i] < pattern[j])
               for i in range(k) for j in range(i + 1, k)):
            return True
    return False
