"""Naive reference implementations used as test oracles.

Nothing in this module imports the package: clusters are grown as plain
frozensets of bonds and deduplicated with Python sets, and every quantity
is computed straight from its definition.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial


def units(d):
    out = []
    for i in range(d):
        for sign in (1, -1):
            e = [0] * d
            e[i] = sign
            out.append(tuple(e))
    return out


def plus(p, q):
    return tuple(a + b for a, b in zip(p, q))


def minus(p, q):
    return tuple(a - b for a, b in zip(p, q))


def bond(u, v):
    return (u, v) if u < v else (v, u)


def verts(bonds, d):
    vs = {p for b in bonds for p in b}
    return vs or {(0,) * d}


def adjacency(bonds):
    adj = defaultdict(set)
    for u, v in bonds:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def bfs(bonds, start):
    adj = adjacency(bonds)
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


@lru_cache(maxsize=None)
def clusters(model, d, n_max):
    """Bond sets containing the origin, grouped by size, by set-based growth."""
    o = (0,) * d
    levels = [{frozenset()}]
    for n in range(1, n_max + 1):
        nxt = set()
        for c in levels[-1]:
            for v in verts(c, d):
                for e in units(d):
                    b = bond(v, plus(v, e))
                    if b not in c:
                        nxt.add(c | {b})
        if model == "tree":
            nxt = {c for c in nxt if len(verts(c, d)) == len(c) + 1}
        levels.append(nxt)
    assert all(o in verts(c, d) for lvl in levels for c in lvl)
    return tuple(tuple(sorted(lvl, key=sorted)) for lvl in levels)


def counts(model, d, n_max):
    return [len(lvl) for lvl in clusters(model, d, n_max)]


def two_point(model, d, N, min_dist=0):
    """x -> [number of n-bond clusters containing 0 and x with dist(0, x) >= min_dist]."""
    o = (0,) * d
    out = defaultdict(lambda: [0] * (N + 1))
    for n, lvl in enumerate(clusters(model, d, N)):
        for c in lvl:
            for x, k in bfs(c, o).items():
                if k >= min_dist:
                    out[x][n] += 1
    return dict(out)


def on_cycle(bonds, p):
    """p lies on a cycle iff some bond at p is not a bridge."""
    for b in bonds:
        if p in b:
            other = b[1] if b[0] == p else b[0]
            if p in bfs(bonds - {b}, other):
                return True
    return False


def origin_cycle(model, d, N):
    o = (0,) * d
    return [sum(on_cycle(c, o) for c in lvl) for lvl in clusters(model, d, N)]


def planted(model, d, N, s):
    """Clusters whose only bond at the origin is {0, s}."""
    o = (0,) * d
    b0 = bond(o, s)
    out = []
    for lvl in clusters(model, d, N):
        for c in lvl:
            if b0 in c and sum(o in b for b in c) == 1:
                out.append(c)
    return out


def closed_walks(d, length):
    """Number of nearest-neighbour walks of the given length from 0 back to 0."""
    o = (0,) * d
    total = 0
    for steps in product(units(d), repeat=length):
        p = o
        for e in steps:
            p = plus(p, e)
        total += p == o
    return total


def q_pairs(model, d, N):
    """Q(x) by direct definition: pairs C_0 containing 0, C_x containing x, sharing a vertex."""
    base = [(n, frozenset(verts(c, d))) for n, lvl in enumerate(clusters(model, d, N)) for c in lvl]
    out = defaultdict(lambda: [0] * (N + 1))
    radius = range(-N, N + 1)
    for x in product(radius, repeat=d):
        if sum(map(abs, x)) > N:
            continue
        for n0, v0 in base:
            for n1, v1 in base:
                if n0 + n1 <= N and any(plus(v, x) in v0 for v in v1):
                    out[x][n0 + n1] += 1
    return dict(out)


def q_star(model, d, N, s):
    base = [(n, frozenset(verts(c, d))) for n, lvl in enumerate(clusters(model, d, N)) for c in lvl]
    total = [0] * (N + 1)
    for n1, v1 in base:
        moved = {plus(v, s) for v in v1}
        for n0, v0 in base:
            if n0 + n1 > N or moved.isdisjoint(v0):
                continue
            for n2, v2 in base:
                if n0 + n1 + n2 <= N and not moved.isdisjoint(v2):
                    total[n0 + n1 + n2] += 1
    return total


def planted_pool(model, d, N):
    o = (0,) * d
    pool = []
    for s in units(d):
        for c in planted(model, d, N, s):
            pool.append((len(c), frozenset(verts(c, d)) - {o}))
    return pool


def gamma_terms(model, d, N):
    """Gamma^(0..3) and tilde-Gamma^(4) from explicit ordered tuples of planted clusters.

    With k intersecting pairs in a tuple the lexicographic expansion
    contributes 1, k, C(k,2), C(k,3), C(k-1,3) respectively.
    """
    from math import comb

    pool = planted_pool(model, d, N)
    out = [[Fraction(0)] * (N + 1) for _ in range(5)]

    def rec(tup, size):
        m = len(tup)
        k = sum(1 for i in range(m) for j in range(i + 1, m) if tup[i] & tup[j])
        w = Fraction(1, factorial(m))
        for t, v in enumerate((1, k, comb(k, 2), comb(k, 3), comb(k - 1, 3) if k else 0)):
            out[t][size] += w * v
        for n, v in pool:
            if size + n <= N:
                rec(tup + [v], size + n)

    rec([], 0)
    return out


def z1(model, d, N):
    pool = planted_pool(model, d, N)
    out = [0] * (N + 1)
    for (n1, a), (n2, b) in product(pool, repeat=2):
        if n1 + n2 <= N and a & b:
            out[n1 + n2] += 1
    return out
