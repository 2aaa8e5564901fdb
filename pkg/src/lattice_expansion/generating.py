"""Generating functions built from cluster enumeration.

One streaming pass over the clusters containing the origin collects all the
one- and two-point data at once: counts by size, the origin-cycle subset,
planted clusters, and for every vertex x its graph distance from the origin.
Everything else (G, G^(i), chi, Pi^(a,0)) is a marginal of that table.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from .clusters import adjacency_of, bfs_distances, check_feasible, check_model, find_bridges, stream
from .lattice import Point, l1, make_bond, origin, sub, unit_vectors
from .series import Series, SiteSeries, convolve, convolve_power


def _check_unit(s: Point, d: int) -> Point:
    s = tuple(s)
    if len(s) != d or l1(s) != 1:
        raise ValueError(f"{s} is not a unit vector of Z^{d}")
    return s


@dataclass
class _Profile:
    model: str
    d: int
    N: int
    g: list[int]
    g_circ: list[int]
    planted: dict[Point, list[int]]
    # (x, dist_C(0, x)) -> counts by size
    dist: dict[tuple[Point, int], list[int]]
    # x -> counts of clusters with x doubly connected to 0
    block: dict[Point, list[int]]


def _origin_block(adj: dict, o: Point) -> set:
    bridges = find_bridges(adj)
    seen = {o}
    todo = [o]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in seen and make_bond(u, w) not in bridges:
                seen.add(w)
                todo.append(w)
    return seen


@lru_cache(maxsize=16)
def _profile(model: str, d: int, N: int) -> _Profile:
    check_model(model)
    check_feasible(model, d, N)
    o = origin(d)
    zeros = lambda: [0] * (N + 1)  # noqa: E731
    g, g_circ = zeros(), zeros()
    planted: dict = defaultdict(zeros)
    dist: dict = defaultdict(zeros)
    block: dict = defaultdict(zeros)
    animal = model == "animal"

    def visit(bonds, verts):
        n = len(bonds)
        g[n] += 1
        adj = adjacency_of(bonds, verts)
        nbrs = adj[o]
        if len(nbrs) == 1:
            planted[nbrs[0]][n] += 1
        for x, k in bfs_distances(adj, o).items():
            dist[x, k][n] += 1
        if animal and len(nbrs) >= 2 and len(bonds) >= len(verts):
            blk = _origin_block(adj, o)
            if len(blk) > 1:
                g_circ[n] += 1
                for x in blk:
                    if x != o:
                        block[x][n] += 1

    stream(model, d, N, visit)
    return _Profile(model, d, N, g, g_circ, dict(planted), dict(dist), dict(block))


def one_point(model: str, d: int, N: int) -> Series:
    """g(z) = sum over clusters C containing 0 of z^|C|."""
    return Series(_profile(model, d, N).g)


def origin_cycle(model: str, d: int, N: int) -> Series:
    """g_circ(z): clusters in which the origin lies on a cycle (zero for trees)."""
    return Series(_profile(model, d, N).g_circ)


def planted(model: str, d: int, N: int, s: Point) -> Series:
    """Clusters whose only bond at the origin is {0, s}."""
    s = _check_unit(s, d)
    return Series(_profile(model, d, N).planted.get(s, []), N)


def r_series(model: str, d: int, N: int) -> Series:
    return planted(model, d, N, unit_vectors(d)[0])


def two_point_min(model: str, d: int, N: int, i: int) -> SiteSeries:
    """G^(i)(x): clusters containing 0 and x with dist_C(0, x) >= i."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    prof = _profile(model, d, N)
    acc: dict[Point, list[int]] = {}
    for (x, k), counts in prof.dist.items():
        if k >= i:
            row = acc.setdefault(x, [0] * (N + 1))
            for n, c in enumerate(counts):
                row[n] += c
    return SiteSeries.from_counts(d, N, acc)


def two_point(model: str, d: int, N: int) -> SiteSeries:
    """G(x) = sum over clusters containing 0 and x of z^|C|."""
    return two_point_min(model, d, N, 0)


def susceptibility(model: str, d: int, N: int) -> Series:
    """chi(z) = sum_x G(x) = sum over C containing 0 of |V(C)| z^|C|."""
    return two_point(model, d, N).total()


def doubly_connected_two_point(d: int, N: int) -> SiteSeries:
    """Animals with a double connection between 0 and x, for x != 0."""
    prof = _profile("animal", d, N)
    return SiteSeries.from_counts(d, N, prof.block)


# ---------------------------------------------------------------------------
# Random-walk kernel and convolution diagnostics
# ---------------------------------------------------------------------------


def step_kernel(d: int, N: int = 0) -> SiteSeries:
    """D(x) = 1/(2d) on nearest neighbours of the origin."""
    return SiteSeries.step_kernel(d, N)


@lru_cache(maxsize=64)
def kernel_power(d: int, m: int, N: int = 0) -> SiteSeries:
    """D^{*m} as order-zero constants (padded to order N)."""
    return convolve_power(step_kernel(d, N), m)


def closed_walk_return(d: int, m: int) -> Fraction:
    """(2d)^m D^{*2m}(0)."""
    return kernel_power(d, 2 * m)[origin(d)][0] * (2 * d) ** m


def compositions(m: int, n: int):
    """Tuples of n nonnegative integers summing to m, lexicographic."""
    if n == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in compositions(m - first, n - 1):
            yield (first,) + rest


def S_mn(model: str, d: int, N: int, m: int, n: int) -> SiteSeries:
    """S^(m,n)(x) = sum over i_1+...+i_n = m of (G^(i_1) * ... * G^(i_n))(x)."""
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    gmin = {i: two_point_min(model, d, N, i) for i in range(m + 1)}
    out = SiteSeries(d, N)
    for parts in compositions(m, n):
        term = gmin[parts[0]]
        for i in parts[1:]:
            term = convolve(term, gmin[i])
        out = out + term
    return out


def S_mn_sup(model: str, d: int, N: int, m: int, n: int) -> Series:
    """Coefficientwise maximum of S^(m,n)(x) over the (finite) support."""
    s = S_mn(model, d, N, m, n)
    best = [Fraction(0)] * (N + 1)
    for _, f in s.items():
        best = [max(a, b) for a, b in zip(best, f.coeffs)]
    return Series(best)


class BoundCheck(NamedTuple):
    i: int
    holds: bool
    violations: list  # (x, n, lhs, rhs)
    lhs: SiteSeries
    rhs: SiteSeries


def gk_bound(model: str, d: int, N: int, i: int) -> BoundCheck:
    """Compare G^(i)(x) with (2d z g)^i (D^{*i} * G)(x) coefficient by coefficient."""
    g = one_point(model, d, N)
    lhs = two_point_min(model, d, N, i)
    factor = (g.shift(1) * (2 * d)) ** i
    rhs = convolve(kernel_power(d, i, N), two_point(model, d, N)).mul_series(factor)
    bad = []
    for x in sorted(set(lhs.support()) | set(rhs.support())):
        a, b = lhs[x], rhs[x]
        for n in range(N + 1):
            if a[n] > b[n]:
                bad.append((x, n, a[n], b[n]))
    return BoundCheck(i, not bad, bad, lhs, rhs)


# ---------------------------------------------------------------------------
# Pairs of clusters
# ---------------------------------------------------------------------------


class Shape(NamedTuple):
    size: int
    vertices: frozenset
    dist: tuple  # ((vertex, dist from 0), ...)


@lru_cache(maxsize=8)
def shapes(model: str, d: int, N: int) -> tuple[tuple[Shape, ...], ...]:
    """Clusters containing 0 grouped by size, with origin distances."""
    check_feasible(model, d, N)
    o = origin(d)
    out: list[list[Shape]] = [[] for _ in range(N + 1)]

    def visit(bonds, verts):
        dist = bfs_distances(adjacency_of(bonds, verts), o)
        out[len(bonds)].append(Shape(len(bonds), frozenset(verts), tuple(sorted(dist.items()))))

    stream(model, d, N, visit)
    return tuple(tuple(b) for b in out)


@lru_cache(maxsize=8)
def _q_tables(model: str, d: int, N: int):
    by_size = shapes(model, d, N)
    q: dict = defaultdict(lambda: [0] * (N + 1))
    levels: dict = defaultdict(lambda: [0] * (N + 1))
    for a in range(N + 1):
        for b in range(N + 1 - a):
            n = a + b
            for c0 in by_size[a]:
                for c1 in by_size[b]:
                    best: dict = {}
                    for u, du in c0.dist:
                        for v, dv in c1.dist:
                            x = sub(u, v)
                            k = du + dv
                            if best.get(x, k + 1) > k:
                                best[x] = k
                    for x, k in best.items():
                        q[x][n] += 1
                        levels[x, k][n] += 1
    return dict(q), dict(levels)


def Q(model: str, d: int, N: int) -> SiteSeries:
    """Q(x): ordered pairs C_0 containing 0, C_x containing x, that intersect.

    C_x = C' + x with C' containing 0, and the pair meets exactly when
    x lies in V(C_0) - V(C').
    """
    return SiteSeries.from_counts(d, N, _q_tables(model, d, N)[0])


def Q_levels(model: str, d: int, N: int) -> dict[int, SiteSeries]:
    """Q split by the shortest 0-to-x connection through a shared vertex."""
    levels = _q_tables(model, d, N)[1]
    ks = sorted({k for _, k in levels})
    return {k: SiteSeries.from_counts(d, N, {x: c for (x, j), c in levels.items() if j == k}) for k in ks}


def Q_n(model: str, d: int, N: int, x: Point, n: int) -> Series:
    return Q_levels(model, d, N).get(n, SiteSeries(d, N))[tuple(x)]


@lru_cache(maxsize=16)
def Q_star(model: str, d: int, N: int, s: Point) -> Series:
    """Q*(s) = sum over C_0, C_2 containing 0 and C_1 containing s of z^(|C_0|+|C_1|+|C_2|) U_01 U_12."""
    s = _check_unit(s, d)
    by_size = shapes(model, d, N)
    total = [0] * (N + 1)
    for b in range(N + 1):
        for c1 in by_size[b]:
            moved = frozenset(tuple(p + q for p, q in zip(v, s)) for v in c1.vertices)
            h = [0] * (N + 1 - b)
            for k in range(N + 1 - b):
                h[k] = sum(1 for c in by_size[k] if not moved.isdisjoint(c.vertices))
            for k1, k2 in product(range(N + 1 - b), repeat=2):
                if b + k1 + k2 <= N:
                    total[b + k1 + k2] += h[k1] * h[k2]
    return Series(total)


# ---------------------------------------------------------------------------
# Bundle
# ---------------------------------------------------------------------------


@dataclass
class ModelSeriesBundle:
    model: str
    d: int
    N: int
    g: Series
    g_circ: Series
    r: Series
    chi: Series
    G: SiteSeries
    G_min: list[SiteSeries] = field(repr=False)

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "d": self.d,
            "N": self.N,
            "g": self.g.to_json(),
            "g_circ": self.g_circ.to_json(),
            "r": self.r.to_json(),
            "chi": self.chi.to_json(),
            "G": self.G.to_json(),
            "G_min": [gm.to_json() for gm in self.G_min],
        }


def bundle(model: str, d: int, N: int) -> ModelSeriesBundle:
    return ModelSeriesBundle(
        model, d, N,
        g=one_point(model, d, N),
        g_circ=origin_cycle(model, d, N),
        r=r_series(model, d, N),
        chi=susceptibility(model, d, N),
        G=two_point(model, d, N),
        G_min=[two_point_min(model, d, N, i) for i in range(N + 1)],
    )
