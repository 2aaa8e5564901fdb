"""Backbone/rib decompositions and the low-order lace-expansion coefficients.

A configuration is a backbone plus one rib per backbone site.  For trees the
backbone is a nearest-neighbour walk 0 = w_0, ..., w_n = x and rib R_k is any
tree containing w_k.  For animals the backbone is a sequence of directed
bonds (u_k, v_k); rib R_k is an animal containing v_k (v_0 = 0) in which the
exit point u_{k+1} is doubly connected to v_k, and u_{n+1} = x.  Both are
handled by one depth-first search in which a tree rib simply exits where it
was attached.

U_ij = -1 when ribs i and j share a vertex.  A configuration contributes to
a coefficient only through its set of intersecting pairs, so weights are
evaluated (and cached) on that set.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, NamedTuple

from .clusters import Cluster, adjacency_of, bfs_distances, check_feasible, check_model, pivotal_bonds, stream
from .generating import _origin_block, doubly_connected_two_point, one_point, susceptibility, two_point
from .lattice import Bond, Point, add, make_bond, origin, unit_vectors
from .series import Series, SiteSeries, convolve


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeDecomposition:
    backbone: tuple[Point, ...]
    ribs: tuple[Cluster, ...]

    def bonds(self) -> list[Bond]:
        return [make_bond(a, b) for a, b in zip(self.backbone, self.backbone[1:])]


@dataclass(frozen=True)
class AnimalDecomposition:
    backbone: tuple[tuple[Point, Point], ...]
    ribs: tuple[Cluster, ...]

    def bonds(self) -> list[Bond]:
        return [make_bond(u, v) for u, v in self.backbone]


def _component(c: Cluster, start: Point, removed: set) -> Cluster:
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in c.adjacency[u]:
            if w not in seen and make_bond(u, w) not in removed:
                seen.add(w)
                todo.append(w)
    bonds = [b for b in c.bonds if b[0] in seen and b not in removed]
    return Cluster.from_bonds(bonds, c.model, root=start)


def decompose(c: Cluster, x: Point) -> TreeDecomposition | AnimalDecomposition:
    """Split C into a 0-x backbone and the ribs hanging off it."""
    o = origin(len(x))
    piv = pivotal_bonds(c, o, x)
    removed = {make_bond(u, v) for u, v in piv}
    if c.model == "tree":
        path = [o] + [v for _, v in piv]
        return TreeDecomposition(tuple(path), tuple(_component(c, p, removed) for p in path))
    starts = [o] + [v for _, v in piv]
    return AnimalDecomposition(tuple(piv), tuple(_component(c, p, removed) for p in starts))


def U(a, b) -> int:
    """-1 if the two ribs (clusters or vertex sets) share a vertex, else 0."""
    va = a.vertices if isinstance(a, Cluster) else a
    vb = b.vertices if isinstance(b, Cluster) else b
    return 0 if va.isdisjoint(vb) else -1


# ---------------------------------------------------------------------------
# Laces
# ---------------------------------------------------------------------------

Edge = tuple[int, int]


def laces(n: int, N: int) -> list[frozenset[Edge]]:
    """N-edge laces on [0, n]: 0 = s1 < s2 <= t1 < s3 <= t2 < ... <= t_{N-1} < t_N = n."""
    out = []

    def rec(edges: list, n_left: int):
        s_last, t_last = edges[-1]
        if n_left == 0:
            if t_last == n:
                out.append(frozenset(edges))
            return
        if t_last == n:
            return
        prev_t = edges[-2][1] if len(edges) > 1 else None
        for s in range(s_last + 1, t_last + 1):
            if prev_t is not None and s <= prev_t:
                continue
            for t in range(t_last + 1, n + 1):
                rec(edges + [(s, t)], n_left - 1)

    if n >= 1 and N >= 1:
        for t in range(1, n + 1):
            rec([(0, t)], N - 1)
    return sorted(out, key=sorted)


def laces2(n: int) -> list[frozenset[Edge]]:
    """Two-edge laces: {0j, jn} for 0<j<n and {0j, in} for 0<i<j<n."""
    if n < 2:
        raise ValueError("two-edge laces need n >= 2")
    out = [frozenset({(0, j), (j, n)}) for j in range(1, n)]
    out += [frozenset({(0, j), (i, n)}) for j in range(1, n) for i in range(1, j)]
    return sorted(out, key=sorted)


def compatible(lace: frozenset[Edge], n: int) -> frozenset[Edge]:
    """Edges whose (1 + U) factors accompany a two-edge lace (its own edges excluded)."""
    (a, j), (i, b) = sorted(lace)
    if a != 0 or b != n:
        raise ValueError(f"{sorted(lace)} is not a two-edge lace on [0,{n}]")
    cut = j if i == j else i
    out = set()
    for k in range(n + 1):
        for l in range(k + 1, n + 1):
            if k == 0 and l > j:
                continue
            if l == n and k < cut:
                continue
            out.add((k, l))
    return frozenset(out - lace)


def _bit(i: int, j: int) -> int:
    return 1 << (j * (j - 1) // 2 + i)


def _pairs(pattern: int, n: int) -> frozenset[Edge]:
    return frozenset((i, j) for j in range(n + 1) for i in range(j) if pattern & _bit(i, j))


@lru_cache(maxsize=None)
def lace2_weight(n: int, pattern: int) -> int:
    """sum over L in L2[0,n] of prod_L U * prod_C(L) (1 + U) for the given meeting pairs."""
    if n < 2:
        return 0
    hit = _pairs(pattern, n)
    total = 0
    for L in laces2(n):
        if L <= hit and not (compatible(L, n) & hit):
            total += 1  # two factors of U = -1
    return total


@lru_cache(maxsize=None)
def has_lace(n: int, pattern: int, N: int) -> bool:
    hit = _pairs(pattern, n)
    return any(L <= hit for L in laces(n, N))


# ---------------------------------------------------------------------------
# Configuration engine
# ---------------------------------------------------------------------------


class Rib(NamedTuple):
    size: int
    vertices: frozenset
    exits: tuple[Point, ...]


@lru_cache(maxsize=8)
def rib_catalog(model: str, d: int, N: int) -> tuple[tuple[Rib, ...], ...]:
    """Ribs rooted at the origin by size; an animal rib may exit anywhere in the origin's 2-edge block."""
    check_feasible(model, d, N)
    o = origin(d)
    animal = model == "animal"
    out: list[list[Rib]] = [[] for _ in range(N + 1)]

    def visit(bonds, verts):
        exits: tuple = (o,)
        if animal and len(bonds) >= len(verts):
            adj = adjacency_of(bonds, verts)
            if len(adj[o]) >= 2:
                exits = tuple(sorted(_origin_block(adj, o)))
        out[len(bonds)].append(Rib(len(bonds), frozenset(verts), exits))

    stream(model, d, N, visit)
    return tuple(tuple(b) for b in out)


# mode -> (k, hits) -> None to prune, False to continue freely, True to force stopping at k
Rule = Callable[[int, list[int]], bool | None]


def _rule_avoid(k, hits):
    return None if hits else False


def _rule_pi1(k, hits):
    if not hits:
        return False
    return True if hits == [0] else None


def _rule_pi2(k, hits):
    # an intersection away from rib 0 is a compatible edge unless this rib is the last
    return any(i > 0 for i in hits)


def _rule_free(k, hits):
    return False


def configurations(model: str, d: int, N: int, rule: Rule, weight: Callable[[int, int], int],
                   min_n: int = 0) -> dict[tuple[Point, int], list[int]]:
    """Sum weight(n, pattern) z^order over backbone/rib configurations.

    Returns (x, n) -> coefficient list, where n = |backbone| and x is the endpoint.
    """
    check_model(model)
    catalog = rib_catalog(model, d, N)
    steps = unit_vectors(d)
    acc: dict = defaultdict(lambda: [0] * (N + 1))
    ribs: list[frozenset] = []

    def place(k: int, v: Point, used: int, pattern: int) -> None:
        for size in range(N - used + 1):
            for rib in catalog[size]:
                verts = frozenset(add(p, v) for p in rib.vertices)
                hits = [i for i, r in enumerate(ribs) if not r.isdisjoint(verts)]
                stop = rule(k, hits)
                if stop is None:
                    continue
                p = pattern
                for i in hits:
                    p |= _bit(i, k)
                order = used + size
                for ex in rib.exits:
                    u = add(ex, v)
                    if k >= min_n:
                        w = weight(k, p)
                        if w:
                            acc[u, k][order] += w
                    if not stop and order < N:
                        ribs.append(verts)
                        for e in steps:
                            place(k + 1, add(u, e), order + 1, p)
                        ribs.pop()

    place(0, origin(d), 0, 0)
    return dict(acc)


def _site(d: int, N: int, table: dict, n_filter=None) -> SiteSeries:
    acc: dict = defaultdict(lambda: [0] * (N + 1))
    for (x, n), row in table.items():
        if n_filter is None or n_filter(n):
            for i, c in enumerate(row):
                acc[x][i] += c
    return SiteSeries.from_counts(d, N, acc)


def avoiding_sum(model: str, d: int, N: int) -> SiteSeries:
    """Backbones with mutually avoiding ribs; reproduces G(x)."""
    return _site(d, N, configurations(model, d, N, _rule_avoid, lambda n, p: 1 if p == 0 else 0))


@lru_cache(maxsize=16)
def pi1(model: str, d: int, N: int) -> SiteSeries:
    """First and last ribs meet, no other pair does."""
    def weight(n, p):
        return 1 if p == _bit(0, n) else 0
    return _site(d, N, configurations(model, d, N, _rule_pi1, weight, min_n=1))


@lru_cache(maxsize=16)
def pi2(model: str, d: int, N: int) -> SiteSeries:
    return _site(d, N, configurations(model, d, N, _rule_pi2, lace2_weight, min_n=2))


def pi0(d: int, N: int) -> SiteSeries:
    """Animals only: clusters with a double connection between 0 and x != 0."""
    return doubly_connected_two_point(d, N)


def pi_hat(f: SiteSeries) -> Series:
    return f.total()


@dataclass(frozen=True)
class ScanResult:
    model: str
    d: int
    lace_edges: int
    max_order: int
    first_order: int | None  # None: no configuration up to max_order

    def absent_through(self) -> int:
        """Largest order at which the N-lace term certainly vanishes."""
        return self.max_order if self.first_order is None else self.first_order - 1


@lru_cache(maxsize=32)
def order_scan(model: str, d: int, lace_edges: int, max_order: int) -> ScanResult:
    """Lowest order of a configuration containing some N-edge lace among its meeting pairs.

    Containing a lace is necessary for a nonzero N-lace weight, so no order
    below the result can carry a Pi^(N) contribution.
    """
    table = configurations(model, d, max_order, _rule_free,
                           lambda n, p: 1 if has_lace(n, p, lace_edges) else 0, min_n=lace_edges)
    orders = [i for row in table.values() for i, c in enumerate(row) if c]
    return ScanResult(model, d, lace_edges, max_order, min(orders) if orders else None)


# ---------------------------------------------------------------------------
# Pi from the convolution identity
# ---------------------------------------------------------------------------


def step_series(d: int, N: int) -> SiteSeries:
    """2dz D(x): z on each nearest neighbour of the origin."""
    z = Series.z(N)
    return SiteSeries(d, N, {e: z for e in unit_vectors(d)})


def identity_residual(model: str, d: int, N: int, Pi: SiteSeries) -> SiteSeries:
    """G - delta g - Pi - g (2dzD * G) - (Pi * 2dzD * G)."""
    G = two_point(model, d, N)
    g = one_point(model, d, N)
    K = convolve(step_series(d, N), G)
    return G - SiteSeries.delta(d, N, g) - Pi - K.mul_series(g) - convolve(Pi, K)


@dataclass(frozen=True)
class PiSolution:
    Pi: SiteSeries
    Pi_hat: Series
    residual: SiteSeries
    le_lhs: Series
    le_rhs: Series

    @property
    def residual_zero(self) -> bool:
        return len(self.residual) == 0

    @property
    def le_holds(self) -> bool:
        return self.le_lhs == self.le_rhs


@lru_cache(maxsize=16)
def pi_solve(model: str, d: int, N: int) -> PiSolution:
    """Solve the two-point identity for Pi one order at a time."""
    G = two_point(model, d, N)
    g = one_point(model, d, N)
    K = convolve(step_series(d, N), G)  # no constant term
    A = G - SiteSeries.delta(d, N, g) - K.mul_series(g)
    k_items = [(y, s.coeffs) for y, s in K.items()]
    pts = sorted(set(A.support()) | {x for x, _ in G.items()})
    pi: dict[Point, list[Fraction]] = {x: [Fraction(0)] * (N + 1) for x in pts}
    for n in range(N + 1):
        # (Pi * K)(x) at order n only involves Pi below order n
        corr: dict[Point, Fraction] = defaultdict(Fraction)
        for y, row in pi.items():
            for k in range(n):
                c = row[k]
                if c:
                    for w, kc in k_items:
                        if kc[n - k]:
                            corr[add(y, w)] += c * kc[n - k]
        for x in set(pts) | set(corr):
            if x not in pi:
                pi[x] = [Fraction(0)] * (N + 1)
            pi[x][n] = A[x][n] - corr.get(x, 0)
    Pi = SiteSeries(d, N, {x: Series(row) for x, row in pi.items()})
    hat = Pi.total()
    chi = susceptibility(model, d, N)
    gp = g + hat
    lhs = chi * (1 - gp.times_z().truncate(N) * (2 * d))
    return PiSolution(Pi, hat, identity_residual(model, d, N, Pi), lhs, gp)


def alternating_pi_hat(model: str, d: int, N: int) -> Series:
    """Pi-hat^(0) - Pi-hat^(1) + Pi-hat^(2): exact only where higher N are certified absent."""
    s = pi2(model, d, N).total() - pi1(model, d, N).total()
    if model == "animal":
        s = s + pi0(d, N).total()
    return s
