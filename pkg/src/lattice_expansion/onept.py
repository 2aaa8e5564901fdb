"""Inclusion-exclusion expansion of the one-point function over planted clusters.

A cluster whose origin is not on a cycle splits at the origin into m planted
clusters S_1..S_m (origin of degree one in each), pairwise sharing only the
origin.  Summing over ordered tuples with weight prod_{i<j} (1 + V_ij) / m!
and adding g_circ recovers g.  Expanding the product along the lexicographic
order of the pairs gives the terms Gamma^(0..3) and a remainder tilde-Gamma^(4).

Tuples are never stored.  They are enumerated once and aggregated by their
intersection pattern (which pairs meet), since every weight used here depends
on the tuple only through that pattern.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Iterator

from .clusters import Cluster, PlantedVia, check_feasible, enumerate_clusters, stream
from .generating import one_point, origin_cycle, r_series
from .lattice import Point, origin, unit_vectors
from .series import Series

SPLITS = ((2, 3), (2, 4), (3, 3), (3, 4), (3, 5), (3, 6))


def V(a: Cluster, b: Cluster) -> int:
    """-1 if the planted clusters share a vertex other than the origin, else 0."""
    o = origin(len(next(iter(a.vertices))))
    return -1 if (a.vertices & b.vertices) - {o} else 0


# ---------------------------------------------------------------------------
# Planted tuples, explicitly (small inputs, oracles, demos)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlantedTuple:
    steps: tuple[Point, ...]
    clusters: tuple[Cluster, ...]

    @property
    def size(self) -> int:
        return sum(c.size for c in self.clusters)

    def V(self, i: int, j: int) -> int:
        return V(self.clusters[i], self.clusters[j])


@lru_cache(maxsize=16)
def planted_clusters(model: str, d: int, N: int) -> tuple[tuple[Point, Cluster], ...]:
    out = []
    for s in unit_vectors(d):
        for c in enumerate_clusters(model, d, N, (PlantedVia(s),)):
            if c.size:
                out.append((s, c))
    return tuple(out)


def iter_tuples(model: str, d: int, N: int, m: int) -> Iterator[PlantedTuple]:
    """Ordered m-tuples of planted clusters with total size <= N."""
    pool = planted_clusters(model, d, N)

    def rec(prefix, budget):
        if len(prefix) == m:
            yield PlantedTuple(tuple(s for s, _ in prefix), tuple(c for _, c in prefix))
            return
        for s, c in pool:
            if c.size <= budget:
                yield from rec(prefix + [(s, c)], budget - c.size)

    yield from rec([], N)


# ---------------------------------------------------------------------------
# Pattern aggregation
# ---------------------------------------------------------------------------


def _colex(i: int, j: int) -> int:
    """Bit index of the pair i < j (0-based labels) in colexicographic order."""
    return j * (j - 1) // 2 + i


@lru_cache(maxsize=16)
def _planted_masks(model: str, d: int, N: int) -> tuple[tuple[int, ...], ...]:
    """Non-origin vertex sets of planted clusters as bitmasks, grouped by size."""
    check_feasible(model, d, N)
    index: dict[Point, int] = {}
    o = origin(d)
    by_size: list[list[int]] = [[] for _ in range(N + 1)]
    for s in unit_vectors(d):
        def visit(bonds, verts):
            if bonds:
                mask = 0
                for v in verts:
                    if v != o:
                        mask |= 1 << index.setdefault(v, len(index))
                by_size[len(bonds)].append(mask)
        stream(model, d, N, visit, (PlantedVia(s),))
    return tuple(tuple(b) for b in by_size)


@lru_cache(maxsize=16)
def tuple_patterns(model: str, d: int, N: int) -> dict[tuple[int, int], tuple[int, ...]]:
    """(m, colex pattern) -> number of ordered m-tuples by total size.

    Bit _colex(i, j) of the pattern is set when S_i and S_j meet away from 0.
    The empty tuple is included as (0, 0).
    """
    by_size = _planted_masks(model, d, N)
    agg: dict = defaultdict(lambda: [0] * (N + 1))

    def rec(masks: list, pattern: int, total: int) -> None:
        m = len(masks)
        base = m * (m - 1) // 2
        for k in range(1, N - total + 1):
            leaf = total + k == N
            for b in by_size[k]:
                p = pattern
                for i, a in enumerate(masks):
                    if a & b:
                        p |= 1 << (base + i)
                agg[m + 1, p][total + k] += 1
                if not leaf:
                    masks.append(b)
                    rec(masks, p, total + k)
                    masks.pop()

    agg[0, 0][0] += 1
    rec([], 0, 0)
    return {key: tuple(row) for key, row in sorted(agg.items())}


# ---------------------------------------------------------------------------
# Literal evaluation of the J terms for one intersection pattern
# ---------------------------------------------------------------------------


def lex_pairs(m: int) -> list[tuple[int, int]]:
    """Pairs (i, j), 1 <= i < j <= m, in lexicographic order."""
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]


def later_pairs(m: int, i: int, j: int) -> list[tuple[int, int]]:
    """A_ij: the pairs lexicographically larger than (i, j)."""
    return [(i, l) for l in range(j + 1, m + 1)] + [(k, l) for k in range(i + 1, m + 1) for l in range(k + 1, m + 1)]


@dataclass(frozen=True)
class JTerms:
    product: int
    J0: int
    J1: int
    J2: dict  # label-set size -> contribution
    J3: dict
    J4: int

    @property
    def J2_total(self) -> int:
        return sum(self.J2.values())

    @property
    def J3_total(self) -> int:
        return sum(self.J3.values())


@lru_cache(maxsize=None)
def j_terms(m: int, pattern: int) -> JTerms:
    """The J terms for labels 1..m, with V_ij = -1 exactly for the pairs in pattern."""
    pairs = lex_pairs(m)
    val = {(i, j): (-1 if pattern >> _colex(i - 1, j - 1) & 1 else 0) for i, j in pairs}
    prod_all = 1
    for p in pairs:
        prod_all *= 1 + val[p]
    j1 = sum(-val[p] for p in pairs)
    j2: dict = defaultdict(int)
    j3: dict = defaultdict(int)
    j4 = 0
    for ij in pairs:
        if not val[ij]:
            continue
        for kl in later_pairs(m, *ij):
            if not val[kl]:
                continue
            j2[len({*ij, *kl})] += val[ij] * val[kl]
            for pq in later_pairs(m, *kl):
                if not val[pq]:
                    continue
                j3[len({*ij, *kl, *pq})] += -val[ij] * val[kl] * val[pq]
                for rs in later_pairs(m, *pq):
                    if not val[rs]:
                        continue
                    ind = 1
                    for tu in later_pairs(m, *rs):
                        ind *= 1 + val[tu]
                    j4 += val[ij] * val[kl] * val[pq] * val[rs] * ind
    return JTerms(prod_all, 1, j1, dict(j2), dict(j3), j4)


def j_closed_form(k: int) -> tuple[int, int, int, int]:
    """J1, J2, J3, tilde-J4 when exactly k pairs intersect."""
    return comb(k, 1), comb(k, 2), comb(k, 3), comb(k - 1, 3) if k >= 1 else 0


def prodxi3_holds(n: int) -> bool:
    """Check the four-term product expansion on every x in {-1, 0}^n."""
    for xs in product((-1, 0), repeat=n):
        lhs = 1
        for x in xs:
            lhs *= 1 + x
        rhs = 1 + sum(xs)
        rhs += sum(xs[a] * xs[b] for a, b in combinations(range(n), 2))
        rhs += sum(xs[a] * xs[b] * xs[c] for a, b, c in combinations(range(n), 3))
        for a, b, c, e in combinations(range(n), 4):
            tail = 1
            for f in range(e + 1, n):
                tail *= 1 + xs[f]
            rhs += xs[a] * xs[b] * xs[c] * xs[e] * tail
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Gamma terms and Z quantities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OnePointExpansion:
    model: str
    d: int
    N: int
    g: Series
    g_circ: Series
    r: Series
    Gamma0: Series
    Gamma0_exp: Series
    Gamma1: Series
    Gamma2: Series
    Gamma3: Series
    Gamma4_tilde: Series
    splits: dict  # (m, n) -> Series
    tuple_products: dict  # m -> Series, sum of prod (1 + V) over ordered m-tuples
    Z1: Series
    Z2: Series
    Z3: Series
    Zp: Series
    Zpp: Series

    def Gamma(self, i: int) -> Series:
        return (self.Gamma0, self.Gamma1, self.Gamma2, self.Gamma3)[i]

    def reconstructed_g(self) -> Series:
        return self.Gamma0 - self.Gamma1 + self.Gamma2 - self.Gamma3 + self.Gamma4_tilde + self.g_circ

    def identities(self) -> dict[str, tuple[Series, Series]]:
        """Named exact identities as (lhs, rhs) pairs."""
        G0, s = self.Gamma0, self.splits
        return {
            "Gamma0 = exp(2d r)": (self.Gamma0, self.Gamma0_exp),
            "g = Gamma0 - Gamma1 + Gamma2 - Gamma3 + tilde-Gamma4 + g_circ": (self.g, self.reconstructed_g()),
            "Gamma1 = (1/2!) Gamma0 Z1": (self.Gamma1, G0 * self.Z1 * Fraction(1, 2)),
            "Gamma(2,3) = (3/3!) Gamma0 Z2": (s[2, 3], G0 * self.Z2 * Fraction(3, 6)),
            "Gamma(2,4) = (3/4!) Gamma0 Z1^2": (s[2, 4], G0 * self.Z1 * self.Z1 * Fraction(3, 24)),
            "Gamma(3,3) = (1/3!) Gamma0 Z3": (s[3, 3], G0 * self.Z3 * Fraction(1, 6)),
            "Gamma(3,4) = Gamma0 ((4/4!) Z' + (12/4!) Z'')": (
                s[3, 4], G0 * (self.Zp * Fraction(4, 24) + self.Zpp * Fraction(12, 24))),
            "Gamma2 = Gamma(2,3) + Gamma(2,4)": (self.Gamma2, s[2, 3] + s[2, 4]),
            "Gamma3 = Gamma(3,3) + ... + Gamma(3,6)": (self.Gamma3, s[3, 3] + s[3, 4] + s[3, 5] + s[3, 6]),
        }


def _v(pattern: int, i: int, j: int) -> int:
    """V_ij for 1-based labels."""
    return -1 if pattern >> _colex(i - 1, j - 1) & 1 else 0


@lru_cache(maxsize=16)
def expansion(model: str, d: int, N: int) -> OnePointExpansion:
    pats = tuple_patterns(model, d, N)
    acc: dict = defaultdict(lambda: [Fraction(0)] * (N + 1))
    for (m, p), counts in pats.items():
        w = Fraction(1, factorial(m))
        jt = j_terms(m, p)
        terms = {"G0": jt.J0, "G1": jt.J1, "G2": jt.J2_total, "G3": jt.J3_total, "G4": jt.J4}
        for n, v in jt.J2.items():
            terms[2, n] = v
        for n, v in jt.J3.items():
            terms[3, n] = v
        terms["prod", m] = jt.product
        if m == 2:
            terms["Z1"] = -_v(p, 1, 2)
        if m == 3:
            terms["Z2"] = _v(p, 1, 2) * _v(p, 1, 3)
            terms["Z3"] = -_v(p, 1, 2) * _v(p, 1, 3) * _v(p, 2, 3)
        if m == 4:
            terms["Zp"] = -_v(p, 1, 2) * _v(p, 1, 3) * _v(p, 1, 4)
            terms["Zpp"] = -_v(p, 1, 2) * _v(p, 1, 3) * _v(p, 2, 4)
        for key, v in terms.items():
            if not v:
                continue
            # Z quantities and raw tuple products are plain sums over ordered tuples
            plain = key[0] == "prod" or str(key).startswith("Z")
            scale = 1 if plain else w
            row = acc[key]
            for n, c in enumerate(counts):
                if c:
                    row[n] += scale * v * c

    def S(key) -> Series:
        return Series(acc[key]) if key in acc else Series.zero(N)

    r = r_series(model, d, N)
    return OnePointExpansion(
        model, d, N,
        g=one_point(model, d, N),
        g_circ=origin_cycle(model, d, N),
        r=r,
        Gamma0=S("G0"),
        Gamma0_exp=(r * (2 * d)).exp(),
        Gamma1=S("G1"),
        Gamma2=S("G2"),
        Gamma3=S("G3"),
        Gamma4_tilde=S("G4"),
        splits={mn: S(mn) for mn in SPLITS},
        tuple_products={m: S(("prod", m)) for m in range(N + 1)},
        Z1=S("Z1"), Z2=S("Z2"), Z3=S("Z3"), Zp=S("Zp"), Zpp=S("Zpp"),
    )


def Gamma(model: str, d: int, N: int, i: int) -> Series:
    return expansion(model, d, N).Gamma(i)


def Gamma_split(model: str, d: int, N: int, m: int, n: int) -> Series:
    if (m, n) not in SPLITS:
        raise ValueError(f"no split ({m},{n}); available: {SPLITS}")
    return expansion(model, d, N).splits[m, n]


def Gamma4_tilde(model: str, d: int, N: int) -> Series:
    return expansion(model, d, N).Gamma4_tilde


def Z_quantities(model: str, d: int, N: int) -> dict[str, Series]:
    e = expansion(model, d, N)
    return {"Z1": e.Z1, "Z2": e.Z2, "Z3": e.Z3, "Zp": e.Zp, "Zpp": e.Zpp}
