"""Enumeration of lattice trees and bond animals containing the origin.

Clusters are grown from the origin by Redelmeier's method applied to bonds:
a branch either takes the next untried bond or excludes it for good, so each
connected bond set containing the origin is produced exactly once and no
isomorphism or duplicate test is ever needed.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import __version__
from .lattice import Bond, Point, add, incident_bonds, l1, make_bond, origin, sub, translate_bond

MODELS = ("tree", "animal")

# Largest bond count enumerated by default, per model and dimension.
DEFAULT_MAX_BONDS = {
    "tree": {1: 40, 2: 9, 3: 7, 4: 6, 5: 5, 6: 5},
    "animal": {1: 40, 2: 8, 3: 6, 4: 5, 5: 5, 6: 4},
}


class ResourceCeilingError(RuntimeError):
    def __init__(self, model: str, d: int, n_max: int, bound: int):
        self.model, self.d, self.n_max, self.bound = model, d, n_max, bound
        super().__init__(
            f"refusing to enumerate {model}s in d={d} up to n={n_max} bonds: "
            f"the configured ceiling for this (model, d) is n <= {bound}"
        )


class NotAVertexError(ValueError):
    pass


def check_model(model: str) -> str:
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    return model


def max_bonds(model: str, d: int) -> int:
    env = os.environ.get("LATTICE_EXPANSION_MAX_BONDS")
    if env:
        return int(env)
    table = DEFAULT_MAX_BONDS[check_model(model)]
    return table.get(d, 4 if d <= 8 else 3)


def check_feasible(model: str, d: int, n_max: int, ceiling: int | None = None) -> None:
    origin(d)  # rejects invalid dimensions before any ceiling lookup
    bound = max_bonds(model, d) if ceiling is None else ceiling
    if n_max > bound:
        raise ResourceCeilingError(model, d, n_max, bound)


# ---------------------------------------------------------------------------
# Cluster and graph predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cluster:
    bonds: tuple[Bond, ...]
    vertices: frozenset
    model: str = "animal"

    @classmethod
    def from_bonds(cls, bonds: Iterable[Bond], model: str = "animal", root: Point | None = None) -> "Cluster":
        bonds = tuple(sorted(make_bond(*b) for b in bonds))
        verts = {p for b in bonds for p in b}
        if root is not None:
            verts.add(root)
        if not verts:
            raise ValueError("a cluster needs at least one vertex")
        return cls(bonds, frozenset(verts), model)

    def __len__(self) -> int:
        return len(self.bonds)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cluster) and self.bonds == other.bonds and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.bonds, self.vertices))

    @property
    def size(self) -> int:
        return len(self.bonds)

    @cached_property
    def adjacency(self) -> dict[Point, list[Point]]:
        adj: dict[Point, list[Point]] = {v: [] for v in self.vertices}
        for u, v in self.bonds:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @cached_property
    def bridges(self) -> frozenset:
        return frozenset(find_bridges(self.adjacency))

    @cached_property
    def origin_distances(self) -> dict[Point, int]:
        o = origin(len(next(iter(self.vertices))))
        return bfs_distances(self.adjacency, o) if o in self.vertices else {}

    @cached_property
    def origin_block(self) -> frozenset:
        """Vertices doubly connected to the origin."""
        o = origin(len(next(iter(self.vertices))))
        return two_edge_component(self, o) if o in self.vertices else frozenset()

    def translate(self, x: Point) -> "Cluster":
        return Cluster(
            tuple(translate_bond(b, x) for b in self.bonds),
            frozenset(add(v, x) for v in self.vertices),
            self.model,
        )

    def is_connected(self) -> bool:
        start = next(iter(self.vertices))
        return len(bfs_distances(self.adjacency, start)) == len(self.vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.vertices) == len(self.bonds) + 1


def bfs_distances(adj: dict, start) -> dict:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def find_bridges(adj: dict) -> set[Bond]:
    """Bridges of a simple undirected graph, via DFS low-points (iterative)."""
    disc: dict = {}
    low: dict = {}
    out: set[Bond] = set()
    counter = 0
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    low[u] = min(low[u], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        out.add(make_bond(parent, u))
    return out


def _require_vertices(c: Cluster, *pts: Point) -> None:
    for p in pts:
        if p not in c.vertices:
            raise NotAVertexError(f"{p} is not a vertex of the cluster")


def _path(c: Cluster, x: Point, y: Point) -> list[Point]:
    parent = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        for w in c.adjacency[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return path[::-1]


def min_path_length(c: Cluster, x: Point, y: Point) -> int:
    _require_vertices(c, x, y)
    if x == y:
        return 0
    if c.origin_distances and x == origin(len(x)):
        return c.origin_distances[y]
    return bfs_distances(c.adjacency, x)[y]


def pivotal_bonds(c: Cluster, x: Point, y: Point) -> list[tuple[Point, Point]]:
    """Bridges separating x from y, in order from x to y, oriented towards y."""
    _require_vertices(c, x, y)
    if x == y:
        return []
    path = _path(c, x, y)
    bridges = c.bridges
    return [(a, b) for a, b in zip(path, path[1:]) if make_bond(a, b) in bridges]


def doubly_connected(c: Cluster, x: Point, y: Point) -> bool:
    _require_vertices(c, x, y)
    return x == y or not pivotal_bonds(c, x, y)


def two_edge_component(c: Cluster, x: Point) -> frozenset:
    _require_vertices(c, x)
    bridges = c.bridges
    seen = {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in c.adjacency[u]:
            if w not in seen and make_bond(u, w) not in bridges:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def origin_in_cycle(c: Cluster) -> bool:
    o = origin(len(next(iter(c.vertices))))
    if o not in c.vertices:
        raise NotAVertexError("the origin is not a vertex of the cluster")
    bridges = c.bridges
    return any(make_bond(o, w) not in bridges for w in c.adjacency[o])


def adjacency_of(bonds: Iterable[Bond], verts: Iterable[Point]) -> dict[Point, list[Point]]:
    adj: dict[Point, list[Point]] = {v: [] for v in verts}
    for u, v in bonds:
        adj[u].append(v)
        adj[v].append(u)
    return adj


# ---------------------------------------------------------------------------
# Constraints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContainsVertex:
    x: Point

    def accepts(self, c: Cluster) -> bool:
        return self.x in c.vertices


@dataclass(frozen=True)
class PlantedVia:
    """Origin has degree one and its only bond is {0, s}."""

    s: Point

    def __post_init__(self):
        if l1(self.s) != 1:
            raise ValueError(f"{self.s} is not a unit vector")

    def accepts(self, c: Cluster) -> bool:
        o = origin(len(self.s))
        return c.adjacency.get(o) == [self.s]

    def excluded_bonds(self) -> list[Bond]:
        o = origin(len(self.s))
        return [b for b in incident_bonds(o) if b != make_bond(o, self.s)]


@dataclass(frozen=True)
class OriginInCycle:
    def accepts(self, c: Cluster) -> bool:
        return origin_in_cycle(c)


@dataclass(frozen=True)
class DoublyConnected:
    x: Point
    y: Point

    def accepts(self, c: Cluster) -> bool:
        return self.x in c.vertices and self.y in c.vertices and doubly_connected(c, self.x, self.y)


@dataclass(frozen=True)
class MinPathLength:
    x: Point
    y: Point
    i: int

    def accepts(self, c: Cluster) -> bool:
        return self.x in c.vertices and self.y in c.vertices and min_path_length(c, self.x, self.y) >= self.i


@dataclass(frozen=True)
class ExcludesBond:
    bond: Bond

    def accepts(self, c: Cluster) -> bool:
        return make_bond(*self.bond) not in c.bonds

    def excluded_bonds(self) -> list[Bond]:
        return [make_bond(*self.bond)]


Constraint = ContainsVertex | PlantedVia | OriginInCycle | DoublyConnected | MinPathLength | ExcludesBond


def constraints_digest(constraints: Sequence) -> str:
    text = json.dumps(sorted(repr(c) for c in constraints))
    return hashlib.sha256(text.encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Redelmeier growth
# ---------------------------------------------------------------------------

Emit = Callable[[list, set], None]


_incident = lru_cache(maxsize=None)(incident_bonds)


def _take(tree: bool, n_max: int, bonds: list, verts: set, untried: list, seen: set, b: Bond, emit: Emit, prune) -> None:
    u, v = b
    if u in verts and v in verts:
        if tree:
            return
        new = None
    else:
        new = v if u in verts else u
    bonds.append(b)
    added = []
    if new is not None:
        verts.add(new)
        for nb in _incident(new):
            if nb not in seen:
                seen.add(nb)
                added.append(nb)
    if prune is None or not prune(bonds, verts):
        _grow(tree, n_max, bonds, verts, untried + added, seen, emit, prune)
    for nb in added:
        seen.discard(nb)
    if new is not None:
        verts.discard(new)
    bonds.pop()


def _grow(tree: bool, n_max: int, bonds: list, verts: set, untried: list, seen: set, emit: Emit, prune) -> None:
    emit(bonds, verts)
    if len(bonds) >= n_max:
        return
    untried = list(untried)
    while untried:
        b = untried.pop()
        _take(tree, n_max, bonds, verts, untried, seen, b, emit, prune)


def _root_state(d: int, excluded: Iterable[Bond]):
    o = origin(d)
    seen = set(excluded)
    untried = [b for b in _incident(o) if b not in seen]
    seen.update(untried)
    return o, untried, seen


def _excluded(constraints: Sequence) -> list[Bond]:
    out: list[Bond] = []
    for c in constraints:
        if hasattr(c, "excluded_bonds"):
            out.extend(c.excluded_bonds())
    return out


def _run(model, d, n_max, constraints, emit, prune=None, branches=None) -> None:
    """Run the growth from the origin; `branches` selects top-level branches."""
    tree = check_model(model) == "tree"
    o, untried, seen = _root_state(d, _excluded(constraints))
    bonds: list = []
    verts = {o}
    if branches is None or None in branches:
        emit(bonds, verts)
    if n_max <= 0:
        return
    for j in range(len(untried)):
        rest = untried[: len(untried) - 1 - j]
        b = untried[len(untried) - 1 - j]
        if branches is None or j in branches:
            _take(tree, n_max, bonds, verts, rest, seen, b, emit, prune)


def _make_cluster(model: str, bonds: list, verts: set) -> Cluster:
    return Cluster(tuple(sorted(bonds)), frozenset(verts), model)


def enumerate_clusters(
    model: str,
    d: int,
    n_max: int,
    constraints: Sequence = (),
    visitor: Callable[[Cluster], None] | None = None,
    ceiling: int | None = None,
) -> list[Cluster] | None:
    """Visit every cluster containing the origin with at most n_max bonds.

    Visits happen in a fixed order. Without a visitor the accepted clusters
    are returned as a list.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    check_feasible(model, d, n_max, ceiling)
    out: list[Cluster] = []
    sink = visitor if visitor is not None else out.append

    def emit(bonds, verts):
        c = _make_cluster(model, bonds, verts)
        if all(k.accepts(c) for k in constraints):
            sink(c)

    _run(model, d, n_max, constraints, emit)
    return None if visitor is not None else out


def stream(model: str, d: int, n_max: int, fn: Emit, constraints: Sequence = (),
           ceiling: int | None = None, prune: Callable[[list, set], bool] | None = None) -> None:
    """Call fn(bonds, vertices) for every cluster, skipping Cluster construction.

    The arguments are live views of the growth state and must not be kept.
    Only the bond exclusions implied by `constraints` are applied.  When
    prune(bonds, vertices) is true the cluster and all its extensions are skipped.
    """
    check_feasible(model, d, n_max, ceiling)
    _run(model, d, n_max, constraints, fn, prune)


def _count_branch(args) -> list[int]:
    model, d, n_max, constraints, branches = args
    counts = [0] * (n_max + 1)
    if constraints:
        def emit(bonds, verts):
            c = _make_cluster(model, bonds, verts)
            if all(k.accepts(c) for k in constraints):
                counts[len(bonds)] += 1
    else:
        def emit(bonds, verts):
            counts[len(bonds)] += 1
    _run(model, d, n_max, constraints, emit, branches=branches)
    return counts


@dataclass
class CountTable:
    model: str
    d: int
    n_max: int
    counts: list[int]
    constraints: str = "none"
    engine_version: str = __version__

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "d": self.d,
            "n_max": self.n_max,
            "constraints": self.constraints,
            "counts": [str(c) for c in self.counts],
            "engine_version": self.engine_version,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CountTable":
        return cls(
            data["model"], data["d"], data["n_max"], [int(c) for c in data["counts"]],
            data["constraints"], data["engine_version"],
        )


def count(
    model: str,
    d: int,
    n_max: int,
    constraints: Sequence = (),
    workers: int = 1,
    cache: "CountCache | None" = None,
    ceiling: int | None = None,
) -> CountTable:
    """Exact number of clusters containing the origin, per bond count."""
    check_model(model)
    check_feasible(model, d, n_max, ceiling)
    digest = constraints_digest(constraints) if constraints else "none"
    if cache is not None:
        hit = cache.load(model, d, digest, n_max)
        if hit is not None:
            return hit
    constraints = tuple(constraints)
    n_branches = len(_root_state(d, _excluded(constraints))[1])
    tasks = [(model, d, n_max, constraints, {None})] + [
        (model, d, n_max, constraints, {j}) for j in range(n_branches)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_branch, tasks))
    else:
        parts = [_count_branch(t) for t in tasks]
    counts = [sum(p[n] for p in parts) for n in range(n_max + 1)]
    table = CountTable(model, d, n_max, counts, digest)
    if cache is not None:
        cache.store(table)
    return table


@lru_cache(maxsize=32)
def catalog(model: str, d: int, n_max: int, ceiling: int | None = None) -> tuple[Cluster, ...]:
    """All clusters containing the origin with at most n_max bonds (memoised)."""
    return tuple(enumerate_clusters(model, d, n_max, ceiling=ceiling))


def by_size(clusters: Iterable[Cluster], n_max: int) -> list[list[Cluster]]:
    out: list[list[Cluster]] = [[] for _ in range(n_max + 1)]
    for c in clusters:
        if c.size <= n_max:
            out[c.size].append(c)
    return out


# ---------------------------------------------------------------------------
# Disk cache of count tables
# ---------------------------------------------------------------------------


@dataclass
class CountCache:
    directory: Path = field(default_factory=lambda: Path(os.environ.get("LATTICE_EXPANSION_CACHE", ".lattice_cache")))

    def __post_init__(self):
        self.directory = Path(self.directory)

    def path(self, model: str, d: int, digest: str, n_max: int) -> Path:
        return self.directory / f"{model}-d{d}-{digest}-N{n_max}.json"

    def load(self, model: str, d: int, digest: str, n_max: int) -> CountTable | None:
        p = self.path(model, d, digest, n_max)
        try:
            data = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        if data.get("engine_version") != __version__:
            return None
        return CountTable.from_json(data)

    def store(self, table: CountTable) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        target = self.path(table.model, table.d, table.constraints, table.n_max)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w") as fh:
            json.dump(table.to_json(), fh, indent=1, sort_keys=True)
        os.replace(tmp, target)
        return target

    def entries(self) -> list[Path]:
        if not self.directory.exists():
            return []
        return sorted(self.directory.glob("*-d*-N*.json"))

    def gc(self) -> list[Path]:
        """Delete unreadable entries and entries written by another engine version."""
        removed = []
        for p in self.entries():
            try:
                ok = json.loads(p.read_text()).get("engine_version") == __version__
            except (OSError, ValueError):
                ok = False
            if not ok:
                p.unlink()
                removed.append(p)
        for p in self.directory.glob(".tmp-*"):
            p.unlink()
            removed.append(p)
        return removed
