"""Geometry of the hypercubic lattice Z^d.

Points are plain tuples of ints, bonds are ordered pairs of points with the
lexicographically smaller endpoint first.
"""
from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Iterator, NamedTuple

Point = tuple[int, ...]
Bond = tuple[Point, Point]


class InvalidDimensionError(ValueError):
    pass


def _check_dim(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise InvalidDimensionError(f"dimension must be an integer >= 1, got {d!r}")


def origin(d: int) -> Point:
    _check_dim(d)
    return (0,) * d


def unit_vectors(d: int) -> list[Point]:
    """The 2d neighbours of the origin: +e_1..+e_d followed by -e_1..-e_d."""
    _check_dim(d)
    plus = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    minus = [tuple(-c for c in e) for e in plus]
    return plus + minus


def neighbors(p: Point, d: int | None = None) -> list[Point]:
    if d is None:
        d = len(p)
    _check_dim(d)
    if len(p) != d:
        raise InvalidDimensionError(f"point {p} does not lie in Z^{d}")
    return [add(p, e) for e in unit_vectors(d)]


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def neg(p: Point) -> Point:
    return tuple(-a for a in p)


def l1(p: Point) -> int:
    return sum(abs(a) for a in p)


def make_bond(u: Point, v: Point) -> Bond:
    if len(u) != len(v) or l1(sub(u, v)) != 1:
        raise ValueError(f"{u} and {v} are not nearest neighbours")
    return (u, v) if u < v else (v, u)


def incident_bonds(p: Point) -> list[Bond]:
    return [make_bond(p, q) for q in neighbors(p)]


def translate_bond(b: Bond, x: Point) -> Bond:
    return (add(b[0], x), add(b[1], x))


def bond_axis(b: Bond) -> int:
    u, v = b
    for i, (a, c) in enumerate(zip(u, v)):
        if a != c:
            return i
    raise ValueError("degenerate bond")


class Symmetry(NamedTuple):
    """Signed permutation of coordinates: (sigma x)_i = signs[i] * x[perm[i]]."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __call__(self, x: Point) -> Point:
        return tuple(s * x[j] for j, s in zip(self.perm, self.signs))

    def compose(self, other: "Symmetry") -> "Symmetry":
        """Return self after other, i.e. x -> self(other(x))."""
        perm = tuple(other.perm[j] for j in self.perm)
        signs = tuple(s * other.signs[j] for j, s in zip(self.perm, self.signs))
        return Symmetry(perm, signs)

    def bond(self, b: Bond) -> Bond:
        return make_bond(self(b[0]), self(b[1]))


def symmetries(d: int) -> Iterator[Symmetry]:
    """All 2^d d! elements of the hyperoctahedral group."""
    _check_dim(d)
    for perm in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            yield Symmetry(perm, signs)


def symmetry_orbit(x: Point) -> set[Point]:
    return {sigma(x) for sigma in symmetries(len(x))}


def l1_ball(d: int, radius: int) -> list[Point]:
    """Lattice points with ||x||_1 <= radius, sorted."""
    _check_dim(d)
    pts = [(0,) * d]
    for _ in range(radius):
        pts = list({add(p, e) for p in pts for e in unit_vectors(d)} | set(pts))
    return sorted(pts)


def walks(start: Point, length: int) -> Iterable[tuple[Point, ...]]:
    """All nearest-neighbour walks of the given length from start."""
    d = len(start)
    steps = unit_vectors(d)
    for seq in product(steps, repeat=length):
        path = [start]
        for e in seq:
            path.append(add(path[-1], e))
        yield tuple(path)
