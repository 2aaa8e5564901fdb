"""Cluster counts as exact polynomials in the dimension d.

An n-bond cluster uses some set of k <= n coordinate directions.  Counting
the clusters in Z^k that use all k directions (the proper counts P_{n,k})
gives t_n(d) = sum_k binom(d, k) P_{n,k}, a polynomial in d of degree n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .clusters import check_feasible, check_model, stream
from .lattice import bond_axis

DEFAULT_PROPER_MAX = 5


class DPoly:
    """Polynomial in d with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def binomial(cls, k: int) -> "DPoly":
        """binom(d, k) = d (d-1) ... (d-k+1) / k!."""
        out = cls([1])
        for j in range(k):
            out = out * cls([-j, 1])
        return out.scale(Fraction(1, factorial(k)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, d) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * d + c
        return acc

    def __add__(self, other: "DPoly") -> "DPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return DPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "DPoly":
        return DPoly(-c for c in self.coeffs)

    def __sub__(self, other: "DPoly") -> "DPoly":
        return self + (-other)

    def __mul__(self, other: "DPoly") -> "DPoly":
        if not self.coeffs or not other.coeffs:
            return DPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DPoly(out)

    def scale(self, c) -> "DPoly":
        return DPoly(Fraction(c) * x for x in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, DPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"DPoly({self})"

    def __str__(self) -> str:
        out = ""
        for k in reversed(range(len(self.coeffs))):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else "d" if k == 1 else f"d^{k}"
            mag = abs(c)
            body = mono if mag == 1 and mono else f"{mag}*{mono}" if mono else str(mag)
            sign = "-" if c < 0 else "+"
            out = (f"-{body}" if sign == "-" else body) if not out else f"{out} {sign} {body}"
        return out or "0"

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


@dataclass(frozen=True)
class ProperTable:
    model: str
    n_max: int
    P: tuple[tuple[int, ...], ...]  # P[n][k], k = 0..n

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        return self.P[n][k] if k <= n else 0

    def to_json(self) -> dict:
        return {"model": self.model, "n_max": self.n_max, "P": [[str(c) for c in row] for row in self.P]}


def _proper_in(model: str, k: int, n_max: int) -> list[int]:
    """Clusters in Z^k with <= n_max bonds whose bonds use all k axes, by size."""
    counts = [0] * (n_max + 1)
    if k == 0:
        counts[0] = 1
        return counts

    def axes(bonds):
        return {bond_axis(b) for b in bonds}

    def visit(bonds, verts):
        if len(axes(bonds)) == k:
            counts[len(bonds)] += 1

    def prune(bonds, verts):
        # each further bond adds at most one new axis
        return n_max - len(bonds) < k - len(axes(bonds))

    stream(model, k, n_max, visit, ceiling=max(n_max, k), prune=prune)
    return counts


@lru_cache(maxsize=8)
def proper_counts(model: str, n_max: int = DEFAULT_PROPER_MAX) -> ProperTable:
    check_model(model)
    check_feasible(model, 2, n_max)
    per_k = [_proper_in(model, k, n_max) for k in range(n_max + 1)]
    return ProperTable(model, n_max, tuple(tuple(per_k[k][n] for k in range(n + 1)) for n in range(n_max + 1)))


def poly_from_proper(table: ProperTable, n: int) -> DPoly:
    """count_n(d) = sum_k binom(d, k) P_{n,k}."""
    if n > table.n_max:
        raise ValueError(f"table covers n <= {table.n_max}")
    out = DPoly()
    for k in range(n + 1):
        out = out + DPoly.binomial(k).scale(table[n, k])
    return out


def count_polynomials(model: str, n_max: int = DEFAULT_PROPER_MAX) -> list[DPoly]:
    table = proper_counts(model, n_max)
    return [poly_from_proper(table, n) for n in range(n_max + 1)]


def interpolate(points: Sequence[tuple[int, int]]) -> DPoly:
    """Lagrange interpolation through (d, value) pairs."""
    out = DPoly()
    for i, (xi, yi) in enumerate(points):
        term = DPoly([yi])
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * DPoly([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        out = out + term
    return out


def finite_differences(values: Sequence[int]) -> list[list[int]]:
    rows = [list(values)]
    while len(rows[-1]) > 1:
        r = rows[-1]
        rows.append([b - a for a, b in zip(r, r[1:])])
    return rows
