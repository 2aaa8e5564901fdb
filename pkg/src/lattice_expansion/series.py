"""Truncated power series in z with exact rational coefficients.

`Series` is an immutable value c_0 + c_1 z + ... + c_N z^N.  Binary operations
on series of different truncation orders truncate to the smaller order.
`SiteSeries` is a finitely supported map from lattice points to series, with
direct-summation convolution.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .lattice import Point, add, l1, sub, unit_vectors


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


class SeriesDomainError(ValueError):
    pass


class Series:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a series needs a truncation order >= 0")
        self.coeffs = tuple(cs)

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls([1], order)

    @classmethod
    def z(cls, order: int, power: int = 1) -> "Series":
        return cls([0] * power + [1], order)

    # basic protocol ---------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError(n)
        if n > self.order:
            raise IndexError(f"coefficient {n} lies beyond truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*z^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"Series({' + '.join(terms) or '0'}; N={self.order})"

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs, order)

    def _align(self, other: "Series") -> tuple[tuple, tuple, int]:
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series([other], self.order)

    # ring operations --------------------------------------------------
    def __add__(self, other) -> "Series":
        a, b, _ = self._align(self._coerce(other))
        return Series([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs])

    def __sub__(self, other) -> "Series":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Series":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            return self.scale(other)
        a, b, n = self._align(other)
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return Series(out)

    def __rmul__(self, other) -> "Series":
        return self.scale(other)

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            return self.reciprocal() ** (-k)
        out = Series.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Series":
        c = _frac(c)
        return Series([c * x for x in self.coeffs])

    def shift(self, k: int = 1) -> "Series":
        """Multiply by z^k, keeping the truncation order."""
        return Series([0] * k + list(self.coeffs), self.order)

    def times_z(self) -> "Series":
        """z*f; exact one order further, since every coefficient is known."""
        return Series((Fraction(0),) + self.coeffs)

    def derivative(self) -> "Series":
        """d/dz; the top coefficient of the result is unknown, so the order drops by one."""
        if self.order == 0:
            return Series([0])
        return Series([n * c for n, c in enumerate(self.coeffs) if n > 0])

    def reciprocal(self) -> "Series":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesDomainError("reciprocal needs a nonzero constant term")
        out = [1 / c0]
        for n in range(1, self.order + 1):
            s = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out.append(-s / c0)
        return Series(out)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, Series):
            return self * other.reciprocal()
        return self.scale(1 / _frac(other))

    def exp(self) -> "Series":
        """exp(f) for f(0) = 0, from f' e^f = (e^f)'."""
        if self.coeffs[0] != 0:
            raise SeriesDomainError("exp needs a zero constant term")
        a = self.coeffs
        e = [Fraction(1)]
        for n in range(1, self.order + 1):
            s = sum(k * a[k] * e[n - k] for k in range(1, n + 1))
            e.append(s / n)
        return Series(e)

    # comparisons ------------------------------------------------------
    def le(self, other) -> bool:
        """Coefficientwise <= up to the common order."""
        a, b, _ = self._align(self._coerce(other))
        return all(x <= y for x, y in zip(a, b))

    def first_difference(self, other: "Series") -> int | None:
        a, b, _ = self._align(other)
        for n, (x, y) in enumerate(zip(a, b)):
            if x != y:
                return n
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # export -----------------------------------------------------------
    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list[str]) -> "Series":
        return cls([Fraction(s) for s in data])


class SiteSeries:
    """Finitely supported function Z^d -> Series; only nonzero entries are stored."""

    __slots__ = ("d", "order", "_data")

    def __init__(self, d: int, order: int, data: Mapping[Point, Series] | None = None):
        self.d = d
        self.order = order
        self._data: dict[Point, Series] = {}
        for x, s in (data or {}).items():
            if len(x) != d:
                raise ValueError(f"point {x} is not in Z^{d}")
            s = s.truncate(order) if s.order >= order else Series(s.coeffs, order)
            if not s.is_zero():
                self._data[x] = s

    @classmethod
    def from_counts(cls, d: int, order: int, counts: Mapping[Point, list]) -> "SiteSeries":
        return cls(d, order, {x: Series(c, order) for x, c in counts.items()})

    @classmethod
    def delta(cls, d: int, order: int, value: Series | None = None, at: Point | None = None) -> "SiteSeries":
        at = at if at is not None else (0,) * d
        return cls(d, order, {at: value if value is not None else Series.one(order)})

    @classmethod
    def step_kernel(cls, d: int, order: int) -> "SiteSeries":
        """D(x) = 1/(2d) on the 2d unit vectors, as order-zero constants."""
        w = Series([Fraction(1, 2 * d)], order)
        return cls(d, order, {e: w for e in unit_vectors(d)})

    def __getitem__(self, x: Point) -> Series:
        return self._data.get(tuple(x), Series.zero(self.order))

    def __contains__(self, x) -> bool:
        return tuple(x) in self._data

    def support(self) -> list[Point]:
        return sorted(self._data)

    def items(self):
        return sorted(self._data.items())

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SiteSeries):
            return NotImplemented
        return self.d == other.d and self.order == other.order and self._data == other._data

    def __repr__(self) -> str:
        return f"SiteSeries(d={self.d}, N={self.order}, support={len(self._data)})"

    def _check(self, other: "SiteSeries") -> None:
        if self.d != other.d:
            raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")

    def _combine(self, other: "SiteSeries", op) -> "SiteSeries":
        self._check(other)
        n = min(self.order, other.order)
        keys = set(self._data) | set(other._data)
        return SiteSeries(self.d, n, {x: op(self[x].truncate(n), other[x].truncate(n)) for x in keys})

    def __add__(self, other: "SiteSeries") -> "SiteSeries":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "SiteSeries") -> "SiteSeries":
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self) -> "SiteSeries":
        return SiteSeries(self.d, self.order, {x: -s for x, s in self._data.items()})

    def mul_series(self, f: Series) -> "SiteSeries":
        """Pointwise product with a z-series (e.g. multiply by g or by z)."""
        return SiteSeries(self.d, min(self.order, f.order), {x: s * f for x, s in self._data.items()})

    def scale(self, c) -> "SiteSeries":
        return SiteSeries(self.d, self.order, {x: s.scale(c) for x, s in self._data.items()})

    def shift(self, k: int = 1) -> "SiteSeries":
        return SiteSeries(self.d, self.order, {x: s.shift(k) for x, s in self._data.items()})

    def total(self) -> Series:
        """Sum over all x of the entries (the hat-transform at k = 0)."""
        out = Series.zero(self.order)
        for s in self._data.values():
            out = out + s
        return out

    def le(self, other: "SiteSeries") -> bool:
        self._check(other)
        return all(self[x].le(other[x]) for x in set(self._data) | set(other._data))

    def support_bound_ok(self) -> bool:
        """Coefficient n vanishes whenever ||x||_1 > n."""
        return all(all(c == 0 for c in s.coeffs[: min(l1(x), self.order + 1)]) for x, s in self._data.items())

    def symmetric(self, sigma) -> bool:
        return all(self[sigma(x)] == s for x, s in self._data.items())

    def to_json(self) -> list:
        return [[list(x), s.to_json()] for x, s in self.items()]


def convolve(f: SiteSeries, g: SiteSeries) -> SiteSeries:
    """(f*g)(x) = sum_y f(y) g(x-y), truncated at the smaller order."""
    f._check(g)
    n = min(f.order, g.order)
    acc: dict[Point, list[Fraction]] = {}
    for y, fy in f._data.items():
        a = fy.coeffs[: n + 1]
        for w, gw in g._data.items():
            b = gw.coeffs[: n + 1]
            x = add(y, w)
            row = acc.setdefault(x, [Fraction(0)] * (n + 1))
            for i, ai in enumerate(a):
                if ai:
                    for j in range(n + 1 - i):
                        if b[j]:
                            row[i + j] += ai * b[j]
    return SiteSeries(f.d, n, {x: Series(c) for x, c in acc.items()})


def convolve_power(f: SiteSeries, k: int) -> SiteSeries:
    out = SiteSeries.delta(f.d, f.order)
    for _ in range(k):
        out = convolve(out, f)
    return out


def translate(f: SiteSeries, x: Point) -> SiteSeries:
    return SiteSeries(f.d, f.order, {add(y, x): s for y, s in f.items()})


def reflect(f: SiteSeries) -> SiteSeries:
    return SiteSeries(f.d, f.order, {sub((0,) * f.d, y): s for y, s in f.items()})
