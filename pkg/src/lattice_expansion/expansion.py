"""Large-d expansion coefficients for z_c and g_c in the ring Q[e, e^-1].

Coefficients are kept exact as EulerRational values (finite Laurent sums of
powers of e^-1 with rational coefficients).  Floats appear only in the
rendering helpers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .clusters import check_model, count

E = math.e
MAX_ORDER = 6
RIGOROUS_THROUGH = 3


class EulerRational:
    """sum_k c_k e^{-k} with rational c_k; k may be negative (positive powers of e)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | Iterable = ()):
        if not isinstance(terms, Mapping):
            terms = dict(enumerate(terms))
        self.terms = {k: Fraction(c) for k, c in sorted(terms.items()) if Fraction(c) != 0}

    @classmethod
    def e_power(cls, k: int, c=1) -> "EulerRational":
        """c * e^{-k}."""
        return cls({k: c})

    @classmethod
    def coerce(cls, x) -> "EulerRational":
        return x if isinstance(x, EulerRational) else cls({0: x})

    def __getitem__(self, k: int) -> Fraction:
        return self.terms.get(k, Fraction(0))

    @property
    def a0(self) -> Fraction:
        return self[0]

    @property
    def a1(self) -> Fraction:
        return self[1]

    @property
    def a2(self) -> Fraction:
        return self[2]

    def __add__(self, other) -> "EulerRational":
        other = EulerRational.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return EulerRational(out)

    __radd__ = __add__

    def __neg__(self) -> "EulerRational":
        return EulerRational({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "EulerRational":
        return self + (-EulerRational.coerce(other))

    def __rsub__(self, other) -> "EulerRational":
        return EulerRational.coerce(other) - self

    def __mul__(self, other) -> "EulerRational":
        other = EulerRational.coerce(other)
        out: dict[int, Fraction] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return EulerRational(out)

    __rmul__ = __mul__

    def inverse(self) -> "EulerRational":
        """Inverse of a single term; general elements are not invertible in this ring."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"{self} is not a monomial")
        (k, c), = self.terms.items()
        return EulerRational({-k: 1 / c})

    def __truediv__(self, other) -> "EulerRational":
        if isinstance(other, EulerRational):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __eq__(self, other) -> bool:
        try:
            return self.terms == EulerRational.coerce(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __float__(self) -> float:
        return float(sum(float(c) * E ** (-k) for k, c in self.terms.items()))

    def __repr__(self) -> str:
        return f"EulerRational({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms.items():
            mag = abs(c)
            unit = "" if k == 0 else "e" if k == -1 else f"e^{-k}" if k < 0 else f"e^-{k}"
            if unit:
                body = unit if mag == 1 else f"({mag})*{unit}"
            else:
                body = str(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self) -> dict[str, str]:
        return {str(k): f"{c.numerator}/{c.denominator}" for k, c in self.terms.items()}


def render(x: float) -> str:
    """15 significant digits (round-half-even on the binary value)."""
    return format(x, ".15g")


# ---------------------------------------------------------------------------
# Coefficient data
# ---------------------------------------------------------------------------

_EM1 = EulerRational.e_power(1)

# z_c = e^{-1} sum_k [tree_k - 1_a * animal_k] (2d)^{-k}
_ZC_TREE = [Fraction(1), Fraction(3, 2), Fraction(115, 24), Fraction(309, 16), Fraction(619103, 5760), Fraction(543967, 768)]
_ZC_ANIMAL = [
    EulerRational(),
    EulerRational(),
    EulerRational({1: Fraction(1, 2)}),
    EulerRational({1: 2}),
    EulerRational({1: Fraction(113, 12)}),
    EulerRational({1: Fraction(395, 12), 2: Fraction(55, 24)}),
]
# g_c = e sum_k [...] (2d)^{-k}
_GC = [EulerRational({0: 1}), EulerRational({0: Fraction(3, 2)}), EulerRational({0: Fraction(263, 24)})]
_GC_ANIMAL = [EulerRational(), EulerRational(), _EM1]


def _ind(model: str) -> int:
    return 1 if check_model(model) == "animal" else 0


def zc_bracket(model: str, k: int) -> EulerRational:
    """Coefficient of (2d)^{-k} inside e^{-1}[...] for z_c, k = 1..6."""
    if not 1 <= k <= MAX_ORDER:
        raise ValueError(f"z_c coefficients are tabulated for orders 1..{MAX_ORDER}")
    return EulerRational.coerce(_ZC_TREE[k - 1]) - _ZC_ANIMAL[k - 1] * _ind(model)


def zc_coefficient(model: str, k: int) -> EulerRational:
    """Full coefficient of (2d)^{-k} in z_c."""
    return _EM1 * zc_bracket(model, k)


def gc_coefficient(model: str, k: int) -> EulerRational:
    """Full coefficient of (2d)^{-k} in g_c, k = 0..2."""
    if not 0 <= k <= 2:
        raise ValueError("g_c coefficients are known for orders 0..2")
    return EulerRational.e_power(-1) * (_GC[k] - _GC_ANIMAL[k] * _ind(model))


def zc_partial_sum(model: str, d: int, order: int = RIGOROUS_THROUGH) -> float:
    eps = 1 / (2 * d)
    return sum(float(zc_coefficient(model, k)) * eps ** k for k in range(1, order + 1))


def gc_partial_sum(model: str, d: int, order: int = 2) -> float:
    eps = 1 / (2 * d)
    return sum(float(gc_coefficient(model, k)) * eps ** k for k in range(order + 1))


@dataclass(frozen=True)
class TableRow:
    quantity: str
    order: int
    bracket: EulerRational
    coefficient: EulerRational
    status: str  # "rigorous" or "predicted"
    partial_sums: dict  # d -> float


def expansion_table(model: str, order: int = MAX_ORDER, dims: Iterable[int] = (8, 12, 16)) -> list[TableRow]:
    if order > MAX_ORDER:
        raise ValueError(f"order must be <= {MAX_ORDER}")
    dims = tuple(dims)
    rows = []
    for k in range(1, order + 1):
        rows.append(TableRow(
            "z_c", k, zc_bracket(model, k), zc_coefficient(model, k),
            "rigorous" if k <= RIGOROUS_THROUGH else "predicted",
            {d: zc_partial_sum(model, d, k) for d in dims},
        ))
    for k in range(min(order, 2) + 1):
        rows.append(TableRow(
            "g_c", k, _GC[k] - _GC_ANIMAL[k] * _ind(model), gc_coefficient(model, k), "rigorous",
            {d: gc_partial_sum(model, d, k) for d in dims},
        ))
    return rows


# ---------------------------------------------------------------------------
# Internal consistency: truncated series in eps = 1/(2d) over EulerRational
# ---------------------------------------------------------------------------


class EpsSeries:
    """Truncated series in eps with EulerRational coefficients."""

    def __init__(self, coeffs: Iterable, order: int):
        cs = [EulerRational.coerce(c) for c in coeffs][: order + 1]
        self.c = cs + [EulerRational()] * (order + 1 - len(cs))
        self.order = order

    def __add__(self, other):
        other = other if isinstance(other, EpsSeries) else EpsSeries([other], self.order)
        return EpsSeries([a + b for a, b in zip(self.c, other.c)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries([-a for a in self.c], self.order)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, EpsSeries) else EpsSeries([other], self.order)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if not isinstance(other, EpsSeries):
            return EpsSeries([a * other for a in self.c], self.order)
        out = [EulerRational() for _ in range(self.order + 1)]
        for i, a in enumerate(self.c):
            for j in range(self.order + 1 - i):
                out[i + j] = out[i + j] + a * other.c[j]
        return EpsSeries(out, self.order)

    __rmul__ = __mul__

    def shift(self, k: int):
        return EpsSeries([EulerRational()] * k + self.c, self.order)

    def reciprocal(self):
        inv0 = self.c[0].inverse()
        out = [inv0]
        for n in range(1, self.order + 1):
            s = EulerRational()
            for k in range(1, n + 1):
                s = s + self.c[k] * out[n - k]
            out.append(-(s * inv0))
        return EpsSeries(out, self.order)

    def exp_rational_constant(self):
        """exp(f) when f(0) is an integer m: e^m times exp of the rest."""
        m = self.c[0]
        if set(m.terms) - {0} or m.a0.denominator != 1:
            raise ValueError("constant term must be an integer")
        rest = [EulerRational()] + self.c[1:]
        out = [EulerRational({0: 1})]
        for n in range(1, self.order + 1):
            s = EulerRational()
            for k in range(1, n + 1):
                s = s + rest[k] * out[n - k] * k
            out.append(s * Fraction(1, n))
        return EpsSeries(out, self.order) * EulerRational.e_power(-int(m.a0))

    def __eq__(self, other):
        return isinstance(other, EpsSeries) and self.c == other.c

    def __repr__(self):
        return "EpsSeries[" + ", ".join(str(a) for a in self.c) + "]"


@dataclass(frozen=True)
class ChainReport:
    two_d_r: EpsSeries
    g_c: EpsSeries
    z_c: EpsSeries
    g_c_table: EpsSeries
    z_c_table: EpsSeries

    @property
    def holds(self) -> bool:
        return self.g_c == self.g_c_table and self.z_c == self.z_c_table


def consistency_chain(model: str) -> ChainReport:
    """Rebuild g_c and z_c from the Pi-hat, G(s) and g_circ inputs.

    2d r_c = 1 - 2d z_c Pi-hat - 2d z_c G(s);
    g_c = e^{2d r_c}[1 - (2d) r_c^2 / 2 + (2d)^2 r_c^4 / 8 - (7/6) eps^2] + g_circ;
    z_c = eps / (g_c + Pi-hat).
    """
    a = _ind(model)
    e = EulerRational.e_power(-1)
    em1 = EulerRational.e_power(1)
    # 2d z_c through eps^1 is all rho needs at this depth
    two_d_zc = EpsSeries([zc_bracket(model, k) * em1 for k in (1, 2)], 2)
    pi_hat = EpsSeries([0, e * -3, e * (-Fraction(27, 2)) + EulerRational({0: Fraction(3, 2) * a})], 2)
    G_s = EpsSeries([0, e, e * Fraction(7, 2)], 2)
    g_circ = EpsSeries([0, 0, Fraction(a, 2)], 2)

    rho = 1 - two_d_zc * pi_hat - two_d_zc * G_s
    # (2d) r^2 = rho^2 eps ; (2d)^2 r^4 = rho^4 eps^2
    bracket = 1 - (rho * rho).shift(1) * Fraction(1, 2) + (rho * rho * rho * rho).shift(2) * Fraction(1, 8)
    bracket = bracket - EpsSeries([0, 0, Fraction(7, 6)], 2)
    g_c = rho.exp_rational_constant() * bracket + g_circ
    # the denominator is known through eps^2, so z_c is fixed through eps^3
    z_c = EpsSeries([0] + (g_c + pi_hat).reciprocal().c, 3)

    g_tab = EpsSeries([gc_coefficient(model, k) for k in range(3)], 2)
    z_tab = EpsSeries([0] + [zc_coefficient(model, k) for k in (1, 2, 3)], 3)
    return ChainReport(rho, g_c, z_c, g_tab, z_tab)


# ---------------------------------------------------------------------------
# Ratio method
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioReport:
    model: str
    d: int
    N: int
    counts: list[int]
    ratios: list[Fraction]
    lambda_pred: float

    @property
    def final_ratio(self) -> Fraction:
        return self.ratios[-1]

    def within_factor(self, f: float) -> bool:
        r = float(self.final_ratio)
        return self.lambda_pred / f <= r <= self.lambda_pred * f


def lambda_pred(model: str, d: int) -> float:
    """1 / z_c from the three rigorous terms."""
    return 1 / zc_partial_sum(model, d, RIGOROUS_THROUGH)


def ratio_report(model: str, d: int, N: int, workers: int = 1, cache=None) -> RatioReport:
    counts = count(model, d, N, workers=workers, cache=cache).counts
    ratios = [Fraction(b, a) for a, b in zip(counts, counts[1:])]
    return RatioReport(model, d, N, counts, ratios, lambda_pred(model, d))
