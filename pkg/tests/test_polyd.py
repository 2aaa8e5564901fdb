from math import comb, factorial

import pytest
import sympy

import oracles
from lattice_expansion.clusters import count
from lattice_expansion.polyd import (
    DPoly,
    count_polynomials,
    finite_differences,
    interpolate,
    poly_from_proper,
    proper_counts,
)

MODELS = ["tree", "animal"]


def axes_used(bonds):
    return {next(i for i, (a, b) in enumerate(zip(*bd)) if a != b) for bd in bonds}


def test_proper_table_basics():
    t = proper_counts("tree")
    assert t[0, 0] == 1
    assert t[1, 1] == 2
    assert all(t[n, k] == 0 for n in range(6) for k in range(n + 1, 8))


@pytest.mark.parametrize("model", MODELS)
def test_proper_counts_in_the_plane_against_oracle(model):
    t = proper_counts(model)
    for n in range(5):
        naive = sum(1 for c in oracles.clusters(model, 2, 4)[n] if len(axes_used(c)) == 2)
        assert t[n, 2] == naive


def test_first_polynomials():
    t = proper_counts("tree")
    assert poly_from_proper(t, 1) == DPoly([0, 2])
    assert poly_from_proper(t, 2) == DPoly([0, -3, 6])
    with pytest.raises(ValueError):
        poly_from_proper(t, 6)


@pytest.mark.parametrize("model", MODELS)
def test_polynomials_match_direct_counts(model):
    polys = count_polynomials(model)
    for d in (1, 2, 3):
        direct = count(model, d, 5).counts
        assert [p(d) for p in polys] == direct


@pytest.mark.parametrize("model", MODELS)
def test_interpolation_oracle(model):
    polys = count_polynomials(model, 4)
    dsym = sympy.Symbol("d")
    for n, p in enumerate(polys):
        pts = [(d, count(model, d, n).counts[n]) for d in range(1, n + 2)]
        expected = sympy.Poly(sympy.interpolate(pts, dsym), dsym).all_coeffs()[::-1] if n else [1]
        assert list(p.coeffs) == [sympy.Rational(c) for c in expected]
        assert interpolate(pts) == p


def test_tree_degrees_and_leading_terms():
    for n, p in enumerate(count_polynomials("tree")):
        assert p.degree == n and p.leading > 0
        values = [count("tree", d, n).counts[n] for d in range(1, n + 2)] if n <= 3 else None
        if values:
            assert finite_differences(values)[n] == [factorial(n) * p.leading]


def test_cyclic_animals_use_fewer_directions():
    t, a = count_polynomials("tree"), count_polynomials("animal")
    for n in range(6):
        diff = a[n] - t[n]
        assert diff.degree <= max(n - 2, -1)
    assert a[4] - t[4] == DPoly([0, -2, 2])


@pytest.mark.parametrize("model", MODELS)
def test_evaluations_are_nonnegative_integers(model):
    for p in count_polynomials(model):
        for d in range(1, 12):
            v = p(d)
            assert v.denominator == 1 and v >= 0


def test_binomial_polynomial():
    for k in range(5):
        assert all(DPoly.binomial(k)(d) == comb(d, k) for d in range(8))


def test_json_and_text():
    p = DPoly([0, -3, 6])
    assert p.to_json() == ["0/1", "-3/1", "6/1"]
    assert str(p) == "6*d^2 - 3*d"
    assert str(DPoly()) == "0"
