from itertools import combinations

import pytest
import sympy

import oracles
from lattice_expansion import onept
from lattice_expansion.clusters import Cluster
from lattice_expansion.series import Series

MODELS = ["tree", "animal"]


def bonds(*pairs):
    return Cluster.from_bonds(pairs)


def test_interaction_examples():
    e1 = bonds(((0, 0), (1, 0)))
    e2 = bonds(((0, 0), (0, 1)))
    assert onept.V(e1, e1) == -1
    assert onept.V(e1, e2) == 0
    bent = bonds(((0, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0)))
    assert onept.V(e1, bent) == -1


@pytest.mark.parametrize("model", MODELS)
def test_gamma_terms_against_tuple_oracle(model):
    e = onept.expansion(model, 2, 4)
    naive = oracles.gamma_terms(model, 2, 4)
    got = [e.Gamma0, e.Gamma1, e.Gamma2, e.Gamma3, e.Gamma4_tilde]
    assert got == [Series(row) for row in naive]


@pytest.mark.parametrize("d", [2, 3])
def test_first_gamma_and_z_coefficients(d):
    e = onept.expansion("tree", d, 3)
    assert e.Gamma1[2] == d
    assert e.Z1[2] == 2 * d


@pytest.mark.parametrize("model", MODELS)
def test_z1_against_pair_oracle(model):
    assert list(onept.Z_quantities(model, 2, 5)["Z1"]) == oracles.z1(model, 2, 5)


@pytest.mark.parametrize("model", MODELS)
def test_z3_below_z2(model):
    z = onept.Z_quantities(model, 2, 6)
    assert z["Z3"].le(z["Z2"])


@pytest.mark.parametrize("model", MODELS)
def test_all_identities_in_the_plane(model):
    for name, (lhs, rhs) in onept.expansion(model, 2, 6).identities().items():
        assert lhs == rhs, name


def test_splits_partition_the_gamma_terms():
    e = onept.expansion("animal", 2, 6)
    assert onept.Gamma_split("animal", 2, 6, 2, 3) + onept.Gamma_split("animal", 2, 6, 2, 4) == e.Gamma2
    parts = [onept.Gamma_split("animal", 2, 6, 3, n) for n in range(3, 7)]
    assert sum(parts, Series.zero(6)) == onept.Gamma("animal", 2, 6, 3)
    with pytest.raises(ValueError):
        onept.Gamma_split("animal", 2, 6, 2, 5)


def test_tuple_products_vanish_beyond_2d():
    e = onept.expansion("tree", 1, 6)
    for m in range(3, 7):
        assert e.tuple_products[m].is_zero()
    assert not e.tuple_products[2].is_zero()


def test_explicit_tuples_match_patterns():
    pairs = list(onept.iter_tuples("tree", 2, 2, 2))
    assert sum(1 for t in pairs if t.size == 2) == 16
    assert sum(1 for t in pairs if t.size == 2 and t.V(0, 1)) == 4


@pytest.mark.parametrize("m", range(2, 6))
def test_j_terms_have_binomial_closed_form(m):
    npairs = m * (m - 1) // 2
    for pattern in range(1 << npairs):
        jt = onept.j_terms(m, pattern)
        k = bin(pattern).count("1")
        assert (jt.J1, jt.J2_total, jt.J3_total, jt.J4) == onept.j_closed_form(k)
        assert jt.product == (1 if k == 0 else 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_product_expansion_symbolically(n):
    xs = sympy.symbols(f"x0:{n}")
    lhs = sympy.prod([1 + x for x in xs])
    rhs = 1 + sum(xs)
    rhs += sum(a * b for a, b in combinations(xs, 2))
    rhs += sum(a * b * c for a, b, c in combinations(xs, 3))
    for idx in combinations(range(n), 4):
        tail = sympy.prod([1 + xs[f] for f in range(idx[-1] + 1, n)])
        rhs += sympy.prod([xs[i] for i in idx]) * tail
    assert sympy.expand(lhs - rhs) == 0
    assert onept.prodxi3_holds(n)
