from fractions import Fraction

import pytest

import oracles
from lattice_expansion import generating as gen
from lattice_expansion.lattice import l1, symmetries, unit_vectors
from lattice_expansion.series import Series, SiteSeries, convolve

MODELS = ["tree", "animal"]


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("d,N", [(2, 6), (3, 4)])
def test_one_point_counts(model, d, N):
    g = gen.one_point(model, d, N)
    assert list(g) == oracles.counts(model, d, N)
    assert g[0] == 1 and g[1] == 2 * d


def test_four_bond_cyclic_animals_in_the_plane():
    assert gen.one_point("animal", 2, 4)[4] - gen.one_point("tree", 2, 4)[4] == 4


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("i", [0, 1, 2, 3])
def test_two_point_min_against_oracle(model, i):
    naive = oracles.two_point(model, 2, 5, min_dist=i)
    assert gen.two_point_min(model, 2, 5, i) == SiteSeries.from_counts(2, 5, naive)


def test_single_bond_two_point():
    for d in (1, 2, 3):
        G = gen.two_point("tree", d, 3)
        assert all(G[s][1] == 1 for s in unit_vectors(d))


def test_origin_is_never_at_positive_distance():
    assert gen.two_point_min("tree", 2, 6, 1)[(0, 0)].is_zero()
    assert gen.two_point_min("animal", 2, 6, 1)[(0, 0)].is_zero()
    assert gen.origin_cycle("animal", 2, 6)[4] == 4


@pytest.mark.parametrize("model", MODELS)
def test_two_point_structure(model):
    G = gen.two_point(model, 2, 6)
    assert G.support_bound_ok()
    assert all(s.is_integral() and all(c >= 0 for c in s) for _, s in G.items())
    for sigma in symmetries(2):
        assert G.symmetric(sigma)


@pytest.mark.parametrize("model", MODELS)
def test_origin_cycle_against_oracle(model):
    assert list(gen.origin_cycle(model, 2, 6)) == oracles.origin_cycle(model, 2, 6)


@pytest.mark.parametrize("d", [2, 3])
def test_unit_square_count(d):
    assert gen.origin_cycle("animal", d, 4)[4] == (2 * d) * (2 * d - 2) // 2


@pytest.mark.parametrize("model", MODELS)
def test_planted_against_oracle(model):
    for s in unit_vectors(2):
        naive = [0] * 6
        for c in oracles.planted(model, 2, 5, s):
            naive[len(c)] += 1
        r = gen.planted(model, 2, 5, s)
        assert list(r) == naive
        assert r[0] == 0 and r[1] == 1


def test_planted_on_the_line():
    assert gen.planted("tree", 1, 3, (1,))[2] == 1


def test_planted_needs_a_unit_vector():
    with pytest.raises(ValueError):
        gen.planted("tree", 2, 3, (1, 1))


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("d,N", [(2, 6), (3, 4)])
def test_planted_is_one_point_minus_two_point(model, d, N):
    g = gen.one_point(model, d, N)
    G = gen.two_point(model, d, N)
    for s in unit_vectors(d):
        assert gen.planted(model, d, N, s) == g.shift(1) - G[s].shift(1)


@pytest.mark.parametrize("d", [2, 3])
def test_susceptibility(d):
    N = 5
    chi_t = gen.susceptibility("tree", d, N)
    assert chi_t == gen.one_point("tree", d, N).times_z().derivative()
    chi_a = gen.susceptibility("animal", d, N)
    assert chi_a.le(gen.one_point("animal", d, N).times_z().derivative())
    assert chi_t[0] == chi_a[0] == 1


# --- random-walk kernel ------------------------------------------------------------


def test_four_step_return_probability():
    assert gen.kernel_power(2, 4)[(0, 0)][0] == Fraction(9, 64) == Fraction(oracles.closed_walks(2, 4), 4 ** 4)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_closed_walk_return_against_oracle(d, m):
    expected = Fraction(oracles.closed_walks(d, 2 * m), (2 * d) ** (2 * m)) * (2 * d) ** m
    assert gen.closed_walk_return(d, m) == expected


@pytest.mark.parametrize("d", range(1, 7))
def test_closed_walk_bound(d):
    for m, bound in ((1, 1), (2, 3), (3, 15)):
        assert gen.closed_walk_return(d, m) <= bound


# --- S^(m,n) and the bound on G^(i) ------------------------------------------------


def test_s_mn_trivial_cases():
    assert gen.S_mn("tree", 2, 4, 2, 1) == gen.two_point_min("tree", 2, 4, 2)
    G = gen.two_point("tree", 2, 4)
    assert gen.S_mn("tree", 2, 4, 0, 2) == convolve(G, G)
    assert list(gen.compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]


@pytest.mark.parametrize("i", [1, 2, 3])
def test_gk_bound_for_trees(i):
    assert gen.gk_bound("tree", 2, 5, i).holds


def test_gk_comparison_for_animals_is_computed():
    chk = gen.gk_bound("animal", 2, 5, 1)
    assert chk.lhs.d == chk.rhs.d == 2


# --- Q, Q^n, Q* -------------------------------------------------------------------


@pytest.mark.parametrize("model", MODELS)
def test_q_against_pair_oracle(model):
    naive = oracles.q_pairs(model, 2, 3)
    assert gen.Q(model, 2, 3) == SiteSeries.from_counts(2, 3, naive)


def test_q_low_coefficients():
    q = gen.Q("tree", 2, 4)
    s = (1, 0)
    assert q[s][1] == 2
    assert q[s][2] == oracles.q_pairs("tree", 2, 2)[s][2]


@pytest.mark.parametrize("model", MODELS)
def test_q_partition_and_symmetry(model):
    q = gen.Q(model, 2, 5)
    total = SiteSeries(2, 5)
    for part in gen.Q_levels(model, 2, 5).values():
        total = total + part
    assert total == q
    for s in unit_vectors(2):
        parts = [gen.Q_n(model, 2, 5, s, n) for n in range(6)]
        assert sum(parts, Series.zero(5)) == q[s]
    for sigma in symmetries(2):
        assert q.symmetric(sigma)


def test_q_bounded_by_s_mn():
    q = gen.Q("tree", 2, 5)
    for x in q.support():
        assert q[x].le(gen.S_mn("tree", 2, 5, l1(x), 2)[x])


@pytest.mark.parametrize("model", MODELS)
def test_q_star_against_triple_oracle(model):
    assert list(gen.Q_star(model, 2, 3, (1, 0))) == oracles.q_star(model, 2, 3, (1, 0))


def test_bundle_json():
    data = gen.bundle("tree", 2, 3).to_json()
    assert data["g"] == ["1/1", "4/1", "18/1", "88/1"]
    assert len(data["G_min"]) == 4
