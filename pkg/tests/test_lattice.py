import pytest
from hypothesis import given, strategies as st

from lattice_expansion.lattice import (
    InvalidDimensionError,
    l1,
    l1_ball,
    make_bond,
    neighbors,
    origin,
    symmetries,
    symmetry_orbit,
    unit_vectors,
    walks,
)


def test_neighbors_order_in_the_plane():
    assert neighbors((0, 0), 2) == [(1, 0), (0, 1), (-1, 0), (0, -1)]


def test_neighbors_on_the_line():
    assert neighbors((0,), 1) == [(1,), (-1,)]


def test_neighbor_count_is_2d():
    assert len(neighbors(origin(5), 5)) == 10


@pytest.mark.parametrize("d", [0, -1])
def test_bad_dimension(d):
    with pytest.raises(InvalidDimensionError):
        unit_vectors(d)


def test_point_outside_dimension():
    with pytest.raises(InvalidDimensionError):
        neighbors((0, 0), 3)


def test_orbits():
    assert symmetry_orbit((1, 0)) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert symmetry_orbit((1, 1)) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert symmetry_orbit((0, 0, 0)) == {(0, 0, 0)}


def test_group_order():
    assert len(set(symmetries(3))) == 48


points3 = st.tuples(*[st.integers(-5, 5)] * 3)


@given(points3)
def test_symmetries_preserve_norm_and_permute_neighbours(x):
    nb = set(neighbors(x))
    assert len(nb) == 6
    for sigma in symmetries(3):
        assert l1(sigma(x)) == l1(x)
        assert set(neighbors(sigma(x))) == {sigma(y) for y in nb}


def test_composition_is_function_composition():
    group = list(symmetries(2))
    x = (2, -1)
    for a in group:
        for b in group:
            assert a.compose(b)(x) == a(b(x))


def test_l1_ball_size():
    # |{x in Z^2 : |x|_1 <= r}| = 2r^2 + 2r + 1
    for r in range(5):
        assert len(l1_ball(2, r)) == 2 * r * r + 2 * r + 1


def test_walk_count():
    assert sum(1 for _ in walks((0, 0), 3)) == 4 ** 3


def test_make_bond_rejects_non_neighbours():
    with pytest.raises(ValueError):
        make_bond((0, 0), (1, 1))
    assert make_bond((1, 0), (0, 0)) == ((0, 0), (1, 0))
