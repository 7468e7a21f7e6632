from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import product_orbits
from tambara_koszul.lattice import (
    GroupTower,
    GSet,
    canonical_subset,
    incidence_set,
    orbit_product,
    set_stabilizer,
    shift_set,
    wedge_orbit_decomposition,
    weyl_group,
)


@pytest.mark.parametrize("p, n, level, expected", [(3, 2, 1, 3), (3, 2, 2, 1), (5, 1, 0, 5)])
def test_weyl_group_orders(p, n, level, expected):
    assert weyl_group(GroupTower(p, n), level) == expected


def test_tower_rejects_composite_order():
    with pytest.raises(ValueError):
        GroupTower(4, 1)


def test_orbit_product_examples():
    c9 = GroupTower(3, 2)
    assert orbit_product(c9, 2, 1) == GSet.of({1: 1})
    assert orbit_product(GroupTower(3, 1), 0, 0) == GSet.of({0: 3})
    assert orbit_product(c9, 1, 1) == GSet.of({1: 3})


@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (3, 1), (2, 2)]), st.data())
def test_orbit_product_matches_enumeration(group, data):
    p, n = group
    first = data.draw(st.integers(0, n))
    second = data.draw(st.integers(0, n))
    assert orbit_product(GroupTower(p, n), first, second).as_dict() == product_orbits(p, n, first, second)


@pytest.mark.parametrize(
    "size, expected",
    [(3, {0: 9, 1: 1}), (9, {2: 1}), (1, {0: 1}), (10, {})],
)
def test_c9_wedge_orbits_at_level_e(size, expected):
    counts, gens = wedge_orbit_decomposition(GroupTower(3, 2), 0, size)
    assert counts.as_dict() == expected
    assert len(gens) == sum(expected.values())


@given(st.sampled_from([(3, 1), (5, 1), (3, 2), (2, 2), (7, 1)]), st.data())
def test_wedge_orbits_cover_every_subset_once(group, data):
    p, n = group
    tower = GroupTower(p, n)
    level = data.draw(st.integers(0, n))
    size = data.draw(st.integers(0, tower.index(level)))
    counts, _ = wedge_orbit_decomposition(tower, level, size)
    assert counts.cardinality(tower) == comb(tower.index(level), size)


@given(st.sets(st.integers(0, 8), max_size=9), st.integers(0, 8))
def test_canonical_subset_is_shift_invariant(subset, shift):
    tower = GroupTower(3, 2)
    moved = shift_set(subset, shift, 9)
    assert canonical_subset(tower, 0, subset) == canonical_subset(tower, 0, moved)
    assert set_stabilizer(tower, 0, subset) == set_stabilizer(tower, 0, moved)


def test_incidence_set_examples():
    c9 = GroupTower(3, 2)
    assert incidence_set(c9, 0, (0, 1, 3), (0,)) == (0, 3)
    assert incidence_set(c9, 0, (0, 4, 7), ()) == ()
    assert incidence_set(c9, 0, range(9), (0, 1, 2)) == tuple(range(9))
