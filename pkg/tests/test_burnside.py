import pytest
from hypothesis import given, settings, strategies as st

from oracles import burnside_marks, burnside_product
from tambara_koszul.burnside import (
    BurnsideElem,
    augmentation,
    from_marks,
    marks,
    mul,
    norm_int,
    res,
    tr,
)


def test_free_orbit_squares_to_three_copies():
    free_orbit = BurnsideElem.basis(3, 1, 0)
    assert mul(free_orbit, free_orbit) == free_orbit.scale(3)


def test_unit_and_products_in_c9():
    one = BurnsideElem.one(3, 2)
    c3 = BurnsideElem.basis(3, 2, 1)
    free = BurnsideElem.basis(3, 2, 0)
    assert mul(one, c3) == c3
    assert mul(c3, free) == free.scale(3)


def test_restriction_examples():
    assert res(BurnsideElem.basis(3, 1, 0), 0) == BurnsideElem.integer(3, 0, 3)
    assert res(BurnsideElem.basis(3, 2, 1), 1) == BurnsideElem.integer(3, 1, 3)
    for level in range(3):
        assert res(BurnsideElem.one(3, 2), level) == BurnsideElem.one(3, level)


def test_transfer_examples():
    assert tr(BurnsideElem.one(3, 0), 1) == BurnsideElem.basis(3, 1, 0)
    assert tr(BurnsideElem.one(3, 0), 2) == BurnsideElem.basis(3, 2, 0)
    assert tr(res(BurnsideElem.one(3, 1), 0), 1) == BurnsideElem.basis(3, 1, 0)


@pytest.mark.parametrize("count, p, expected", [(2, 3, (2, 2)), (1, 3, (0, 1)), (0, 5, (0, 0))])
def test_norm_of_integers(count, p, expected):
    assert norm_int(p, count, 1).coeffs == expected


def test_marks_examples():
    assert marks(BurnsideElem.basis(3, 1, 0)) == (3, 0)
    assert marks(BurnsideElem.one(5, 3)) == (1, 1, 1, 1)
    assert marks(BurnsideElem.basis(3, 2, 1)) == (3, 3, 0)


def test_norm_marks_count_functions_on_cosets():
    # Fixed points of C_{p^i} on maps C_{p^2} -> {1..a} are maps on cosets.
    elem = norm_int(3, 2, 2)
    assert marks(elem) == (2 ** 9, 2 ** 3, 2)
    assert augmentation(elem) == 2 ** 9


burnside_args = st.sampled_from([2, 3, 5]).flatmap(
    lambda p: st.integers(0, 3).flatmap(
        lambda level: st.tuples(
            st.just(p),
            st.just(level),
            st.lists(st.integers(-6, 6), min_size=level + 1, max_size=level + 1),
            st.lists(st.integers(-6, 6), min_size=level + 1, max_size=level + 1),
        )
    )
)


@settings(max_examples=1000)
@given(burnside_args)
def test_marks_are_multiplicative(args):
    p, level, left, right = args
    left_elem = BurnsideElem(p, level, tuple(left))
    right_elem = BurnsideElem(p, level, tuple(right))
    prod = mul(left_elem, right_elem)
    assert marks(prod) == tuple(left_mark * right_mark for left_mark, right_mark in zip(marks(left_elem), marks(right_elem)))
    assert marks(left_elem) == burnside_marks(p, level, left)
    assert prod.coeffs == burnside_product(p, level, left, right)
    assert from_marks(p, level, marks(prod)) == prod


@given(burnside_args, st.data())
def test_restriction_and_transfer_on_marks(args, data):
    p, level, left, _ = args
    elem = BurnsideElem(p, level, tuple(left))
    to = data.draw(st.integers(0, level))
    assert marks(res(elem, to)) == marks(elem)[: to + 1]
    up = data.draw(st.integers(level, 4))
    lifted = marks(tr(elem, up))
    index = p ** (up - level)
    assert lifted == tuple(index * marks(elem)[subgroup] if subgroup <= level else 0 for subgroup in range(up + 1))
