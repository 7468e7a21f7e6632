"""Mackey functor axioms and Frobenius reciprocity on random elements of R."""

from hypothesis import given, settings, strategies as st

from oracles import ghost, ghost_rotate, ghost_transfer
from strategies import ring_elements, ring_setups


def weyl_sum(elem, p, n, upper, lower):
    """Sum of the C_{p^upper}/C_{p^lower} translates of a level-``lower`` element."""
    total = elem.scale(0)
    for coset in range(p ** (upper - lower)):
        total = total + elem.weyl(coset * p ** (n - upper))
    return total


@settings(max_examples=1000)
@given(ring_setups(), st.data())
def test_mackey_axioms_and_frobenius(setup, data):
    p, n, _gen_level, ring = setup
    upper = data.draw(st.integers(0, n))
    lower = data.draw(st.integers(0, upper))
    top_elem = data.draw(ring_elements(ring, upper))
    low_elem = data.draw(ring_elements(ring, lower))
    shift = data.draw(st.integers(0, p ** n - 1))

    # Restriction and transfer compose along the tower.
    for middle in range(lower, upper + 1):
        assert top_elem.res(middle).res(lower) == top_elem.res(lower)
        assert low_elem.tr(middle).tr(upper) == low_elem.tr(upper)
    # The group C_{p^upper} acts trivially on its own level; Weyl action is equivariant.
    assert top_elem.weyl(p ** (n - upper)) == top_elem
    assert top_elem.weyl(shift).res(lower) == top_elem.res(lower).weyl(shift)
    assert low_elem.weyl(shift).tr(upper) == low_elem.tr(upper).weyl(shift)
    # Double coset formula for cyclic groups.
    assert low_elem.tr(upper).res(lower) == weyl_sum(low_elem, p, n, upper, lower)
    # Restriction is a ring map and transfers satisfy Frobenius reciprocity.
    other = data.draw(ring_elements(ring, upper))
    assert ring.mul(top_elem, other).res(lower) == ring.mul(top_elem.res(lower), other.res(lower))
    assert ring.mul(low_elem, top_elem.res(lower)).tr(upper) == ring.mul(low_elem.tr(upper), top_elem)
    # The same structure maps seen through fixed-point polynomials.
    ghost_low = ghost(p, n, lower, low_elem.terms)
    assert ghost(p, n, upper, low_elem.tr(upper).terms) == ghost_transfer(p, n, ghost_low, lower, upper)
    assert ghost(p, n, lower, top_elem.res(lower).terms) == ghost(p, n, upper, top_elem.terms)[: lower + 1]
    assert ghost(p, n, upper, top_elem.weyl(shift).terms) == ghost_rotate(ghost(p, n, upper, top_elem.terms), shift)
