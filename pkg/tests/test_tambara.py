import pytest
from hypothesis import given, settings, strategies as st

from oracles import ghost, ghost_product, monomial_orbits
from strategies import CONFLUENCE_PARAMETERS, ring_elements, ring_setups
from tambara_koszul.burnside import BurnsideElem
from tambara_koszul.lattice import GroupTower
from tambara_koszul.tambara import FreeTambara, NonMonomialNorm, plain_polynomial_product


@pytest.fixture(scope="module")
def c3():
    return FreeTambara(GroupTower(3, 1), 0)


def traced(ring, exponents):
    """t_{ijk} = tr_e^{C_3}(x^(0)^i x^(1)^j x^(2)^k)."""
    return ring.monomial(exponents, 0).tr(1)


def test_square_of_a_traced_variable(c3):
    t100 = traced(c3, (1, 0, 0))
    assert c3.mul(t100, t100) == traced(c3, (2, 0, 0)) + traced(c3, (1, 1, 0)).scale(2)


def test_norm_shifts_traced_exponents(c3):
    norm = c3.norm_monomial(c3.variable(0), 1)
    for exps in [(0, 0, 0), (1, 0, 2), (2, 1, 0)]:
        shifted = tuple(exp + 1 for exp in exps)
        assert c3.mul(norm, traced(c3, exps)) == traced(c3, shifted)


def test_free_orbit_class_squares(c3):
    t000 = traced(c3, (0, 0, 0))
    assert c3.mul(t000, t000) == t000.scale(3)
    assert t000 == c3.burnside(BurnsideElem.basis(3, 1, 0))


def test_restrictions_to_the_underlying_ring(c3):
    assert c3.polynomial(traced(c3, (1, 0, 0))) == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    assert c3.polynomial(c3.norm_monomial(c3.variable(0), 1)) == {(1, 1, 1): 1}
    assert c3.one(1).res(0) == c3.one(0)


def test_transfers_and_norms(c3):
    assert c3.monomial((1, 1, 0), 0).tr(1) == traced(c3, (1, 1, 0))
    assert c3.one(0).tr(1) == traced(c3, (0, 0, 0))
    assert c3.norm_monomial(c3.variable(1), 1) == c3.norm_monomial(c3.variable(0), 1)
    assert c3.norm_monomial(c3.one(0), 1) == c3.one(1)
    with pytest.raises(NonMonomialNorm):
        c3.norm_monomial(c3.variable(0) + c3.variable(1), 1)


def test_c9_norms_and_q_generators():
    c9 = FreeTambara(GroupTower(3, 2), 0)
    x0 = c9.variable(0)
    middle_norm = c9.norm_monomial(x0, 1)
    assert middle_norm.tr(2) == c9.q_generator(1, (1, 0, 0), 2)
    top_norm = c9.norm_monomial(x0, 2)
    assert top_norm == c9.q_generator(2, (1,), 2)
    assert c9.polynomial(top_norm) == {(1,) * 9: 1}


def test_basis_of_cubic_terms_on_c3(c3):
    names = sorted(c3.pretty(elem) for elem in c3.basis_of_degree(1, 3))
    assert names == sorted(["t_300", "t_210", "t_120", "t_111", "n"])


@given(st.sampled_from([(3, 1, 0), (5, 1, 0), (3, 2, 0), (3, 2, 1), (2, 2, 0)]), st.data())
def test_basis_sizes_match_monomial_orbit_enumeration(params, data):
    p, n, gen_level = params
    ring = FreeTambara(GroupTower(p, n), gen_level)
    level = data.draw(st.integers(0, n))
    degree = data.draw(st.integers(0, 3))
    step = p ** (n - level)
    expected = 0
    for orbit in monomial_orbits(ring.nvars, degree, step):
        # Stabilizer exponent of the orbit inside G, capped by the level.
        rep = orbit[0]
        stab = n
        while stab > 0 and tuple(rep[(index - p ** (n - stab)) % len(rep)] for index in range(len(rep))) != rep:
            stab -= 1
        expected += min(stab, level) + 1
    assert len(ring.basis_of_degree(level, degree)) == expected


def test_low_degree_bases(c3):
    assert len(c3.basis_of_degree(0, 2)) == 6
    c9 = FreeTambara(GroupTower(3, 2), 0)
    assert len(c9.basis_of_degree(2, 0)) == 3


def test_augmentation(c3):
    assert c3.augment(traced(c3, (1, 0, 0))).is_zero()
    elem = traced(c3, (0, 0, 0)) + c3.integer(1, 2)
    assert c3.augment(elem) == BurnsideElem(3, 1, (1, 2))
    assert c3.augment(c3.norm_monomial(c3.variable(0), 1)).is_zero()


@settings(max_examples=500)
@given(ring_setups(CONFLUENCE_PARAMETERS), st.data())
def test_normal_form_products_agree_with_ghost_oracle(setup, data):
    p, n, gen_level, ring = setup
    level = data.draw(st.integers(gen_level, n) if data.draw(st.booleans()) else st.integers(0, n))
    left = data.draw(ring_elements(ring, level))
    right = data.draw(ring_elements(ring, level))
    prod = ring.mul(left, right)
    assert prod == ring.mul(right, left)
    assert ghost(p, n, level, prod.terms) == ghost_product(ghost(p, n, level, left.terms), ghost(p, n, level, right.terms))
    assert ring.polynomial(prod) == plain_polynomial_product(ring.polynomial(left), ring.polynomial(right))
