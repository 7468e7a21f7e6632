from hypothesis import given, strategies as st

from oracles import product_orbits
from tambara_koszul.freemod import FreeModule, Generator, RModHom, compose
from tambara_koszul.lattice import GroupTower


def orbit_module(tower, level, gen_level=None, degree=0):
    return FreeModule(tower, gen_level, [Generator("z", level, degree)], name="M")


def test_free_mackey_functor_on_c9_mod_c3_ranks():
    module = orbit_module(GroupTower(3, 2), 1)
    assert [len(module.basis(level)) for level in (2, 1, 0)] == [2, 6, 3]


@given(st.sampled_from([(3, 1), (3, 2), (5, 1), (2, 3)]), st.data())
def test_free_mackey_ranks_match_orbit_enumeration(group, data):
    p, n = group
    tower = GroupTower(p, n)
    gen_level = data.draw(st.integers(0, n))
    module = orbit_module(tower, gen_level)
    for level in range(n + 1):
        # Each orbit C/C_{p^s} of C/C_{p^level} x C/C_{p^gen} contributes A(C_{p^s}) of rank s + 1.
        orbits = product_orbits(p, n, level, gen_level)
        assert len(module.basis(level)) == sum((stab + 1) * count for stab, count in orbits.items())


def test_restriction_of_transfer_sums_the_translates():
    module = orbit_module(GroupTower(3, 1), 0, gen_level=0, degree=1)
    gen = module.gen("z")
    total = module.gen("z") + module.gen("z", 1) + module.gen("z", 2)
    assert gen.tr(1).res(0) == total


def test_weyl_action_permutes_translates():
    module = orbit_module(GroupTower(3, 1), 0, gen_level=0, degree=1)
    assert module.gen("z", 2).weyl(1) == module.gen("z")
    assert module.zero(0).tr(1).is_zero()


def test_identity_and_composition():
    tower = GroupTower(3, 1)
    module = orbit_module(tower, 0, gen_level=0, degree=1)
    ident = RModHom.identity(module)
    elem = module.gen("z", 1).tr(1)
    assert ident.apply(elem) == elem
    twist = RModHom(module, module, [module.gen("z", 1)], name="twist")
    assert compose(ident, twist).apply(elem) == twist.apply(elem)
    assert compose(twist, compose(twist, twist)).apply(module.gen("z")) == module.gen("z")


def test_matrix_below_the_support_degree_is_empty():
    tower = GroupTower(3, 1)
    module = orbit_module(tower, 0, gen_level=0, degree=1)
    ident = RModHom.identity(module)
    assert ident.matrix(0, 0).ncols == 0
