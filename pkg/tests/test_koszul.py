import pytest
from hypothesis import given, settings, strategies as st

from tambara_koszul.freemod import FreeModElem, RModHom, base_change_hom, compose
from tambara_koszul.intmat import rank
from tambara_koszul.koszul import (
    BuildError,
    build_c9_tricomplex,
    build_cp_comparison,
    build_cp_cone,
    build_cp_divided,
    build_cp_lift,
    build_general,
    build_green_fixed,
    canonical_tuple,
    compare_multicomplexes,
    cp_grid,
    totalize,
)
from tambara_koszul.lattice import GroupTower
from tambara_koszul.tambara import FreeTambara


def unit(size, index):
    return tuple(int(position == index) for position in range(size))


@pytest.fixture(scope="module")
def lift3():
    return build_cp_lift(3)


def test_first_differential_sends_z_to_x(lift3):
    for shift in range(3):
        image = lift3.differential(1).apply(lift3.module(1).gen(0, shift))
        assert image == FreeModElem(lift3.module(0), 0, {(unit(3, shift), 0, 0, 0): 1})


def test_second_differential_on_a_transferred_wedge(lift3):
    wedge = lift3.module(2).gen(0)
    z0 = lift3.module(1).gen(0)
    expected = (z0.times_monomial(unit(3, 2)) - z0.times_monomial(unit(3, 1))).tr(1)
    assert lift3.differential(2).apply(wedge.tr(1)) == expected
    assert compose(lift3.differential(1), lift3.differential(2)).is_zero()


def test_first_differential_blocks_are_the_classical_koszul_maps(lift3):
    d1 = lift3.differential(1)
    degree_one = d1.matrix(0, 1).to_dense()
    assert sorted(map(tuple, degree_one)) == sorted(unit(3, index) for index in range(3))
    # Degree 2: nine products x^(j) z^(i) onto six quadratic monomials, kernel the three syzygies.
    degree_two = d1.matrix(0, 2)
    assert (degree_two.nrows, degree_two.ncols) == (6, 9)
    assert rank(degree_two) == 6


def test_lift_generator_counts():
    lift3 = build_cp_lift(3)
    assert [len(mod.generators) for mod in lift3.modules] == [1, 1, 1, 1]
    assert [mod.generators[0].level for mod in lift3.modules] == [1, 0, 0, 1]
    lift5 = build_cp_lift(5)
    assert len(lift5.module(2).generators) == 2
    assert all(gen.level == 0 for gen in lift5.module(2).generators)


def test_divided_complex_and_comparison():
    lift = build_cp_lift(3)
    divided = build_cp_divided(3)
    assert [generator.label for mod in divided.modules for generator in mod.generators][0] == "u"
    first = divided.module(1).gen(0)
    assert divided.differential(1).apply(first) == divided.module(0).gen(0).res(0)
    maps = build_cp_comparison(3, lift, divided)
    assert maps[3].apply(divided.module(3).gen(0)) == lift.module(3).gen(0)
    for position in range(1, 4):
        left = compose(maps[position - 1], divided.differential(position))
        right = compose(lift.differential(position), maps[position])
        for gen in range(len(divided.module(position).generators)):
            assert left.images[gen] == right.images[gen]


def test_base_change_kills_lift_differentials_and_keeps_divided_units():
    lift = build_cp_lift(3).base_change()
    assert lift.differential(1).is_zero()
    divided = build_cp_divided(3).base_change()
    image = divided.differential(1).images[0]
    assert set(image.terms.values()) == {1}
    ident = RModHom.identity(build_cp_lift(3).module(1))
    changed = base_change_hom(ident, lift.module(1), lift.module(1))
    assert changed.images == RModHom.identity(lift.module(1)).images


def test_c9_grid_examples():
    grid = build_general(3, 2, 0)
    assert grid.cell((3, 1, 0)).describe() == "27(C9/e) + 3(C9/C3)"
    gen = grid.cell((3, 1, 0)).gen("z^(0)∧z^(1)∧z^(3)∧u^(0)/x^(0)x^(3)")
    image = grid.differential((3, 1, 0), 1).apply(gen)
    assert image == grid.cell((3, 0, 0)).gen("z^(0)∧z^(1)∧z^(3)").times_monomial(unit(9, 6))
    ring = FreeTambara(grid.tower, 0)
    top = grid.differential((0, 0, 1), 2).apply(grid.cell((0, 0, 1)).gen("v"))
    assert top.terms == ring.norm_monomial(ring.variable(0), 2).terms


def test_general_builder_reproduces_the_literal_constructions():
    assert compare_multicomplexes(build_general(3, 1, 0), cp_grid(3)) == []
    assert compare_multicomplexes(build_general(3, 2, 0), build_c9_tricomplex()) == []


@pytest.mark.parametrize("p, n, length", [(3, 1, 4), (3, 2, 13), (5, 1, 6)])
def test_total_lengths(p, n, length):
    assert totalize(build_general(p, n, 0)).length() == length


def test_cone_and_trivial_totalization():
    cone = build_cp_cone(3)
    assert cone.length() == 4
    assert [mod.describe() for mod in cone.modules] == [
        "C3/C3", "C3/e + C3/C3", "2(C3/e)", "C3/e + C3/C3", "C3/C3"]
    grid = build_general(3, 1, 1)
    assert len(grid.directions) == 1
    single = totalize(grid)
    assert single.length() == 1
    for position, mod in enumerate(single.modules):
        assert mod.describe() == grid.cell((position,)).describe()
    assert [img.terms for img in single.differential(1).images] == [img.terms for img in grid.differential((1,), 0).images]


def test_even_prime_needs_the_fixed_generator():
    with pytest.raises(BuildError):
        build_general(2, 1, 0)
    assert build_green_fixed(2).length() == 1


def all_complexes(p, n):
    for gen_level in range(n + 1):
        grid = build_general(p, n, gen_level)
        yield grid
        total = totalize(grid)
        yield total
        yield total.base_change()
    if n == 1:
        yield build_cp_lift(p)
        yield build_cp_divided(p)
        yield build_cp_cone(p)
        yield cp_grid(p)


@pytest.mark.parametrize("p, n", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_differentials_square_to_zero(p, n):
    for cx in all_complexes(p, n):
        assert cx.square_zero_violations() == [], cx.name
        if hasattr(cx, "commutation_violations"):
            assert cx.commutation_violations() == [], cx.name


def _exhaustive_canonical(tower, directions, sets):
    best = None
    for shift in range(tower.order):
        cand = tuple(tuple(sorted((index + shift) % tower.index(direction) for index in block)) for direction, block in zip(directions, sets))
        if best is None or cand < best:
            best, best_shift = cand, shift
    return best, best_shift


@settings(max_examples=300)
@given(st.sampled_from([(3, 1), (3, 2), (5, 1), (2, 3)]), st.data())
def test_canonical_tuple_matches_exhaustive_search(params, data):
    tower = GroupTower(*params)
    directions = tuple(range(tower.n + 1))
    sets = tuple(
        tuple(sorted(data.draw(st.sets(st.integers(0, tower.index(direction) - 1), max_size=tower.index(direction)))))
        for direction in directions
    )
    assert canonical_tuple(tower, directions, sets) == _exhaustive_canonical(tower, directions, sets)
