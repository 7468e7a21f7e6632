"""Koszul-type complexes of free R-modules for G = C_{p^n}.

Each direction, a subgroup exponent between the generator level and n, is the
exterior algebra on the orbit G/C_{p^direction}.  Its differential removes one
index and multiplies by the norm of the variable at that index, whose
underlying monomial is the product of the variables over the fibre of
G/C_{p^gen_level} -> G/C_{p^direction}.  Cells of the multicomplex are free
on G-orbits of tuples of index sets, one set per direction.  Each generator
carries a denominator monomial so that every differential coefficient is an
honest monomial: the exponent of a variable in the denominator is one less
than the number of factors whose index set covers its coset (or zero).  For
C_p this gives the n-divided complex in the top layer, and for C_9 it gives
the incidence-set denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from .freemod import FreeModElem, FreeModule, Generator, RModHom, base_change_hom, base_change_module, compose
from .lattice import GroupTower, canonical_subset, incidence_set, wedge_orbit_decomposition

DIRECTION_LETTERS = ("z", "u", "v", "w")


class BuildError(ValueError):
    pass


# --------------------------------------------------------------------------
# Chain complexes and multicomplexes
# --------------------------------------------------------------------------


@dataclass
class ChainComplex:
    """Modules in positions 0..L with differentials from each position to the one below."""

    modules: list
    differentials: dict = field(default_factory=dict)
    name: str = ""

    @property
    def tower(self) -> GroupTower:
        return self.modules[0].tower

    def length(self) -> int:
        nonzero = [position for position, mod in enumerate(self.modules) if mod.generators]
        return max(nonzero) if nonzero else 0

    def module(self, position: int) -> FreeModule | None:
        if 0 <= position < len(self.modules):
            return self.modules[position]
        return None

    def differential(self, position: int) -> RModHom | None:
        return self.differentials.get(position)

    def square_zero_violations(self) -> list[str]:
        bad = []
        for position in sorted(self.differentials):
            if position - 1 in self.differentials:
                comp = compose(self.differentials[position - 1], self.differentials[position])
                if not comp.is_zero():
                    bad.append(f"{self.name}: d_{position - 1} d_{position} != 0")
        return bad

    def base_change(self) -> "ChainComplex":
        mods = [base_change_module(mod) for mod in self.modules]
        diffs = {position: base_change_hom(hom, mods[position], mods[position - 1]) for position, hom in self.differentials.items()}
        return ChainComplex(mods, diffs, name=self.name + " (base change)")

    def summary(self) -> list[dict]:
        out = []
        for position, mod in enumerate(self.modules):
            out.append({"degree": position, "generators": mod.describe(), "count": len(mod.generators)})
        return out


@dataclass
class MultiComplex:
    tower: GroupTower
    gen_level: int | None
    directions: tuple
    shape: tuple
    cells: dict = field(default_factory=dict)
    diffs: dict = field(default_factory=dict)
    name: str = ""

    def multidegrees(self) -> list[tuple]:
        return sorted(self.cells)

    def cell(self, multideg: tuple) -> FreeModule | None:
        return self.cells.get(tuple(multideg))

    def differential(self, multideg: tuple, axis: int) -> RModHom | None:
        return self.diffs.get((tuple(multideg), axis))

    def total_length(self) -> int:
        degrees = [sum(multideg) for multideg, mod in self.cells.items() if mod.generators]
        return max(degrees) if degrees else 0

    def square_zero_violations(self) -> list[str]:
        bad = []
        for (multideg, axis), hom in self.diffs.items():
            lower = _step(multideg, axis, -1)
            nxt = self.diffs.get((lower, axis))
            if nxt is not None and not compose(nxt, hom).is_zero():
                bad.append(f"direction {axis} squares to nonzero at {multideg}")
        return bad

    def commutation_violations(self) -> list[str]:
        bad = []
        for (multideg, axis), hom in self.diffs.items():
            for other in range(axis + 1, len(self.directions)):
                first = self.diffs.get((multideg, other))
                if first is None:
                    continue
                via_other = self.diffs.get((_step(multideg, other, -1), axis))
                via_axis = self.diffs.get((_step(multideg, axis, -1), other))
                if via_other is None or via_axis is None:
                    continue
                lhs = compose(via_other, first)
                rhs = compose(via_axis, hom)
                for left_image, right_image in zip(lhs.images, rhs.images):
                    if left_image.terms != right_image.terms:
                        bad.append(f"directions {axis},{other} do not commute at {multideg}")
                        break
        return bad

    def base_change(self) -> "MultiComplex":
        cells = {multideg: base_change_module(mod) for multideg, mod in self.cells.items()}
        diffs = {
            (multideg, axis): base_change_hom(hom, cells[multideg], cells[_step(multideg, axis, -1)])
            for (multideg, axis), hom in self.diffs.items()
        }
        return MultiComplex(self.tower, None, self.directions, self.shape, cells, diffs, self.name + " (base change)")

    def axis_complex(self, fixed: tuple, axis: int) -> ChainComplex:
        """The one-directional complex through ``fixed`` along ``axis``."""
        mods = []
        diffs = {}
        for position in range(self.shape[axis] + 1):
            multideg = tuple(position if index == axis else value for index, value in enumerate(fixed))
            mods.append(self.cells[multideg])
            if position >= 1:
                diffs[position] = self.diffs[(multideg, axis)]
        return ChainComplex(mods, diffs, name=f"{self.name} axis {axis} through {fixed}")


def _step(multideg: tuple, axis: int, delta: int) -> tuple:
    return tuple(value + delta if index == axis else value for index, value in enumerate(multideg))


# --------------------------------------------------------------------------
# Orbit bookkeeping for tuples of index sets
# --------------------------------------------------------------------------


def _shift_tuple(tower: GroupTower, directions: tuple, sets: tuple, shift: int) -> tuple:
    return tuple(
        tuple(sorted((index + shift) % tower.index(direction) for index in block)) for direction, block in zip(directions, sets)
    )


def _shift_ordered(tower: GroupTower, directions: tuple, sets: tuple, shift: int) -> tuple:
    return tuple(tuple((index + shift) % tower.index(direction) for index in block) for direction, block in zip(directions, sets))


def permutation_sign(seq: Iterable) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    items = list(seq)
    sign = 1
    seen = [False] * len(items)
    order = sorted(range(len(items)), key=lambda index: items[index])
    for start in range(len(items)):
        if seen[start]:
            continue
        length = 0
        pos = start
        while not seen[pos]:
            seen[pos] = True
            pos = order[pos]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def tuple_sign(blocks: tuple) -> int:
    sign = 1
    for block in blocks:
        sign *= permutation_sign(block)
    return sign


def canonical_tuple(tower: GroupTower, directions: tuple, sets: tuple) -> tuple[tuple, int]:
    """(least translate, least shift with translate = shift . sets).

    Every modulus divides the largest one, so shifts beyond it repeat.  The
    least translate moves some element of the first nonempty block to 0, which
    leaves only a few candidate shifts.
    """
    moduli = [tower.index(direction) for direction in directions]
    period = max(moduli, default=1)
    candidates = range(period)
    for mod, block in zip(moduli, sets):
        if block:
            candidates = sorted({(-index) % mod + lap * mod for index in block for lap in range(period // mod)})
            break
    best = None
    best_shift = 0
    for shift in candidates:
        cand = tuple(tuple(sorted((index + shift) % mod for index in block)) for mod, block in zip(moduli, sets))
        if best is None or cand < best:
            best = cand
            best_shift = shift
    return best, best_shift


def tuple_stabilizer(tower: GroupTower, directions: tuple, sets: tuple) -> int:
    best = 0
    for level in range(1, tower.n + 1):
        if _shift_tuple(tower, directions, sets, tower.generator(level)) == sets:
            best = level
        else:
            break
    return best


def fibre_vector(tower: GroupTower, gen_level: int, direction: int, index: int) -> tuple:
    """Underlying exponent vector of the norm from the generator level to ``direction`` of x^{(index)}."""
    size = tower.index(gen_level)
    mod = tower.index(direction)
    return tuple(1 if point % mod == index else 0 for point in range(size))


def denominator(tower: GroupTower, gen_level: int, directions: tuple, sets: tuple) -> tuple:
    size = tower.index(gen_level)
    members = [(tower.index(direction), set(block)) for direction, block in zip(directions, sets)]
    out = []
    for point in range(size):
        count = sum(1 for mod, block in members if point % mod in block)
        out.append(max(0, count - 1))
    return tuple(out)


def generator_label(tower: GroupTower, directions: tuple, sets: tuple, den: tuple) -> str:
    factors = []
    for axis, (direction, block) in enumerate(zip(directions, sets)):
        letter = DIRECTION_LETTERS[axis] if axis < len(DIRECTION_LETTERS) else f"y{axis}"
        if tower.index(direction) == 1:
            factors += [letter for _ in block]
        else:
            factors += [f"{letter}^({index})" for index in block]
    body = "∧".join(factors) if factors else "1"
    if any(den):
        parts = []
        for index, power in enumerate(den):
            if power == 1:
                parts.append(f"x^({index})")
            elif power > 1:
                parts.append(f"(x^({index}))^{power}")
        body += "/" + "".join(parts)
    return body


@dataclass(frozen=True)
class CellGenerator:
    sets: tuple
    level: int
    degree: int
    den: tuple
    label: str


def _generator_degree(tower: GroupTower, gen_level: int, directions: tuple, sets: tuple, den: tuple) -> int:
    p = tower.p
    return sum(p ** (direction - gen_level) * len(block) for direction, block in zip(directions, sets)) - sum(den)


def enumerate_cell(tower: GroupTower, gen_level: int, directions: tuple, multideg: tuple) -> list[CellGenerator]:
    """One canonical representative per G-orbit of tuples of index sets."""
    choices = [list(combinations(range(tower.index(direction)), size)) for direction, size in zip(directions, multideg)]
    reps = set()
    for sets in product(*choices):
        canon, _ = canonical_tuple(tower, directions, sets)
        reps.add(canon)
    out = []
    for sets in sorted(reps):
        level = tuple_stabilizer(tower, directions, sets)
        den = denominator(tower, gen_level, directions, sets)
        degree = _generator_degree(tower, gen_level, directions, sets, den)
        out.append(CellGenerator(sets, level, degree, den, generator_label(tower, directions, sets, den)))
    return out


def _check_even_stabilizer(tower: GroupTower, directions: tuple, gen: CellGenerator):
    if gen.level == 0:
        return
    shift = tower.generator(gen.level)
    moved = _shift_ordered(tower, directions, gen.sets, shift)
    if tuple_sign(moved) != 1:
        raise BuildError(f"stabilizer acts by an odd permutation on {gen.label}")


def lift_differential(
    tower: GroupTower,
    gen_level: int,
    directions: tuple,
    axis: int,
    gen: CellGenerator,
    target: FreeModule,
    target_index: dict,
    coefficient_rule,
) -> FreeModElem:
    """Image at the generator's level of the Koszul differential along ``axis``.

    ``coefficient_rule(smaller, removed)`` returns the exponent vector of the
    monomial multiplying the face obtained by deleting ``removed``.  The
    underlying alternating sum over removed indices is lifted to the level of
    the generator by grouping those indices into orbits of the stabilizer; a
    nontrivial orbit contributes a transfer.
    """
    p, n = tower.p, tower.n
    level = gen.level
    direction = directions[axis]
    modulus = tower.index(direction)
    block = gen.sets[axis]
    sub_level = min(level, direction)
    step = tower.generator(level) if level > 0 else 0
    orbit_size = p ** (level - sub_level)
    terms: dict = {}
    for pos, removed in enumerate(block):
        orbit = {(removed + lap * step) % modulus for lap in range(orbit_size)}
        if removed != min(orbit):
            continue
        smaller = tuple(
            tuple(index for index in other_block if index != removed) if idx == axis else other_block for idx, other_block in enumerate(gen.sets)
        )
        coef = coefficient_rule(smaller, removed)
        if min(coef, default=0) < 0:
            raise BuildError(f"negative coefficient exponent deleting {removed} from {gen.label}")
        canon, shift = canonical_tuple(tower, directions, smaller)
        g2 = target_index[canon]
        r2 = -shift
        shifted = _shift_ordered(tower, directions, canon, r2)
        sign = (-1) ** pos * tuple_sign(shifted)
        cv, cr = target.canonical(level, coef, g2, r2)
        key = (cv, g2, cr, sub_level)
        terms[key] = terms.get(key, 0) + sign
    return FreeModElem(target, level, terms)


# --------------------------------------------------------------------------
# General construction
# --------------------------------------------------------------------------


def _validate(p: int, n: int, gen_level: int) -> GroupTower:
    tower = GroupTower(p, n)
    tower.check(gen_level)
    if p == 2 and gen_level < n:
        raise BuildError("p = 2 is only supported with the fixed generator (m = n): wedge signs break d^2 = 0")
    return tower


def build_general(p: int, n: int, gen_level: int = 0) -> MultiComplex:
    """The multicomplex of free R-modules over R = A[x_{G/C_{p^gen_level}}], one direction per exponent from gen_level to n."""
    tower = _validate(p, n, gen_level)
    directions = tuple(range(gen_level, n + 1))
    shape = tuple(tower.index(direction) for direction in directions)
    cells_gens: dict = {}
    cells: dict = {}
    for multideg in product(*(range(size + 1) for size in shape)):
        gens = enumerate_cell(tower, gen_level, directions, multideg)
        cells_gens[multideg] = gens
        cells[multideg] = FreeModule(
            tower, gen_level, [Generator(entry.label, entry.level, entry.degree, entry.den) for entry in gens], name=str(multideg)
        )
    mc = MultiComplex(tower, gen_level, directions, shape, cells, {}, name=f"K(p={p}, n={n}, m={gen_level})")

    def rule_for(axis):
        direction = directions[axis]

        def rule(smaller, removed, gen_sets):
            fibre = fibre_vector(tower, gen_level, direction, removed)
            den_small = denominator(tower, gen_level, directions, smaller)
            den_big = denominator(tower, gen_level, directions, gen_sets)
            return tuple(fibre_exp + small_exp - big_exp for fibre_exp, small_exp, big_exp in zip(fibre, den_small, den_big))

        return rule

    for multideg, gens in cells_gens.items():
        for axis in range(len(directions)):
            if multideg[axis] == 0:
                continue
            lower = _step(multideg, axis, -1)
            target = cells[lower]
            target_index = {entry.sets: index for index, entry in enumerate(cells_gens[lower])}
            base_rule = rule_for(axis)
            images = []
            for gen in gens:
                _check_even_stabilizer(tower, directions, gen)
                images.append(
                    lift_differential(
                        tower, gen_level, directions, axis, gen, target, target_index,
                        lambda smaller, removed, cell_gen=gen: base_rule(smaller, removed, cell_gen.sets),
                    )
                )
            mc.diffs[(multideg, axis)] = RModHom(cells[multideg], target, images, name=f"d{axis}{multideg}")
    return mc


def totalize(mc: MultiComplex) -> ChainComplex:
    """Total complex; the component along ``axis`` at a multidegree carries the
    sign (-1) raised to the sum of the earlier coordinates."""
    length = sum(mc.shape)
    by_degree: dict[int, list] = {total: [] for total in range(length + 1)}
    for multideg in mc.multidegrees():
        by_degree[sum(multideg)].append(multideg)
    modules = []
    offsets: dict = {}
    for total in range(length + 1):
        gens = []
        for multideg in by_degree[total]:
            offsets[multideg] = len(gens)
            for cell_gen in mc.cells[multideg].generators:
                gens.append(Generator(f"{multideg}:{cell_gen.label}", cell_gen.level, cell_gen.degree, cell_gen.denominator))
        modules.append(FreeModule(mc.tower, mc.gen_level, gens, name=f"Tot_{total}"))
    diffs = {}
    for total in range(1, length + 1):
        source = modules[total]
        target = modules[total - 1]
        images = []
        for multideg in by_degree[total]:
            for g_idx, gen in enumerate(mc.cells[multideg].generators):
                acc: dict = {}
                for axis in range(len(mc.directions)):
                    hom = mc.diffs.get((multideg, axis))
                    if hom is None:
                        continue
                    sign = (-1) ** sum(multideg[:axis])
                    off = offsets[_step(multideg, axis, -1)]
                    for (exponents, g2, r2, j2), coeff in hom.images[g_idx].terms.items():
                        key = (exponents, g2 + off, r2, j2)
                        new = acc.get(key, 0) + sign * coeff
                        if new:
                            acc[key] = new
                        else:
                            acc.pop(key, None)
                images.append(FreeModElem(target, gen.level, acc))
        diffs[total] = RModHom(source, target, images, name=f"d_{total}")
    cc = ChainComplex(modules, diffs, name=f"Tot {mc.name}")
    cc.cell_offsets = offsets
    cc.cell_degrees = by_degree
    return cc


# --------------------------------------------------------------------------
# Literal constructions for C_p
# --------------------------------------------------------------------------


def _cp_setup(p: int):
    if p == 2:
        raise BuildError("p = 2 is rejected: commuting wedge factors introduces a sign")
    tower = GroupTower(p, 1)
    reps = {size: wedge_orbit_decomposition(tower, 0, size)[1] for size in range(1, p)}
    return tower, reps


def _cp_face(tower: GroupTower, subset: tuple, drop: int, reps_lower: dict) -> tuple[int, int, int]:
    """Index, shift and sign expressing z^{subset - drop} through a canonical generator."""
    smaller = tuple(index for index in subset if index != drop)
    canon = canonical_subset(tower, 0, smaller)
    for shift in range(tower.order):
        shifted = tuple((index + shift) % tower.order for index in canon)
        if tuple(sorted(shifted)) == smaller:
            return reps_lower[canon], shift, permutation_sign(shifted)
    raise BuildError("face is not a translate of its canonical representative")


def _unit_vector(p: int, index: int) -> tuple:
    return tuple(1 if position == index % p else 0 for position in range(p))


def build_cp_lift(p: int) -> ChainComplex:
    """R in position 0, then free modules on orbit representatives of subsets of each size at level e, then R{N} at the top."""
    tower, reps = _cp_setup(p)
    full = tuple(range(p))
    zero = (0,) * p
    mods = [FreeModule(tower, 0, [Generator("1", 1, 0, zero)], name="K_0")]
    for size in range(1, p):
        gens = [Generator(generator_label(tower, (0, 1), (rep.index_set, ()), zero), 0, size, zero) for rep in reps[size]]
        mods.append(FreeModule(tower, 0, gens, name=f"K_{size}"))
    mods.append(FreeModule(tower, 0, [Generator(generator_label(tower, (0, 1), (full, ()), zero), 1, p, zero)], name=f"K_{p}"))
    diffs = {}
    index = {size: {rep.index_set: coset for coset, rep in enumerate(reps[size])} for size in range(1, p)}
    # d_1: z^{(i)} -> x^{(i)}
    images = []
    for rep in reps[1]:
        (coset,) = rep.index_set
        images.append(FreeModElem(mods[0], 0, {(_unit_vector(p, coset), 0, 0, 0): 1}))
    diffs[1] = RModHom(mods[1], mods[0], images, name="d_1")
    for size in range(2, p):
        images = []
        for rep in reps[size]:
            terms: dict = {}
            for pos, coset in enumerate(rep.index_set):
                g2, shift, sgn = _cp_face(tower, rep.index_set, coset, index[size - 1])
                key = (_unit_vector(p, coset), g2, shift % p, 0)
                terms[key] = terms.get(key, 0) + (-1) ** pos * sgn
            images.append(FreeModElem(mods[size - 1], 0, terms))
        diffs[size] = RModHom(mods[size], mods[size - 1], images, name=f"d_{size}")
    # d_p: N -> tr_e^{C_p}(x^{(p-1)} z^{(0..p-2)})
    top = index[p - 1][tuple(range(p - 1))]
    cv, cr = mods[p - 1].canonical(1, _unit_vector(p, p - 1), top, 0)
    diffs[p] = RModHom(mods[p], mods[p - 1], [FreeModElem(mods[p - 1], 1, {(cv, top, cr, 0): 1})], name=f"d_{p}")
    return ChainComplex(mods, diffs, name=f"lift K for C{p}")


def build_cp_divided(p: int) -> ChainComplex:
    """The n-divided complex: u, z^I u / x^I, N u / n, all differentials with unit coefficients."""
    tower, reps = _cp_setup(p)
    full = tuple(range(p))
    zero = (0,) * p

    def label(subset):
        den = tuple(1 if coset in subset else 0 for coset in range(p))
        return generator_label(tower, (0, 1), (subset, (0,)), den)

    mods = [FreeModule(tower, 0, [Generator(label(()), 1, p, zero)], name="Kdiv_0")]
    for size in range(1, p):
        gens = [Generator(label(rep.index_set), 0, p, tuple(1 if coset in rep.index_set else 0 for coset in range(p))) for rep in reps[size]]
        mods.append(FreeModule(tower, 0, gens, name=f"Kdiv_{size}"))
    mods.append(FreeModule(tower, 0, [Generator(label(full), 1, p, (1,) * p)], name=f"Kdiv_{p}"))
    index = {size: {rep.index_set: coset for coset, rep in enumerate(reps[size])} for size in range(1, p)}
    diffs = {}
    diffs[1] = RModHom(mods[1], mods[0], [FreeModElem(mods[0], 0, {(zero, 0, 0, 0): 1}) for _ in reps[1]], name="ddiv_1")
    for size in range(2, p):
        images = []
        for rep in reps[size]:
            terms: dict = {}
            for pos, coset in enumerate(rep.index_set):
                g2, shift, sgn = _cp_face(tower, rep.index_set, coset, index[size - 1])
                key = (zero, g2, shift % p, 0)
                terms[key] = terms.get(key, 0) + (-1) ** pos * sgn
            images.append(FreeModElem(mods[size - 1], 0, terms))
        diffs[size] = RModHom(mods[size], mods[size - 1], images, name=f"ddiv_{size}")
    top = index[p - 1][tuple(range(p - 1))]
    diffs[p] = RModHom(mods[p], mods[p - 1], [FreeModElem(mods[p - 1], 1, {(zero, top, 0, 0): 1})], name=f"ddiv_{p}")
    return ChainComplex(mods, diffs, name=f"divided K for C{p}")


def build_cp_comparison(p: int, lift: ChainComplex, divided: ChainComplex) -> dict:
    """Comparison map from the divided complex to the lift, sending z^I u / x^I to x^{complement of I} z^I."""
    tower, reps = _cp_setup(p)
    maps = {}
    norm = (1,) * p
    maps[0] = RModHom(divided.modules[0], lift.modules[0], [FreeModElem(lift.modules[0], 1, {(norm, 0, 0, 1): 1})], name="f_0")
    for size in range(1, p):
        images = []
        for gen_index, rep in enumerate(reps[size]):
            comp = tuple(0 if coset in rep.index_set else 1 for coset in range(p))
            images.append(FreeModElem(lift.modules[size], 0, {(comp, gen_index, 0, 0): 1}))
        maps[size] = RModHom(divided.modules[size], lift.modules[size], images, name=f"f_{size}")
    maps[p] = RModHom(divided.modules[p], lift.modules[p], [lift.modules[p].gen(0)], name=f"f_{p}")
    return maps


def cp_grid(p: int) -> MultiComplex:
    """Two-row grid: row 0 the lift, row 1 the divided complex, vertical maps f."""
    tower, _ = _cp_setup(p)
    lift = build_cp_lift(p)
    divided = build_cp_divided(p)
    comparison = build_cp_comparison(p, lift, divided)
    cells = {}
    diffs = {}
    for position in range(p + 1):
        cells[(position, 0)] = lift.modules[position]
        cells[(position, 1)] = divided.modules[position]
        if position >= 1:
            diffs[((position, 0), 0)] = lift.differentials[position]
            diffs[((position, 1), 0)] = divided.differentials[position]
        diffs[((position, 1), 1)] = comparison[position]
    return MultiComplex(tower, 0, (0, 1), (p, 1), cells, diffs, name=f"cone grid C{p}")


def build_cp_cone(p: int) -> ChainComplex:
    """Mapping cone of f: K^div -> K, as the total complex of the two-row grid."""
    return totalize(cp_grid(p))


def build_green_fixed(p: int, n: int = 1) -> ChainComplex:
    """Resolution of A over A[x_{G/G}]: 0 <- R <- R{z} with z -> x."""
    return totalize(build_general(p, n, n))


# --------------------------------------------------------------------------
# Literal construction for C_9
# --------------------------------------------------------------------------


def build_c9_tricomplex() -> MultiComplex:
    """The 10 x 4 x 2 grid over A[x_{C9/e}] with incidence-set denominators.

    Generators are found from the orbit decompositions of the wedge factors;
    the denominator of z^I u^J v^t is x^{Inc(I, J)} when t = 0 and
    x^I res(nm(x^J)) when t = 1.
    """
    tower = GroupTower(3, 2)
    directions = (0, 1, 2)
    shape = (9, 3, 1)
    cells: dict = {}
    gen_lists: dict = {}
    for z_size, u_size, v_size in product(range(10), range(4), range(2)):
        _, zreps = wedge_orbit_decomposition(tower, 0, z_size)
        _, ureps = wedge_orbit_decomposition(tower, 1, u_size)
        if z_size == 0:
            zsets = [()]
        else:
            zsets = [rep.index_set for rep in zreps]
        usets = [()] if u_size == 0 else [rep.index_set for rep in ureps]
        vset = (0,) if v_size else ()
        found = set()
        for zi in zsets:
            for uj in usets:
                # Orbits of the product: translate the second factor by
                # coset representatives of the first factor's stabilizer.
                for shift in range(9):
                    shifted = tuple(sorted((coset + shift) % 3 for coset in uj))
                    canon, _ = canonical_tuple(tower, directions, (zi, shifted, vset))
                    found.add(canon)
        gens = []
        for sets in sorted(found):
            zi, uj, vs = sets
            inc = incidence_set(tower, 0, zi, uj)
            if vs:
                den = tuple((1 if coset in zi else 0) + (1 if coset % 3 in uj else 0) for coset in range(9))
            else:
                den = tuple(1 if coset in inc else 0 for coset in range(9))
            level = tuple_stabilizer(tower, directions, sets)
            degree = len(zi) + 3 * len(uj) + 9 * len(vs) - sum(den)
            gens.append(CellGenerator(sets, level, degree, den, generator_label(tower, directions, sets, den)))
        gen_lists[(z_size, u_size, v_size)] = gens
        cells[(z_size, u_size, v_size)] = FreeModule(
            tower, 0, [Generator(entry.label, entry.level, entry.degree, entry.den) for entry in gens], name=str((z_size, u_size, v_size))
        )
    mc = MultiComplex(tower, 0, directions, shape, cells, {}, name="C9 tricomplex")
    norms = {
        0: lambda removed: tuple(1 if coset == removed else 0 for coset in range(9)),
        1: lambda removed: tuple(1 if coset % 3 == removed else 0 for coset in range(9)),
        2: lambda removed: (1,) * 9,
    }
    for multideg, gens in gen_lists.items():
        for axis in range(3):
            if multideg[axis] == 0:
                continue
            lower = _step(multideg, axis, -1)
            target_index = {entry.sets: coset for coset, entry in enumerate(gen_lists[lower])}
            lower_den = {entry.sets: entry.den for entry in gen_lists[lower]}
            images = []
            for gen in gens:

                def rule(smaller, removed, gen=gen, axis=axis):
                    canon, _ = canonical_tuple(tower, directions, smaller)
                    s_den = _translate_den(lower_den[canon], canon, smaller, tower)
                    return tuple(norm_exp + lower_exp - gen_exp for norm_exp, lower_exp, gen_exp in zip(norms[axis](removed), s_den, gen.den))

                images.append(lift_differential(tower, 0, directions, axis, gen, cells[lower], target_index, rule))
            mc.diffs[(multideg, axis)] = RModHom(cells[multideg], cells[lower], images, name=f"d{axis}{multideg}")
    return mc


def _translate_den(den: tuple, canon: tuple, actual: tuple, tower: GroupTower) -> tuple:
    """Denominator of a translate of a canonical generator."""
    directions = (0, 1, 2)
    for shift in range(tower.order):
        if _shift_tuple(tower, directions, canon, shift) == actual:
            return tuple(den[(index - shift) % len(den)] for index in range(len(den)))
    raise BuildError("not a translate")


# --------------------------------------------------------------------------
# Cell-by-cell comparison
# --------------------------------------------------------------------------


def compare_modules(first: FreeModule, second: FreeModule) -> list[str]:
    diffs = []
    first_data = {gen.label: (gen.level, gen.degree, tuple(gen.denominator)) for gen in first.generators}
    second_data = {gen.label: (gen.level, gen.degree, tuple(gen.denominator)) for gen in second.generators}
    if first_data != second_data:
        only_first = sorted(set(first_data) - set(second_data))
        only_second = sorted(set(second_data) - set(first_data))
        mismatched = sorted(label for label in set(first_data) & set(second_data) if first_data[label] != second_data[label])
        diffs.append(f"{first.name}: generators differ (only first {only_first[:3]}, only second {only_second[:3]}, data {mismatched[:3]})")
    return diffs


def _relabel(elem: FreeModElem, module: FreeModule) -> dict:
    out = {}
    for (exponents, gen, shift, sub), coeff in elem.terms.items():
        out[(exponents, elem.module.generators[gen].label, shift, sub)] = coeff
    return out


def compare_homs(first: RModHom, second: RModHom) -> list[str]:
    diffs = compare_modules(first.source, second.source) + compare_modules(first.target, second.target)
    if diffs:
        return diffs
    index = {gen.label: position for position, gen in enumerate(second.source.generators)}
    for gen, img in zip(first.source.generators, first.images):
        other = second.images[index[gen.label]]
        if _relabel(img, first.target) != _relabel(other, second.target):
            diffs.append(f"{first.name}: image of {gen.label} differs")
    return diffs


def compare_multicomplexes(first: MultiComplex, second: MultiComplex) -> list[str]:
    diffs = []
    if set(first.cells) != set(second.cells):
        return ["cell supports differ"]
    for multideg in first.multidegrees():
        diffs += compare_modules(first.cells[multideg], second.cells[multideg])
    if set(first.diffs) != set(second.diffs):
        return diffs + ["differential supports differ"]
    for key in sorted(first.diffs):
        diffs += compare_homs(first.diffs[key], second.diffs[key])
    return diffs
