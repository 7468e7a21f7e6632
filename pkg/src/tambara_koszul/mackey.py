"""Finitely generated Mackey functors for C_{p^n} in normalized form.

A presentation stores, for each level (the orbit G/C_{p^level}), a cyclic
decomposition of the group as a list of orders (0 meaning Z) and integer
matrices for restriction to the level below, transfer from the level below
and the action of the group generator on the level itself.  Matrices act on coordinate columns and are
reduced modulo the target orders.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from sympy import factorint

from .freemod import FreeModElem, FreeModule, Generator
from .intmat import (
    SparseIntMatrix,
    hermite_rows,
    kernel_basis,
    quotient_invariants,
    snf,
    solve_hermite,
    IntegerSolver,
    solve_integer,
    vec_add,
)
from .lattice import GSet, GroupTower

SCHEMA_NAME = "tambara-koszul/mackey-presentation"
SCHEMA_VERSION = 1


# --------------------------------------------------------------------------
# Dense matrix helpers
# --------------------------------------------------------------------------


def mat_zero(rows: int, cols: int) -> list:
    return [[0] * cols for _ in range(rows)]


def mat_identity(size: int) -> list:
    return [[1 if row_index == col else 0 for col in range(size)] for row_index in range(size)]


def mat_mul(left: list, right: list) -> list:
    if not left:
        return []
    cols = len(right[0]) if right else 0
    out = [[0] * cols for _ in range(len(left))]
    for row_index, row in enumerate(left):
        acc = out[row_index]
        for inner, left_entry in enumerate(row):
            if left_entry:
                for col, right_entry in enumerate(right[inner]):
                    if right_entry:
                        acc[col] += left_entry * right_entry
    return out


def mat_add(left: list, right: list, scale: int = 1) -> list:
    return [[left_entry + scale * right_entry for left_entry, right_entry in zip(left_row, right_row)] for left_row, right_row in zip(left, right)]


def mat_power(matrix: list, exponent: int) -> list:
    size = len(matrix)
    out = mat_identity(size)
    base = matrix
    while exponent:
        if exponent & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        exponent >>= 1
    return out


def reduce_rows(mat: list, orders: list) -> list:
    return [[entry % order if order else entry for entry in row] for row, order in zip(mat, orders)]


def mat_columns(mat: list, ncols: int) -> list[dict]:
    cols = [dict() for _ in range(ncols)]
    for row_index, row in enumerate(mat):
        for col, entry in enumerate(row):
            if entry:
                cols[col][row_index] = entry
    return cols


def dense_from_columns(columns: list[dict], nrows: int) -> list:
    out = mat_zero(nrows, len(columns))
    for col_index, col in enumerate(columns):
        for row_index, entry in col.items():
            out[row_index][col_index] = entry
    return out


def to_sparse(mat: list, nrows: int, ncols: int) -> SparseIntMatrix:
    return SparseIntMatrix(nrows, ncols, [{col: entry for col, entry in enumerate(row) if entry} for row in mat])


def apply_dense(mat: list, vec: list) -> list:
    return [sum(entry * coord for entry, coord in zip(row, vec)) for row in mat]


def group_name(orders: list) -> str:
    if not orders:
        return "0"
    free = sum(1 for order in orders if order == 0)
    parts = []
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    torsion = Counter(order for order in orders if order)
    for order in sorted(torsion):
        mult = torsion[order]
        parts.append(f"Z/{order}" if mult == 1 else f"(Z/{order})^{mult}")
    return " + ".join(parts)


# --------------------------------------------------------------------------
# Presentations
# --------------------------------------------------------------------------


@dataclass
class MackeyPresentation:
    tower: GroupTower
    orders: list
    res: dict
    tr: dict
    weyl: dict
    name: str = ""

    def __post_init__(self):
        n = self.tower.n
        if len(self.orders) != n + 1:
            raise ValueError("need one order list per level")
        self.orders = [list(level_orders) for level_orders in self.orders]
        for level in range(1, n + 1):
            self.res[level] = reduce_rows(self.res[level], self.orders[level - 1])
            self.tr[level] = reduce_rows(self.tr[level], self.orders[level])
        for level in range(n + 1):
            self.weyl[level] = reduce_rows(self.weyl[level], self.orders[level])

    def rank(self, level: int) -> int:
        return len(self.orders[level])

    def is_zero(self) -> bool:
        return not any(self.orders)

    def level_names(self) -> list[str]:
        return [group_name(level_orders) for level_orders in self.orders]

    def relation_vectors(self, level: int) -> list[dict]:
        return [{index: order} for index, order in enumerate(self.orders[level]) if order]

    def map_matrix(self, kind: str, level: int) -> list:
        return {"res": self.res, "tr": self.tr, "weyl": self.weyl}[kind][level]

    def res_between(self, frm: int, to: int) -> list:
        out = mat_identity(self.rank(frm))
        for level in range(frm, to, -1):
            out = mat_mul(self.res[level], out)
        return reduce_rows(out, self.orders[to])

    def tr_between(self, frm: int, to: int) -> list:
        out = mat_identity(self.rank(frm))
        for level in range(frm + 1, to + 1):
            out = mat_mul(self.tr[level], out)
        return reduce_rows(out, self.orders[to])

    def weyl_power(self, level: int, exponent: int) -> list:
        period = self.tower.index(level)
        return reduce_rows(mat_power(self.weyl[level], exponent % period), self.orders[level])

    def _column_form(self, kind: str, level: int) -> list:
        cache = self.__dict__.setdefault("_column_cache", {})
        key = (kind, level)
        if key not in cache:
            mat = self.map_matrix(kind, level)
            ncols = self.rank(level - 1) if kind == "tr" else self.rank(level)
            cache[key] = mat_columns(mat, ncols)
        return cache[key]

    def _apply(self, kind: str, level: int, vec: dict, target_level: int) -> dict:
        cols = self._column_form(kind, level)
        out: dict = {}
        for col, coord in vec.items():
            for row_index, entry in cols[col].items():
                out[row_index] = out.get(row_index, 0) + coord * entry
        orders = self.orders[target_level]
        return {row_index: (coord % orders[row_index] if orders[row_index] else coord) for row_index, coord in out.items() if (coord % orders[row_index] if orders[row_index] else coord)}

    def move(self, vec: dict, start: int, shift: int, via: int, level: int) -> dict:
        """tr_via^level res^start_via weyl^shift applied to a sparse vector at level start."""
        for _ in range(shift % self.tower.index(start)):
            vec = self._apply("weyl", start, vec, start)
        for step in range(start, via, -1):
            vec = self._apply("res", step, vec, step - 1)
        for step in range(via + 1, level + 1):
            vec = self._apply("tr", step, vec, step)
        return vec

    def reduce_vec(self, level: int, vec: list) -> list:
        return [entry % order if order else entry for entry, order in zip(vec, self.orders[level])]

    # ------------------------------------------------------------ output
    def to_json(self) -> dict:
        levels = []
        for level in range(self.tower.n, -1, -1):
            levels.append(
                {
                    "exponent": level,
                    "subgroup": self.tower.name(level),
                    "orders": list(self.orders[level]),
                    "group": group_name(self.orders[level]),
                    "weyl": self.weyl[level],
                }
            )
        return {
            "schema": SCHEMA_NAME,
            "version": SCHEMA_VERSION,
            "name": self.name,
            "group": {"p": self.tower.p, "n": self.tower.n},
            "levels": levels,
            "res": [{"from": level, "to": level - 1, "matrix": self.res[level]} for level in range(self.tower.n, 0, -1)],
            "tr": [{"from": level - 1, "to": level, "matrix": self.tr[level]} for level in range(self.tower.n, 0, -1)],
        }

    @staticmethod
    def from_json(data: dict) -> "MackeyPresentation":
        if data.get("schema") != SCHEMA_NAME:
            raise ValueError("not a Mackey presentation document")
        tower = GroupTower(data["group"]["p"], data["group"]["n"])
        orders = [None] * (tower.n + 1)
        weyl = {}
        for lvl in data["levels"]:
            orders[lvl["exponent"]] = lvl["orders"]
            weyl[lvl["exponent"]] = lvl["weyl"]
        res = {item["from"]: item["matrix"] for item in data["res"]}
        tr = {item["to"]: item["matrix"] for item in data["tr"]}
        return MackeyPresentation(tower, orders, res, tr, weyl, name=data.get("name", ""))

    def lewis(self) -> str:
        """Plain-text Lewis diagram: levels top-down with structure maps."""
        lines = []
        for level in range(self.tower.n, -1, -1):
            lines.append(f"{self.tower.orbit_name(level):>8}: {group_name(self.orders[level])}")
            if self.orders[level] and level < self.tower.n and any(
                self.weyl[level][row_index][col] != (1 if row_index == col else 0) for row_index in range(self.rank(level)) for col in range(self.rank(level))
            ):
                lines.append(f"{'':>10}weyl = {self.weyl[level]}")
            if level > 0:
                lines.append(f"{'':>10}res {self.tower.name(level)}->{self.tower.name(level - 1)} = {self.res[level]}")
                lines.append(f"{'':>10}tr  {self.tower.name(level - 1)}->{self.tower.name(level)} = {self.tr[level]}")
        return "\n".join(lines)


def zero_presentation(tower: GroupTower, name: str = "0") -> MackeyPresentation:
    n = tower.n
    return MackeyPresentation(
        tower,
        [[] for _ in range(n + 1)],
        {level: [] for level in range(1, n + 1)},
        {level: [] for level in range(1, n + 1)},
        {level: [] for level in range(n + 1)},
        name=name,
    )


def _block_diag(blocks: list, row_sizes: list, col_sizes: list) -> list:
    out = mat_zero(sum(row_sizes), sum(col_sizes))
    row_offset = 0
    col_offset = 0
    for block, row_size, col_size in zip(blocks, row_sizes, col_sizes):
        for row_index in range(row_size):
            for col in range(col_size):
                out[row_offset + row_index][col_offset + col] = block[row_index][col]
        row_offset += row_size
        col_offset += col_size
    return out


def direct_sum(parts: list, name: str = "") -> MackeyPresentation:
    parts = list(parts)
    if not parts:
        raise ValueError("direct sum of nothing needs a tower; use zero_presentation")
    tower = parts[0].tower
    n = tower.n
    orders = [sum((list(part.orders[level]) for part in parts), []) for level in range(n + 1)]
    res = {}
    tr = {}
    weyl = {}
    for level in range(1, n + 1):
        res[level] = _block_diag([part.res[level] for part in parts], [part.rank(level - 1) for part in parts], [part.rank(level) for part in parts])
        tr[level] = _block_diag([part.tr[level] for part in parts], [part.rank(level) for part in parts], [part.rank(level - 1) for part in parts])
    for level in range(n + 1):
        weyl[level] = _block_diag([part.weyl[level] for part in parts], [part.rank(level) for part in parts], [part.rank(level) for part in parts])
    return MackeyPresentation(tower, orders, res, tr, weyl, name=name or " + ".join(part.name for part in parts))


# --------------------------------------------------------------------------
# Axioms
# --------------------------------------------------------------------------


def _equal_mod(left: list, right: list, orders: list) -> bool:
    """Entrywise congruence; rows missing entries (empty inner dimension) count as zero."""
    for row_index, order in enumerate(orders):
        row_a = left[row_index] if row_index < len(left) else []
        row_b = right[row_index] if row_index < len(right) else []
        for col in range(max(len(row_a), len(row_b))):
            diff = (row_a[col] if col < len(row_a) else 0) - (row_b[col] if col < len(row_b) else 0)
            if (diff % order if order else diff) != 0:
                return False
    return True


def _well_defined(mat: list, src: list, tgt: list) -> bool:
    for col, order in enumerate(src):
        if not order:
            continue
        for row_index, target_order in enumerate(tgt):
            image = order * mat[row_index][col]
            if (image % target_order if target_order else image) != 0:
                return False
    return True


def check_axioms(functor: MackeyPresentation) -> list[str]:
    """Violated identities, named; an empty list means the data is a Mackey functor."""
    bad = []
    tower = functor.tower
    n, p = tower.n, tower.p
    for level in range(n + 1):
        rank = functor.rank(level)
        weyl = functor.weyl[level]
        if len(weyl) != rank or any(len(row) != rank for row in weyl):
            bad.append(f"weyl_{level} has the wrong shape")
            return bad
    for level in range(1, n + 1):
        if len(functor.res[level]) != functor.rank(level - 1) or any(len(map_row) != functor.rank(level) for map_row in functor.res[level]):
            bad.append(f"res_{level} has the wrong shape")
            return bad
        if len(functor.tr[level]) != functor.rank(level) or any(len(map_row) != functor.rank(level - 1) for map_row in functor.tr[level]):
            bad.append(f"tr_{level} has the wrong shape")
            return bad
    for level in range(n + 1):
        if not _well_defined(functor.weyl[level], functor.orders[level], functor.orders[level]):
            bad.append(f"weyl_{level} does not respect relations")
        period = tower.index(level)
        if not _equal_mod(mat_power(functor.weyl[level], period), mat_identity(functor.rank(level)), functor.orders[level]):
            bad.append(f"weyl_{level}^{period} != id")
    if not _equal_mod(functor.weyl[n], mat_identity(functor.rank(n)), functor.orders[n]):
        bad.append("weyl acts nontrivially on the top level")
    for level in range(1, n + 1):
        lower = level - 1
        if not _well_defined(functor.res[level], functor.orders[level], functor.orders[lower]):
            bad.append(f"res_{level} does not respect relations")
        if not _well_defined(functor.tr[level], functor.orders[lower], functor.orders[level]):
            bad.append(f"tr_{level} does not respect relations")
        if not _equal_mod(mat_mul(functor.res[level], functor.weyl[level]), mat_mul(functor.weyl[lower], functor.res[level]), functor.orders[lower]):
            bad.append(f"res_{level} is not Weyl equivariant")
        if not _equal_mod(mat_mul(functor.tr[level], functor.weyl[lower]), mat_mul(functor.weyl[level], functor.tr[level]), functor.orders[level]):
            bad.append(f"tr_{level} is not Weyl equivariant")
        inner = mat_power(functor.weyl[lower], p ** (n - level))
        if not _equal_mod(mat_mul(inner, functor.res[level]), functor.res[level], functor.orders[lower]):
            bad.append(f"image of res_{level} is not fixed by C_{p}^{level}")
        if not _equal_mod(mat_mul(functor.tr[level], inner), functor.tr[level], functor.orders[level]):
            bad.append(f"tr_{level} is not invariant under C_{p}^{level}")
        total = mat_zero(functor.rank(lower), functor.rank(lower))
        power = mat_identity(functor.rank(lower))
        for _ in range(p):
            total = mat_add(total, power)
            power = mat_mul(inner, power)
        if not _equal_mod(mat_mul(functor.res[level], functor.tr[level]), total, functor.orders[lower]):
            bad.append(f"double coset formula res_{level} tr_{level} fails")
    return bad


# --------------------------------------------------------------------------
# Subquotients of lattices with structure maps
# --------------------------------------------------------------------------


@dataclass
class Ambient:
    """Free abelian groups of the given ranks, one per level, with sparse structure matrices."""

    tower: GroupTower
    ranks: list
    res: dict
    tr: dict
    weyl: dict


def ambient_of_module(module: FreeModule, degree: int | None = None) -> Ambient:
    """Structure matrices of a free module on its level bases."""
    tower = module.tower
    n = tower.n
    bases = [module.basis(level, degree) for level in range(n + 1)]
    index = [module.basis_index(level, degree) for level in range(n + 1)]
    res, tr, weyl = {}, {}, {}
    for level in range(n + 1):
        cols = []
        for key in bases[level]:
            cols.append({index[level][module.weyl_key(key, level, 1)]: 1})
        weyl[level] = SparseIntMatrix.from_columns(cols, len(bases[level]))
    for level in range(1, n + 1):
        cols = []
        for key in bases[level]:
            col: dict = {}
            for image_key, coeff in module.res_key(key, level, level - 1).items():
                col[index[level - 1][image_key]] = col.get(index[level - 1][image_key], 0) + coeff
            cols.append(col)
        res[level] = SparseIntMatrix.from_columns(cols, len(bases[level - 1]))
        cols = []
        for key in bases[level - 1]:
            cols.append({index[level][module.tr_key(key, level)]: 1})
        tr[level] = SparseIntMatrix.from_columns(cols, len(bases[level]))
    return Ambient(tower, [len(basis) for basis in bases], res, tr, weyl)


def ambient_of_presentation(functor: MackeyPresentation) -> Ambient:
    n = functor.tower.n
    res = {level: to_sparse(functor.res[level], functor.rank(level - 1), functor.rank(level)) for level in range(1, n + 1)}
    tr = {level: to_sparse(functor.tr[level], functor.rank(level), functor.rank(level - 1)) for level in range(1, n + 1)}
    weyl = {level: to_sparse(functor.weyl[level], functor.rank(level), functor.rank(level)) for level in range(n + 1)}
    return Ambient(functor.tower, [functor.rank(level) for level in range(n + 1)], res, tr, weyl)


@dataclass
class LevelQuotient:
    """Z/B at one level: Hermite basis of Z, SNF transform, kept coordinates."""

    cycles: list
    transform: SparseIntMatrix
    kept: list
    orders: list
    generators: list

    def coords(self, vec: dict) -> list:
        cycle_coords = solve_hermite(self.cycles, vec)
        if cycle_coords is None:
            raise ValueError("vector does not lie in the cycle lattice")
        transformed = self.transform.apply(cycle_coords)
        out = []
        for idx, order in zip(self.kept, self.orders):
            entry = transformed.get(idx, 0)
            out.append(entry % order if order else entry)
        return out


def level_quotient(cycles: list, boundaries: list) -> LevelQuotient:
    basis = hermite_rows(cycles)
    coords = []
    for vec in boundaries:
        if not vec:
            continue
        solution = solve_hermite(basis, vec)
        if solution is None:
            raise ValueError("boundary outside the cycle lattice")
        if solution:
            coords.append(solution)
    size = len(basis)
    mat = SparseIntMatrix.from_columns(coords, size)
    res = snf(mat, with_transforms="left")
    kept = []
    orders = []
    for index in range(size):
        factor = res.factors[index] if index < res.rank else 0
        if factor != 1:
            kept.append(index)
            orders.append(factor)
    uinv_cols = res.left_inverse.columns()
    generators = []
    for index in kept:
        vec: dict = {}
        for basis_index, coeff in uinv_cols[index].items():
            vec_add(vec, basis[basis_index], coeff)
        generators.append(vec)
    return LevelQuotient(basis, res.left_transform, kept, orders, generators)


def full_lattice(rank: int) -> list:
    return [{index: 1} for index in range(rank)]


def subquotient(
    ambient: Ambient,
    cycles: list | None,
    boundaries: list,
    name: str = "",
) -> tuple[MackeyPresentation, list]:
    """The Mackey functor Z/B for sub-lattices B <= Z closed under the structure maps."""
    tower = ambient.tower
    n = tower.n
    levels = []
    for level in range(n + 1):
        level_cycles = full_lattice(ambient.ranks[level]) if cycles is None or cycles[level] is None else cycles[level]
        levels.append(level_quotient(level_cycles, boundaries[level] if boundaries else []))
    orders = [lq.orders for lq in levels]
    res, tr, weyl = {}, {}, {}
    for level in range(n + 1):
        weyl[level] = dense_from_columns(
            [_as_dict(levels[level].coords(ambient.weyl[level].apply(gen))) for gen in levels[level].generators], len(orders[level])
        )
    for level in range(1, n + 1):
        res[level] = dense_from_columns(
            [_as_dict(levels[level - 1].coords(ambient.res[level].apply(gen))) for gen in levels[level].generators], len(orders[level - 1])
        )
        tr[level] = dense_from_columns(
            [_as_dict(levels[level].coords(ambient.tr[level].apply(gen))) for gen in levels[level - 1].generators], len(orders[level])
        )
    return MackeyPresentation(tower, orders, res, tr, weyl, name=name), levels


def _as_dict(vec: list) -> dict:
    return {index: entry for index, entry in enumerate(vec) if entry}


def closure(ambient: Ambient, seeds: list) -> list:
    """Hermite bases of the sub-Mackey functor generated by the seed vectors."""
    n = ambient.tower.n
    current = [hermite_rows(seeds[level]) for level in range(n + 1)]
    while True:
        grown = []
        for level in range(n + 1):
            vecs = list(current[level])
            vecs += [ambient.weyl[level].apply(vec) for vec in current[level]]
            if level < n:
                vecs += [ambient.res[level + 1].apply(vec) for vec in current[level + 1]]
            if level > 0:
                vecs += [ambient.tr[level].apply(vec) for vec in current[level - 1]]
            grown.append(hermite_rows(vecs))
        if grown == current:
            return current
        current = grown


# --------------------------------------------------------------------------
# Morphisms, kernels, cokernels
# --------------------------------------------------------------------------


@dataclass
class MackeyMorphism:
    source: MackeyPresentation
    target: MackeyPresentation
    maps: dict  # level -> dense matrix (target rank x source rank)

    def __post_init__(self):
        for level in self.maps:
            self.maps[level] = reduce_rows(self.maps[level], self.target.orders[level])

    def violations(self) -> list[str]:
        source, target = self.source, self.target
        bad = []
        for level in range(source.tower.n + 1):
            level_map = self.maps[level]
            if not _well_defined(level_map, source.orders[level], target.orders[level]):
                bad.append(f"level {level} map does not respect relations")
            if not _equal_mod(mat_mul(level_map, source.weyl[level]), mat_mul(target.weyl[level], level_map), target.orders[level]):
                bad.append(f"level {level} map is not Weyl equivariant")
        for level in range(1, source.tower.n + 1):
            if not _equal_mod(mat_mul(self.maps[level - 1], source.res[level]), mat_mul(target.res[level], self.maps[level]), target.orders[level - 1]):
                bad.append(f"does not commute with res_{level}")
            if not _equal_mod(mat_mul(self.maps[level], source.tr[level]), mat_mul(target.tr[level], self.maps[level - 1]), target.orders[level]):
                bad.append(f"does not commute with tr_{level}")
        return bad

    def compose(self, inner: "MackeyMorphism") -> "MackeyMorphism":
        return MackeyMorphism(inner.source, self.target,
                              {level: mat_mul(self.maps[level], inner.maps[level]) for level in self.maps})


def cokernel(morphism: MackeyMorphism, name: str = "") -> MackeyPresentation:
    target = morphism.target
    amb = ambient_of_presentation(target)
    bounds = []
    for level in range(target.tower.n + 1):
        cols = mat_columns(morphism.maps[level], morphism.source.rank(level))
        bounds.append([col for col in cols if col] + target.relation_vectors(level))
    pres, _ = subquotient(amb, None, bounds, name=name)
    return pres


def levelwise_kernel_vectors(mat: list, src_orders: list, tgt_orders: list) -> list:
    """Generators of the vectors that ``mat`` sends to zero in the target group, in source coordinates."""
    source_rank = len(src_orders)
    target_rank = len(tgt_orders)
    cols = mat_columns(mat, source_rank)
    slack = [{index: order} for index, order in enumerate(tgt_orders) if order]
    big = SparseIntMatrix.from_columns(cols + slack, target_rank)
    vecs = []
    for solution in kernel_basis(big):
        proj = {index: entry for index, entry in solution.items() if index < source_rank}
        if proj:
            vecs.append(proj)
    vecs += [{index: order} for index, order in enumerate(src_orders) if order]
    return vecs


def kernel(morphism: MackeyMorphism, name: str = "") -> MackeyPresentation:
    source = morphism.source
    amb = ambient_of_presentation(source)
    cycles = [levelwise_kernel_vectors(morphism.maps[level], source.orders[level], morphism.target.orders[level]) for level in range(source.tower.n + 1)]
    bounds = [source.relation_vectors(level) for level in range(source.tower.n + 1)]
    pres, _ = subquotient(amb, cycles, bounds, name=name)
    return pres


def is_levelwise_injective(morphism: MackeyMorphism) -> bool:
    source = morphism.source
    for level in range(source.tower.n + 1):
        for solution in levelwise_kernel_vectors(morphism.maps[level], source.orders[level], morphism.target.orders[level]):
            for index, entry in solution.items():
                order = source.orders[level][index]
                if (entry % order if order else entry) != 0:
                    return False
    return True


def is_levelwise_surjective(morphism: MackeyMorphism) -> bool:
    target = morphism.target
    for level in range(target.tower.n + 1):
        cols = [col for col in mat_columns(morphism.maps[level], morphism.source.rank(level)) if col] + target.relation_vectors(level)
        big = SparseIntMatrix.from_columns(cols, target.rank(level))
        res = snf(big)
        if res.rank != target.rank(level) or any(factor != 1 for factor in res.factors):
            return False
    return True


def identity_morphism(functor: MackeyPresentation) -> MackeyMorphism:
    return MackeyMorphism(functor, functor, {level: mat_identity(functor.rank(level)) for level in range(functor.tower.n + 1)})


def inverse_morphism(morphism: MackeyMorphism) -> MackeyMorphism | None:
    """Levelwise inverse of an isomorphism, verified; None if the morphism is not invertible."""
    source, target = morphism.source, morphism.target
    inv = {}
    for level in range(source.tower.n + 1):
        cols = mat_columns(morphism.maps[level], source.rank(level))
        slack = target.relation_vectors(level)
        big = SparseIntMatrix.from_columns(cols + slack, target.rank(level))
        solver = IntegerSolver(big)
        out_cols = []
        for index in range(target.rank(level)):
            solution = solver.solve({index: 1})
            if solution is None:
                return None
            out_cols.append({col: entry for col, entry in solution.items() if col < source.rank(level)})
        inv[level] = dense_from_columns(out_cols, source.rank(level))
    inverse = MackeyMorphism(target, source, inv)
    if inverse.violations():
        return None
    for level in range(source.tower.n + 1):
        if not _equal_mod(mat_mul(morphism.maps[level], inverse.maps[level]), mat_identity(target.rank(level)), target.orders[level]):
            return None
        if not _equal_mod(mat_mul(inverse.maps[level], morphism.maps[level]), mat_identity(source.rank(level)), source.orders[level]):
            return None
    return inverse


# --------------------------------------------------------------------------
# Fingerprints
# --------------------------------------------------------------------------


def elementary_divisors(orders: Iterable[int]) -> Counter:
    out: Counter = Counter()
    for order in orders:
        if order == 0:
            out["Z"] += 1
        elif order != 1:
            for prime, power in factorint(order).items():
                out[f"{prime}^{power}"] += 1
    return out


def map_invariants(mat: list, src_orders: list, tgt_orders: list) -> tuple[Counter, Counter]:
    """(elementary divisors of the cokernel, of the image) of a map of groups."""
    target_rank = len(tgt_orders)
    cols = [col for col in mat_columns(mat, len(src_orders)) if col]
    rel = [{index: order} for index, order in enumerate(tgt_orders) if order]
    big = SparseIntMatrix.from_columns(cols + rel, target_rank)
    res = snf(big)
    coker = [order for order in res.factors if order != 1] + [0] * (target_rank - res.rank)
    image = quotient_invariants(cols, rel) if cols else []
    return elementary_divisors(coker), elementary_divisors(image)


def structure_maps(functor: MackeyPresentation) -> list[tuple[str, list, int, int]]:
    """Named maps (matrix, source level, target level): res, tr, weyl - 1 and two-fold composites."""
    n = functor.tower.n
    basic = []
    for level in range(1, n + 1):
        basic.append((f"res{level}", functor.res[level], level, level - 1))
        basic.append((f"tr{level}", functor.tr[level], level - 1, level))
    for level in range(n + 1):
        basic.append((f"w{level}", mat_add(functor.weyl[level], mat_identity(functor.rank(level)), -1), level, level))
    out = list(basic)
    for name_a, first_map, src_a, tgt_a in basic:
        for name_b, second_map, src_b, tgt_b in basic:
            if tgt_a == src_b:
                out.append((f"{name_b}.{name_a}", mat_mul(second_map, first_map), src_a, tgt_b))
    return out


@dataclass(frozen=True)
class Fingerprint:
    items: tuple

    def as_counter(self) -> Counter:
        return Counter(dict(self.items))

    def __add__(self, other: "Fingerprint") -> "Fingerprint":
        total = self.as_counter() + other.as_counter()
        return Fingerprint(tuple(sorted(total.items())))

    def scaled(self, factor: int) -> "Fingerprint":
        return Fingerprint(tuple(sorted((key, factor * count) for key, count in self.items if factor * count)))

    def is_zero(self) -> bool:
        return not self.items

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.items).encode()).hexdigest()[:16]


def fingerprint(functor: MackeyPresentation) -> Fingerprint:
    counts: Counter = Counter()
    for level in range(functor.tower.n + 1):
        for key, count in elementary_divisors(functor.orders[level]).items():
            counts[(f"L{level}", key)] += count
    for name, mat, src, tgt in structure_maps(functor):
        coker, image = map_invariants(mat, functor.orders[src], functor.orders[tgt])
        for key, count in coker.items():
            counts[(f"coker {name}", key)] += count
        for key, count in image.items():
            counts[(f"image {name}", key)] += count
    return Fingerprint(tuple(sorted(counts.items())))


# --------------------------------------------------------------------------
# Named Mackey functors
# --------------------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    presentation: MackeyPresentation
    cover: list  # list of (level, coordinate vector) generating the functor
    aliases: list = field(default_factory=list)
    description: str = ""
    free_level: int | None = None
    _fp: Fingerprint | None = None

    @property
    def fingerprint(self) -> Fingerprint:
        if self._fp is None:
            self._fp = fingerprint(self.presentation)
        return self._fp


def _orbit_module(tower: GroupTower, levels: list) -> FreeModule:
    gens = [Generator(f"g{index}", gen_level, 0) for index, gen_level in enumerate(levels)]
    return FreeModule(tower, None, gens)


def free_module_ambient(tower: GroupTower, levels: list) -> tuple[FreeModule, Ambient]:
    module = _orbit_module(tower, levels)
    return module, ambient_of_module(module)


def free_mackey(tower: GroupTower, gens: GSet | list, name: str = "") -> MackeyPresentation:
    levels = _gset_levels(gens)
    module, amb = free_module_ambient(tower, levels)
    pres, _ = subquotient(amb, None, [[] for _ in range(tower.n + 1)], name=name or f"A{{{GSet.of(Counter(levels)).describe(tower)}}}")
    return pres


def _gset_levels(gens) -> list:
    if isinstance(gens, GSet):
        out = []
        for level, mult in gens.counts:
            out += [level] * mult
        return out
    return list(gens)


def _module_vector(module: FreeModule, elem: FreeModElem) -> dict:
    index = module.basis_index(elem.level)
    return {index[key]: coeff for key, coeff in elem.terms.items()}


def quotient_of_free(
    tower: GroupTower,
    levels: list,
    relations: Callable[[FreeModule], list],
    name: str,
) -> CatalogEntry:
    """A{U} modulo the sub-functor generated by the given elements."""
    module, amb = free_module_ambient(tower, levels)
    seeds = [[] for _ in range(tower.n + 1)]
    for elem in relations(module):
        seeds[elem.level].append(_module_vector(module, elem))
    sub = closure(amb, seeds)
    pres, lq = subquotient(amb, None, sub, name=name)
    cover = []
    for gen_index, gen_level in enumerate(levels):
        vec = _module_vector(module, module.gen(gen_index))
        cover.append((gen_level, lq[gen_level].coords(vec)))
    return CatalogEntry(name, pres, cover)


def subfunctor_of_free(
    tower: GroupTower,
    levels: list,
    elements: Callable[[FreeModule], list],
    name: str,
) -> CatalogEntry:
    """The sub-functor of A{U} generated by the given elements."""
    module, amb = free_module_ambient(tower, levels)
    seeds = [[] for _ in range(tower.n + 1)]
    elems = elements(module)
    for elem in elems:
        seeds[elem.level].append(_module_vector(module, elem))
    sub = closure(amb, seeds)
    pres, lq = subquotient(amb, sub, [[] for _ in range(tower.n + 1)], name=name)
    cover = [(elem.level, lq[elem.level].coords(_module_vector(module, elem))) for elem in elems]
    return CatalogEntry(name, pres, cover)


def entry_from_presentation(pres: MackeyPresentation, name: str) -> CatalogEntry:
    cover = []
    for level in range(pres.tower.n + 1):
        for index in range(pres.rank(level)):
            vec = [0] * pres.rank(level)
            vec[index] = 1
            cover.append((level, vec))
    return CatalogEntry(name, pres, cover)


def constant_z(tower: GroupTower) -> MackeyPresentation:
    n, p = tower.n, tower.p
    return MackeyPresentation(
        tower,
        [[0] for _ in range(n + 1)],
        {level: [[1]] for level in range(1, n + 1)},
        {level: [[p]] for level in range(1, n + 1)},
        {level: [[1]] for level in range(n + 1)},
        name="Zbar",
    )


def inflated_z(tower: GroupTower, below: int) -> MackeyPresentation:
    """Z at levels >= below (restriction 1, transfer p), zero underneath."""
    n, p = tower.n, tower.p
    orders = [[0] if level >= below else [] for level in range(n + 1)]
    res = {}
    tr = {}
    for level in range(1, n + 1):
        if level - 1 >= below:
            res[level] = [[1]]
            tr[level] = [[p]]
        elif level >= below:
            res[level] = []
            tr[level] = [[]]
        else:
            res[level] = []
            tr[level] = []
    weyl = {level: ([[1]] if level >= below else []) for level in range(n + 1)}
    return MackeyPresentation(tower, orders, res, tr, weyl, name=f"Inf Z")


def augmentation_morphism(tower: GroupTower) -> MackeyMorphism:
    """A -> Zbar sending each orbit class to its cardinality."""
    burnside = free_mackey(tower, [tower.n], name="A")
    constant = constant_z(tower)
    module = _orbit_module(tower, [tower.n])
    maps = {}
    for level in range(tower.n + 1):
        # The presentation of a free functor keeps the module basis as is.
        maps[level] = [[tower.p ** (level - sub) for (_v, _g, _r, sub) in module.basis(level)]]
    return MackeyMorphism(burnside, constant, maps)


def homology(d_in: MackeyMorphism, d_out: MackeyMorphism, name: str = "") -> MackeyPresentation:
    """ker(d_out) / im(d_in) as a Mackey functor."""
    mid = d_out.source
    if d_in.target is not mid and d_in.target.orders != mid.orders:
        raise ValueError("morphisms are not composable")
    n = mid.tower.n
    for level in range(n + 1):
        comp = reduce_rows(mat_mul(d_out.maps[level], d_in.maps[level]), d_out.target.orders[level])
        if any(any(row) for row in comp):
            raise ValueError(f"composition is nonzero at level {level}")
    amb = ambient_of_presentation(mid)
    cycles = [levelwise_kernel_vectors(d_out.maps[level], mid.orders[level], d_out.target.orders[level]) for level in range(n + 1)]
    bounds = []
    for level in range(n + 1):
        cols = [col for col in mat_columns(d_in.maps[level], d_in.source.rank(level)) if col]
        bounds.append(cols + mid.relation_vectors(level))
    pres, _ = subquotient(amb, cycles, bounds, name=name)
    return pres


def quotient_presentation(pres: MackeyPresentation, seeds: dict, name: str) -> MackeyPresentation:
    """pres modulo the sub-functor generated by seed vectors {level: [coordinate lists]}."""
    n = pres.tower.n
    amb = ambient_of_presentation(pres)
    start = [[_as_dict(vec) for vec in seeds.get(level, [])] + pres.relation_vectors(level) for level in range(n + 1)]
    sub = closure(amb, start)
    out, _ = subquotient(amb, None, sub, name=name)
    return out
