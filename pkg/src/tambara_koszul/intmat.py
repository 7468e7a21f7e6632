"""Sparse exact integer linear algebra: Smith and Hermite normal forms, kernels, solving.

Matrices are stored row-wise as dictionaries ``{column: value}`` with no
explicit zeros.  Everything is exact over arbitrary-precision integers.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

SparseVec = dict


def xgcd(first: int, second: int) -> tuple[int, int, int]:
    """Return (gcd, coeff_first, coeff_second) with coeff_first*first + coeff_second*second = gcd >= 0."""
    prev_remainder, remainder = first, second
    prev_first, coeff_first = 1, 0
    prev_second, coeff_second = 0, 1
    while remainder:
        quotient = prev_remainder // remainder
        prev_remainder, remainder = remainder, prev_remainder - quotient * remainder
        prev_first, coeff_first = coeff_first, prev_first - quotient * coeff_first
        prev_second, coeff_second = coeff_second, prev_second - quotient * coeff_second
    if prev_remainder < 0:
        prev_remainder, prev_first, prev_second = -prev_remainder, -prev_first, -prev_second
    return prev_remainder, prev_first, prev_second


def vec_add(target: dict, source: dict, scale: int = 1) -> None:
    """target += scale * source, in place, dropping zeros."""
    if not scale:
        return
    for key, val in source.items():
        new = target.get(key, 0) + scale * val
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def vec_scale(vec: dict, scale: int) -> dict:
    if not scale:
        return {}
    return {key: scale * val for key, val in vec.items()}


@dataclass
class SparseIntMatrix:
    nrows: int
    ncols: int
    rows: list = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [dict() for _ in range(self.nrows)]
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for row in self.rows:
            for col, val in list(row.items()):
                if not 0 <= col < self.ncols:
                    raise ValueError(f"column {col} outside 0..{self.ncols - 1}")
                if not val:
                    del row[col]

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "SparseIntMatrix":
        return SparseIntMatrix(nrows, ncols)

    @staticmethod
    def identity(size: int) -> "SparseIntMatrix":
        return SparseIntMatrix(size, size, [{index: 1} for index in range(size)])

    @staticmethod
    def from_dense(dense: Sequence[Sequence[int]], ncols: int | None = None) -> "SparseIntMatrix":
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if nrows else 0
        rows = [{col: int(value) for col, value in enumerate(row) if value} for row in dense]
        return SparseIntMatrix(nrows, ncols, rows)

    @staticmethod
    def from_columns(columns: Sequence[dict], nrows: int) -> "SparseIntMatrix":
        rows = [dict() for _ in range(nrows)]
        for col_index, col in enumerate(columns):
            for row_index, value in col.items():
                if value:
                    rows[row_index][col_index] = value
        return SparseIntMatrix(nrows, len(columns), rows)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for row_index, row in enumerate(self.rows):
            for col_index, value in row.items():
                out[row_index][col_index] = value
        return out

    def columns(self) -> list[dict]:
        cols = [dict() for _ in range(self.ncols)]
        for row_index, row in enumerate(self.rows):
            for col_index, value in row.items():
                cols[col_index][row_index] = value
        return cols

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.ncols, self.nrows, self.columns())

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in product")
        out = []
        for row in self.rows:
            acc: dict = {}
            for inner, value in row.items():
                vec_add(acc, other.rows[inner], value)
            out.append(acc)
        return SparseIntMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector."""
        out = {}
        for row_index, row in enumerate(self.rows):
            total = 0
            if len(row) < len(vec):
                for col_index, entry in row.items():
                    component = vec.get(col_index)
                    if component:
                        total += entry * component
            else:
                for col_index, component in vec.items():
                    entry = row.get(col_index)
                    if entry:
                        total += entry * component
            if total:
                out[row_index] = total
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)


class _Workspace:
    """Matrix held both row-wise and column-wise so that row and column
    operations are cheap; optionally applies the same operations to the
    transform matrices."""

    def __init__(self, matrix: SparseIntMatrix, left: bool, right: bool):
        self.rows = {row_index: dict(row) for row_index, row in enumerate(matrix.rows) if row}
        self.cols: dict[int, dict] = {}
        for row_index, row in self.rows.items():
            for col_index, value in row.items():
                self.cols.setdefault(col_index, {})[row_index] = value
        # The left transform mixes rows like the matrix does; its inverse mixes columns.
        self.left = left
        self.right = right
        self.u_rows = {row_index: {row_index: 1} for row_index in range(matrix.nrows)} if left else None
        self.uinv_cols = {row_index: {row_index: 1} for row_index in range(matrix.nrows)} if left else None
        self.v_cols = {col_index: {col_index: 1} for col_index in range(matrix.ncols)} if right else None
        self.vinv_rows = {col_index: {col_index: 1} for col_index in range(matrix.ncols)} if right else None

    def _set(self, row_index: int, col_index: int, value: int):
        if value:
            self.rows.setdefault(row_index, {})[col_index] = value
            self.cols.setdefault(col_index, {})[row_index] = value
        else:
            row = self.rows.get(row_index)
            if row is not None:
                row.pop(col_index, None)
                if not row:
                    del self.rows[row_index]
            col = self.cols.get(col_index)
            if col is not None:
                col.pop(row_index, None)
                if not col:
                    del self.cols[col_index]

    def row_mix(self, first: int, second: int, c11: int, c12: int, c21: int, c22: int):
        """(row_first, row_second) <- (c11 row_first + c12 row_second, c21 row_first + c22 row_second); det must be +-1."""
        ri = self.rows.get(first, {})
        rj = self.rows.get(second, {})
        keys = set(ri) | set(rj)
        new_i = {}
        new_j = {}
        for col_index in keys:
            first_val = ri.get(col_index, 0)
            second_val = rj.get(col_index, 0)
            new_first = c11 * first_val + c12 * second_val
            new_second = c21 * first_val + c22 * second_val
            if new_first:
                new_i[col_index] = new_first
            if new_second:
                new_j[col_index] = new_second
        for col_index in keys:
            col = self.cols.get(col_index)
            if col is not None:
                col.pop(first, None)
                col.pop(second, None)
        for col_index, value in new_i.items():
            self.cols.setdefault(col_index, {})[first] = value
        for col_index, value in new_j.items():
            self.cols.setdefault(col_index, {})[second] = value
        for col_index in keys:
            if col_index in self.cols and not self.cols[col_index]:
                del self.cols[col_index]
        self._store_row(first, new_i)
        self._store_row(second, new_j)
        if self.left:
            _mix_pair(self.u_rows, first, second, c11, c12, c21, c22)
            det = c11 * c22 - c12 * c21
            # left_inverse <- left_inverse * M^{-1}, M^{-1} = det * [[c22, -c12], [-c21, c11]]
            _mix_pair(self.uinv_cols, first, second, det * c22, -det * c21, -det * c12, det * c11)

    def row_addmul(self, target: int, source: int, factor: int):
        """row_target += factor * row_source."""
        if not factor:
            return
        src = self.rows.get(source, {})
        tgt = self.rows.setdefault(target, {})
        for col_index, value in src.items():
            new = tgt.get(col_index, 0) + factor * value
            col = self.cols.setdefault(col_index, {})
            if new:
                tgt[col_index] = new
                col[target] = new
            else:
                tgt.pop(col_index, None)
                col.pop(target, None)
                if not col:
                    del self.cols[col_index]
        if not tgt:
            del self.rows[target]
        if self.left:
            vec_add(self.u_rows[target], self.u_rows[source], factor)
            vec_add(self.uinv_cols[source], self.uinv_cols[target], -factor)

    def col_mix(self, first: int, second: int, c11: int, c12: int, c21: int, c22: int):
        """(col_first, col_second) <- (c11 col_first + c12 col_second, c21 col_first + c22 col_second)."""
        ci = self.cols.get(first, {})
        cj = self.cols.get(second, {})
        keys = set(ci) | set(cj)
        updates = []
        for row_index in keys:
            first_val = ci.get(row_index, 0)
            second_val = cj.get(row_index, 0)
            updates.append((row_index, c11 * first_val + c12 * second_val, c21 * first_val + c22 * second_val))
        for row_index, new_first, new_second in updates:
            self._set(row_index, first, new_first)
            self._set(row_index, second, new_second)
        if self.right:
            _mix_pair(self.v_cols, first, second, c11, c12, c21, c22)
            det = c11 * c22 - c12 * c21
            _mix_pair(self.vinv_rows, first, second, det * c22, -det * c21, -det * c12, det * c11)

    def col_addmul(self, target: int, source: int, factor: int):
        """col_target += factor * col_source."""
        if not factor:
            return
        for row_index, value in list(self.cols.get(source, {}).items()):
            self._set(row_index, target, self.rows.get(row_index, {}).get(target, 0) + factor * value)
        if self.right:
            vec_add(self.v_cols[target], self.v_cols[source], factor)
            vec_add(self.vinv_rows[source], self.vinv_rows[target], -factor)

    def _store_row(self, row_index: int, row: dict):
        if row:
            self.rows[row_index] = row
        else:
            self.rows.pop(row_index, None)

    def swap_rows(self, first: int, second: int):
        if first != second:
            self.row_mix(first, second, 0, 1, 1, 0)

    def swap_cols(self, first: int, second: int):
        if first != second:
            self.col_mix(first, second, 0, 1, 1, 0)


def _mix_pair(store: dict, first: int, second: int, c11: int, c12: int, c21: int, c22: int):
    vi = store[first]
    vj = store[second]
    new_i: dict = {}
    new_j: dict = {}
    if c11:
        vec_add(new_i, vi, c11)
    if c12:
        vec_add(new_i, vj, c12)
    if c21:
        vec_add(new_j, vi, c21)
    if c22:
        vec_add(new_j, vj, c22)
    store[first] = new_i
    store[second] = new_j


@dataclass
class SNFResult:
    """Invariant factors d_1 | d_2 | ... and, when requested, unimodular
    transforms with left_transform @ M @ right_transform = diag(factors) (padded with zeros)."""

    factors: list
    nrows: int
    ncols: int
    left_transform: SparseIntMatrix | None = None
    left_inverse: SparseIntMatrix | None = None
    right_transform: SparseIntMatrix | None = None
    right_inverse: SparseIntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    def torsion(self) -> list:
        return [factor for factor in self.factors if factor != 1]


def _pick_pivot(work: _Workspace, heap: list) -> tuple[int, int] | None:
    """Pivot in the shortest live row, smallest |value| then shortest column."""
    while heap:
        length, row_index = heap[0]
        row = work.rows.get(row_index)
        if row is None:
            heapq.heappop(heap)
            continue
        if len(row) != length:
            heapq.heapreplace(heap, (len(row), row_index))
            continue
        best = None
        best_key = None
        for col_index, value in row.items():
            key = (abs(value), len(work.cols[col_index]), col_index)
            if best_key is None or key < best_key:
                best_key = key
                best = col_index
        return row_index, best
    return None


def snf(matrix: SparseIntMatrix, with_transforms: bool | str = False) -> SNFResult:
    """Smith normal form by sparse elimination.

    ``with_transforms`` may be False, True (both sides), "left" or "right".
    """
    left = with_transforms in (True, "left", "both")
    right = with_transforms in (True, "right", "both")
    work = _Workspace(matrix, left, right)
    heap = [(len(row), row_index) for row_index, row in work.rows.items()]
    heapq.heapify(heap)
    pivots: list[tuple[int, int, int]] = []
    while True:
        choice = _pick_pivot(work, heap)
        if choice is None:
            break
        row_index, col_index = choice
        row_index, col_index = _clear_cross(work, row_index, col_index, heap)
        val = work.rows[row_index][col_index]
        # Pivot row and column are now isolated; retire them.
        work._set(row_index, col_index, 0)
        pivots.append((row_index, col_index, val))
    factors, order = _divisibility_chain(work, pivots)
    res = SNFResult(factors=factors, nrows=matrix.nrows, ncols=matrix.ncols)
    if left or right:
        row_perm = [row_index for row_index, _, _ in order]
        col_perm = [col_index for _, col_index, _ in order]
        used_rows = set(row_perm)
        used_cols = set(col_perm)
        row_perm += [row_index for row_index in range(matrix.nrows) if row_index not in used_rows]
        col_perm += [col_index for col_index in range(matrix.ncols) if col_index not in used_cols]
        signs = [1 if val > 0 else -1 for _, _, val in order]
        if left:
            urows = [dict(work.u_rows[row_index]) for row_index in row_perm]
            for position, sgn in enumerate(signs):
                if sgn < 0:
                    urows[position] = vec_scale(urows[position], -1)
            res.left_transform = SparseIntMatrix(matrix.nrows, matrix.nrows, urows)
            ucols = [dict(work.uinv_cols[row_index]) for row_index in row_perm]
            for position, sgn in enumerate(signs):
                if sgn < 0:
                    ucols[position] = vec_scale(ucols[position], -1)
            res.left_inverse = SparseIntMatrix.from_columns(ucols, matrix.nrows)
        if right:
            vcols = [work.v_cols[col_index] for col_index in col_perm]
            res.right_transform = SparseIntMatrix.from_columns(vcols, matrix.ncols)
            res.right_inverse = SparseIntMatrix(matrix.ncols, matrix.ncols, [dict(work.vinv_rows[col_index]) for col_index in col_perm])
    return res


def _clear_cross(work: _Workspace, row: int, col: int, heap: list) -> tuple[int, int]:
    """Eliminate everything in the pivot row and column except the pivot itself."""
    while True:
        changed = False
        # Column clearing with row operations.
        for r2 in [other for other in work.cols.get(col, {}) if other != row]:
            pivot_val = work.rows[row][col]
            entry = work.rows.get(r2, {}).get(col, 0)
            if not entry:
                continue
            if entry % pivot_val == 0:
                work.row_addmul(r2, row, -(entry // pivot_val))
            else:
                divisor, coeff_pivot, coeff_entry = xgcd(pivot_val, entry)
                work.row_mix(row, r2, coeff_pivot, coeff_entry, -(entry // divisor), pivot_val // divisor)
                heapq.heappush(heap, (len(work.rows.get(row, {})), row))
            if r2 in work.rows:
                heapq.heappush(heap, (len(work.rows[r2]), r2))
        # Row clearing with column operations.
        for c2 in [other for other in work.rows.get(row, {}) if other != col]:
            pivot_val = work.rows[row][col]
            entry = work.rows[row].get(c2, 0)
            if not entry:
                continue
            if entry % pivot_val == 0:
                work.col_addmul(c2, col, -(entry // pivot_val))
            else:
                divisor, coeff_pivot, coeff_entry = xgcd(pivot_val, entry)
                work.col_mix(col, c2, coeff_pivot, coeff_entry, -(entry // divisor), pivot_val // divisor)
                changed = True
        if not changed and len(work.cols.get(col, {})) == 1:
            return row, col
        for r2 in work.cols.get(col, {}):
            if r2 in work.rows:
                heapq.heappush(heap, (len(work.rows[r2]), r2))


def _divisibility_chain(work: _Workspace, pivots: list) -> tuple[list, list]:
    """Fix the diagonal into a divisibility chain, applying 2x2 moves to the
    transforms.  Returns (factors, ordered pivot records)."""
    diag = [list(record) for record in pivots]
    nonunit = [position for position, (_, _, value) in enumerate(diag) if abs(value) != 1]
    # Units first in the final order; only non-unit entries need fixing.
    for first_pos in range(len(nonunit)):
        for second_pos in range(first_pos + 1, len(nonunit)):
            first, second = nonunit[first_pos], nonunit[second_pos]
            first_val = diag[first][2]
            second_val = diag[second][2]
            if second_val % first_val == 0:
                continue
            ri, ci = diag[first][0], diag[first][1]
            rj, cj = diag[second][0], diag[second][1]
            divisor, coeff_first, coeff_second = xgcd(first_val, second_val)
            lcm = first_val // divisor * second_val
            if work.left or work.right:
                # diag(first_val, second_val) -> diag(divisor, lcm) is realised
                # by unimodular 2x2 moves on the transform stores only.
                _fix_pair_transforms(work, ri, rj, ci, cj, first_val, second_val, divisor, coeff_first, coeff_second)
            diag[first][2] = divisor
            diag[second][2] = lcm
    order = sorted(diag, key=lambda rec: (abs(rec[2]) != 1,))
    units = [rec for rec in order if abs(rec[2]) == 1]
    rest = [rec for rec in order if abs(rec[2]) != 1]
    rest_sorted = sorted(rest, key=lambda rec: abs(rec[2]))
    # The pairwise fixing already produced a chain on the non-unit indices in
    # their original order; sorting by absolute value preserves it.
    final = units + rest_sorted
    return [abs(rec[2]) for rec in final], final


def _fix_pair_transforms(work, ri, rj, ci, cj, first_val, second_val, divisor, coeff_first, coeff_second):
    """Apply to the transforms the moves turning diag(first_val, second_val) into diag(divisor, lcm).

    With coeff_first*first_val + coeff_second*second_val = divisor, the left
    move [[coeff_first, coeff_second], [-second_val/divisor, first_val/divisor]]
    and the right move [[1, -coeff_second*second_val/divisor], [1, coeff_first*first_val/divisor]]
    multiply diag(first_val, second_val) into diag(divisor, first_val*second_val/divisor).
    """
    if work.left:
        _mix_pair(work.u_rows, ri, rj, coeff_first, coeff_second, -(second_val // divisor), first_val // divisor)
        det = coeff_first * (first_val // divisor) + coeff_second * (second_val // divisor)
        _mix_pair(work.uinv_cols, ri, rj, det * (first_val // divisor), det * (second_val // divisor), -det * coeff_second, det * coeff_first)
    if work.right:
        # The right move as a column operation on the pair (ci, cj).
        _mix_pair(work.v_cols, ci, cj, 1, 1, -coeff_second * (second_val // divisor), coeff_first * (first_val // divisor))
        det = coeff_first * (first_val // divisor) + coeff_second * (second_val // divisor)
        _mix_pair(work.vinv_rows, ci, cj, det * coeff_first * (first_val // divisor), det * coeff_second * (second_val // divisor), -det, det)


def invariant_factors(matrix: SparseIntMatrix) -> list:
    return snf(matrix).factors


def rank(matrix: SparseIntMatrix) -> int:
    return snf(matrix).rank


def hermite_rows(vectors: Iterable[dict]) -> list[dict]:
    """Row Hermite normal form of the lattice spanned by the given vectors.

    Rows come out with strictly increasing leading columns, positive leading
    entries, and entries above each leading entry reduced into [0, pivot).
    """
    pending = [dict(vec) for vec in vectors if vec]
    basis: list[dict] = []
    while pending:
        lead = min(min(vec) for vec in pending)
        hits = [vec for vec in pending if lead in vec]
        rest = [vec for vec in pending if lead not in vec]
        pivot, remainder = _euclid_reduce(hits, lead)
        if pivot[lead] < 0:
            pivot = vec_scale(pivot, -1)
        for row in basis:
            entry = row.get(lead)
            if entry:
                vec_add(row, pivot, -(entry // pivot[lead]))
        basis.append(pivot)
        pending = rest + [vec for vec in remainder if vec]
    return basis


def _euclid_reduce(vectors: list[dict], lead: int) -> tuple[dict, list[dict]]:
    """Combine vectors sharing leading column ``lead`` into one pivot vector
    plus remainders that vanish at ``lead``."""
    vectors = [dict(vec) for vec in vectors if vec.get(lead)]
    vectors.sort(key=lambda vec: (abs(vec[lead]), len(vec)))
    pivot = vectors[0]
    remainders = []
    for other in vectors[1:]:
        pivot_val = pivot[lead]
        entry = other[lead]
        if entry % pivot_val == 0:
            vec_add(other, pivot, -(entry // pivot_val))
            remainders.append(other)
            continue
        divisor, coeff_pivot, coeff_other = xgcd(pivot_val, entry)
        new_pivot: dict = {}
        vec_add(new_pivot, pivot, coeff_pivot)
        vec_add(new_pivot, other, coeff_other)
        new_other: dict = {}
        vec_add(new_other, pivot, -(entry // divisor))
        vec_add(new_other, other, pivot_val // divisor)
        pivot = new_pivot
        remainders.append(new_other)
    return pivot, remainders


def kernel_basis(matrix: SparseIntMatrix) -> list[dict]:
    """Z-basis of {v : m v = 0} in row Hermite normal form."""
    res = snf(matrix, with_transforms="right")
    vcols = res.right_transform.columns()
    return hermite_rows(vcols[res.rank:])


def solve_hermite(basis: list[dict], vec: dict) -> dict | None:
    """Coordinates of ``vec`` in a row-Hermite basis, or None if not in the lattice."""
    rest = dict(vec)
    coords = {}
    for index, row in enumerate(basis):
        lead = min(row)
        entry = rest.get(lead)
        if not entry:
            continue
        quotient, rem = divmod(entry, row[lead])
        if rem:
            return None
        coords[index] = quotient
        vec_add(rest, row, -quotient)
    if rest:
        return None
    return coords


def nullity(matrix: SparseIntMatrix) -> int:
    return matrix.ncols - rank(matrix)


class IntegerSolver:
    """Repeated integer solves of m x = rhs sharing one Smith decomposition."""

    def __init__(self, matrix: SparseIntMatrix):
        self.result = snf(matrix, with_transforms=True)

    def solve(self, rhs: dict) -> dict | None:
        res = self.result
        transformed = res.left_transform.apply(rhs)
        scaled = {}
        for index, val in transformed.items():
            if index >= res.rank:
                return None
            quotient, rem = divmod(val, res.factors[index])
            if rem:
                return None
            if quotient:
                scaled[index] = quotient
        return res.right_transform.apply(scaled)


def solve_integer(matrix: SparseIntMatrix, rhs: dict) -> dict | None:
    """Some integer x with m x = rhs, or None when no integer solution exists."""
    return IntegerSolver(matrix).solve(rhs)


def quotient_invariants(big: Iterable[dict], small: Iterable[dict]) -> list[int]:
    """Invariants of the group span(big + small) / span(small); 0 marks a Z summand."""
    basis = hermite_rows(list(big) + list(small))
    coords = []
    for vec in small:
        coordinates = solve_hermite(basis, vec)
        if coordinates is None:
            raise ValueError("small lattice is not contained in the big one")
        coords.append(coordinates)
    mat = SparseIntMatrix.from_columns(coords, len(basis))
    res = snf(mat)
    out = [factor for factor in res.factors if factor != 1]
    out += [0] * (len(basis) - res.rank)
    return out
