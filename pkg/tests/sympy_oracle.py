"""Level groups of homology through sympy's Smith normal form (a second, independent SNF)."""

from __future__ import annotations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def nonzero_invariants(sparse) -> list[int]:
    if sparse.nrows == 0 or sparse.ncols == 0:
        return []
    diag = smith_normal_form(Matrix(sparse.to_dense()), domain=ZZ)
    return [abs(int(diag[index, index])) for index in range(min(diag.shape)) if diag[index, index] != 0]


def level_homology(cc, position: int, level: int, degree: int) -> tuple[int, list[int]]:
    """(free rank, torsion invariants) of H_position at one level and internal degree."""
    d_out = cc.differential(position)
    d_in = cc.differential(position + 1)
    size = len(cc.module(position).basis(level, degree))
    out_rank = len(nonzero_invariants(d_out.matrix(level, degree))) if d_out is not None else 0
    in_factors = nonzero_invariants(d_in.matrix(level, degree)) if d_in is not None else []
    return size - out_rank - len(in_factors), sorted(factor for factor in in_factors if factor != 1)


def presentation_level(pres, level: int) -> tuple[int, list[int]]:
    orders = pres.orders[level]
    return sum(1 for order in orders if order == 0), sorted(order for order in orders if order)
