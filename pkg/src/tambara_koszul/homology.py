"""Levelwise homology of complexes of free Mackey functors, iterated page
homology of multicomplexes, truncated exactness checks and the Tor pipeline.

Base-changed differentials preserve the degree of generators, so every
computation over the Burnside functor splits into independent blocks, one
per internal degree.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .catalog import Identification, format_sum, match_catalog
from .freemod import FreeModule
from .intmat import SparseIntMatrix, hermite_rows, kernel_basis, rank, snf
from .koszul import ChainComplex, MultiComplex, _step, build_general, totalize
from .lattice import GroupTower
from .mackey import (
    MackeyPresentation,
    ambient_of_module,
    check_axioms,
    direct_sum,
    subquotient,
    zero_presentation,
)

THREADS_ENV = "TAMBARA_KOSZUL_THREADS"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _parallel_map(func, items: list) -> list:
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


class HomologyError(ValueError):
    """Raised for inputs that are not complexes or not over the Burnside functor."""


# --------------------------------------------------------------------------
# Homology of a chain complex over A
# --------------------------------------------------------------------------


def _block_degrees(*modules: FreeModule | None) -> list[int]:
    out = set()
    for mod in modules:
        if mod is not None:
            out.update(gen.degree for gen in mod.generators)
    return sorted(out)


def _columns(mat: SparseIntMatrix) -> list[dict]:
    return [col for col in mat.columns() if col]


def homology_block(cc: ChainComplex, position: int, degree: int) -> MackeyPresentation:
    """H_i of a complex over A restricted to one internal degree."""
    mod = cc.module(position)
    tower = cc.tower
    if mod is None or not mod.generators:
        return zero_presentation(tower)
    if not mod.over_burnside:
        raise HomologyError("homology with Mackey structure needs a complex over A; base change first")
    amb = ambient_of_module(mod, degree)
    d_out = cc.differential(position)
    d_in = cc.differential(position + 1)
    cycles = []
    bounds = []
    for level in range(tower.n + 1):
        if d_out is not None and cc.module(position - 1) is not None:
            out_mat = d_out.matrix(level, degree)
            cycles.append(kernel_basis(out_mat))
        else:
            cycles.append(None)
        if d_in is not None:
            in_mat = d_in.matrix(level, degree)
            if d_out is not None:
                check = d_out.matrix(level, degree) @ in_mat
                if not check.is_zero():
                    raise HomologyError(f"d_{position} d_{position + 1} != 0 at level {level}, degree {degree}")
            bounds.append(_columns(in_mat))
        else:
            bounds.append([])
    pres, _ = subquotient(amb, cycles, bounds)
    return pres


def homology_blocks(cc: ChainComplex, position: int) -> dict[int, MackeyPresentation]:
    """Nonzero degree blocks of H_i."""
    degrees = _block_degrees(cc.module(position))
    results = _parallel_map(lambda degree: homology_block(cc, position, degree), degrees)
    return {degree: pres for degree, pres in zip(degrees, results) if not pres.is_zero()}


def mackey_homology_at(cc: ChainComplex, position: int) -> MackeyPresentation:
    blocks = homology_blocks(cc, position)
    if not blocks:
        return zero_presentation(cc.tower, name=f"H_{position}")
    pres = direct_sum([blocks[degree] for degree in sorted(blocks)], name=f"H_{position}")
    violations = check_axioms(pres)
    if violations:
        raise HomologyError(f"induced structure fails the Mackey axioms: {violations}")
    return pres


# --------------------------------------------------------------------------
# Tor
# --------------------------------------------------------------------------


@dataclass
class TorRow:
    degree: int
    blocks: dict
    identifications: dict

    @property
    def presentation(self) -> MackeyPresentation:
        if not self.blocks:
            return None
        return direct_sum([self.blocks[degree] for degree in sorted(self.blocks)], name=f"Tor_{self.degree}")

    @property
    def identified(self) -> bool:
        return all(ident.identified for ident in self.identifications.values())

    def multiplicities(self) -> Counter:
        total: Counter = Counter()
        for ident in self.identifications.values():
            total += ident.multiplicities
        return total

    def label(self, tower: GroupTower) -> str:
        if not self.identifications and not self.blocks:
            return "0"
        if not self.identified:
            return "unidentified"
        return format_sum(tower, self.multiplicities())

    def certificate_digests(self) -> dict:
        return {degree: ident.certificate.digest() for degree, ident in self.identifications.items() if ident.identified}


def resolution_complex(p: int, n: int, gen_level: int = 0) -> ChainComplex:
    return totalize(build_general(p, n, gen_level))


def tor(p: int, n: int, gen_level: int = 0, max_degree: int | None = None, identify: bool = True,
        complex_over_a: ChainComplex | None = None) -> list[TorRow]:
    """Tor^R_*(A, A) with per-degree-block identifications."""
    cc = complex_over_a if complex_over_a is not None else resolution_complex(p, n, gen_level).base_change()
    top = len(cc.modules) - 1 if max_degree is None else max_degree
    rows = []
    for position in range(top + 1):
        blocks = homology_blocks(cc, position) if position < len(cc.modules) else {}
        idents = {}
        if identify:
            for degree, pres in blocks.items():
                idents[degree] = match_catalog(pres)
        rows.append(TorRow(position, blocks, idents))
    return rows


# --------------------------------------------------------------------------
# Page homology
# --------------------------------------------------------------------------


@dataclass
class PageCell:
    """Per internal degree and level: Hermite bases of cycles Z and boundaries B."""

    module: FreeModule
    cycles: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    def presentation(self) -> MackeyPresentation:
        tower = self.module.tower
        parts = []
        for degree in sorted(self.cycles):
            amb = ambient_of_module(self.module, degree)
            pres, _ = subquotient(amb, self.cycles[degree], self.bounds[degree])
            if not pres.is_zero():
                parts.append(pres)
        if not parts:
            return zero_presentation(tower)
        return direct_sum(parts)


def _initial_page(mc: MultiComplex) -> dict:
    tower = mc.tower
    page = {}
    for multideg, mod in mc.cells.items():
        if not mod.over_burnside:
            raise HomologyError("page homology needs a complex over A; base change first")
        cell = PageCell(mod)
        for degree in _block_degrees(mod):
            cell.cycles[degree] = [[{index: 1} for index in range(len(mod.basis(level, degree)))] for level in range(tower.n + 1)]
            cell.bounds[degree] = [[] for _ in range(tower.n + 1)]
        page[multideg] = cell
    return page


def _apply_columns(mat: SparseIntMatrix, vectors: list) -> list:
    return [image for image in (mat.apply(vec) for vec in vectors) if image]


def _restricted_kernel(mat: SparseIntMatrix, cycles: list, target_bounds: list) -> list:
    """Vectors of span(cycles) that mat sends into span(target_bounds), in ambient coordinates."""
    images = [mat.apply(cycle) for cycle in cycles]
    cols = images + [dict(bound) for bound in target_bounds]
    big = SparseIntMatrix.from_columns(cols, mat.nrows)
    out = []
    for vec in kernel_basis(big):
        combo: dict = {}
        for idx, coeff in vec.items():
            if idx < len(cycles):
                for key, value in cycles[idx].items():
                    combo[key] = combo.get(key, 0) + coeff * value
        combo = {key: value for key, value in combo.items() if value}
        if combo:
            out.append(combo)
    return hermite_rows(out)


def page_step(mc: MultiComplex, page: dict, axis: int) -> dict:
    tower = mc.tower
    new_page = {}

    def process(multideg):
        cell = page[multideg]
        out = PageCell(cell.module)
        lower = _step(multideg, axis, -1)
        upper = _step(multideg, axis, 1)
        d_out = mc.differential(multideg, axis)
        d_in = mc.differential(upper, axis)
        for degree in cell.cycles:
            cycles_d = []
            bounds_d = []
            for level in range(tower.n + 1):
                cycles_here = cell.cycles[degree][level]
                bounds_here = list(cell.bounds[degree][level])
                if d_out is not None and lower in page and degree in page[lower].cycles:
                    mat = d_out.matrix(level, degree)
                    cycles_here = _restricted_kernel(mat, cycles_here, page[lower].bounds[degree][level])
                if d_in is not None and upper in page and degree in page[upper].cycles:
                    mat = d_in.matrix(level, degree)
                    bounds_here += _apply_columns(mat, page[upper].cycles[degree][level])
                cycles_d.append(cycles_here)
                bounds_d.append(hermite_rows(bounds_here))
            out.cycles[degree] = cycles_d
            out.bounds[degree] = bounds_d
        return out

    keys = sorted(page)
    results = _parallel_map(process, keys)
    for cell_key, cell in zip(keys, results):
        new_page[cell_key] = cell
    return new_page


def page_homology(mc: MultiComplex, axes: list[int]) -> list[dict]:
    """Pages after successive homology along the given axes; page 0 is the complex itself."""
    pages = [_initial_page(mc)]
    for axis in axes:
        pages.append(page_step(mc, pages[-1], axis))
    return pages


def page_presentations(page: dict) -> dict:
    return {cell_key: cell.presentation() for cell_key, cell in page.items()}


# --------------------------------------------------------------------------
# Truncated graded exactness over R
# --------------------------------------------------------------------------


@dataclass
class ExactnessEntry:
    position: int
    level: int
    degree: int
    kernel_rank: int
    image_rank: int
    torsion: list

    @property
    def defect(self) -> int:
        return self.kernel_rank - self.image_rank


@dataclass
class ExactnessReport:
    entries: list
    cutoff: int
    augmented: bool = True

    def nonzero(self) -> list[ExactnessEntry]:
        return [entry for entry in self.entries if entry.defect or entry.torsion]

    def certified(self) -> bool:
        return not self.nonzero()

    def at(self, position: int, level: int, degree: int) -> ExactnessEntry | None:
        for entry in self.entries:
            if (entry.position, entry.level, entry.degree) == (position, level, degree):
                return entry
        return None

    def to_json(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "certified": self.certified(),
            "entries": [
                {
                    "position": entry.position,
                    "level": entry.level,
                    "degree": entry.degree,
                    "kernel_rank": entry.kernel_rank,
                    "image_rank": entry.image_rank,
                    "defect": entry.defect,
                    "torsion": entry.torsion,
                }
                for entry in self.entries
            ],
        }


def _zero_or_matrix(cc: ChainComplex, position: int, level: int, degree: int) -> SparseIntMatrix:
    src = cc.module(position)
    tgt = cc.module(position - 1)
    nsrc = len(src.basis(level, degree)) if src is not None else 0
    ntgt = len(tgt.basis(level, degree)) if tgt is not None else 0
    hom = cc.differential(position)
    if hom is None or nsrc == 0 or ntgt == 0:
        return SparseIntMatrix.zeros(ntgt, nsrc)
    return hom.matrix(level, degree)


def graded_exactness(cc: ChainComplex, cutoff: int, levels: list[int] | None = None,
                     compare_unit: bool = True) -> ExactnessReport:
    """Homology ranks of the R-linear complex in internal degrees <= cutoff.

    Position 0 is compared with A (rank level+1 in degree 0, nothing above)
    when compare_unit is set, so a resolution of A reports zero defect there.
    """
    if not cc.modules:
        return ExactnessReport([], cutoff)
    for position in cc.differentials:
        if cc.differentials[position].degree() not in (None, 0):
            raise HomologyError("differentials must preserve internal degree")
    tower = cc.tower
    levels = list(range(tower.n + 1)) if levels is None else levels
    jobs = [(position, level, degree) for position in range(len(cc.modules)) for level in levels for degree in range(cutoff + 1)]

    def run(job):
        position, level, degree = job
        mod = cc.module(position)
        size = len(mod.basis(level, degree))
        d_out = _zero_or_matrix(cc, position, level, degree) if position > 0 else SparseIntMatrix.zeros(0, size)
        d_in = _zero_or_matrix(cc, position + 1, level, degree) if position + 1 < len(cc.modules) else SparseIntMatrix.zeros(size, 0)
        kernel_rank = size - rank(d_out)
        image = snf(d_in)
        image_rank = image.rank
        torsion = image.torsion()
        if position == 0 and compare_unit:
            kernel_rank -= (level + 1) if degree == 0 else 0
        return ExactnessEntry(position, level, degree, kernel_rank, image_rank, torsion)

    return ExactnessReport(_parallel_map(run, jobs), cutoff)
