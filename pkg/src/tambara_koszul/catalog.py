"""Named Mackey functors and certified identification of computed ones.

Identification is fingerprint guided: a multiset of catalog entries whose
fingerprints add up to the target's is proposed, and then an explicit
isomorphism from the direct sum onto the target is searched for.  A name is
only reported together with a verified two-sided inverse.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter
from dataclasses import dataclass, field

from .freemod import FreeModElem
from .intmat import IntegerSolver, SparseIntMatrix, hermite_rows, kernel_basis, snf
from .lattice import GroupTower
from .mackey import (
    CatalogEntry,
    Fingerprint,
    MackeyMorphism,
    MackeyPresentation,
    _module_vector,
    ambient_of_module,
    augmentation_morphism,
    cokernel,
    constant_z,
    dense_from_columns,
    direct_sum,
    elementary_divisors,
    entry_from_presentation,
    free_mackey,
    free_module_ambient,
    inflated_z,
    inverse_morphism,
    is_levelwise_injective,
    kernel,
    map_invariants,
    mat_columns,
    mat_mul,
    quotient_of_free,
    quotient_presentation,
    reduce_rows,
    subfunctor_of_free,
    subquotient,
    zero_presentation,
)


# --------------------------------------------------------------------------
# Catalog
# --------------------------------------------------------------------------


def orbit_label(tower: GroupTower, exponent: int) -> str:
    return f"{tower.name(tower.n)}/{tower.name(exponent)}"


def free_entry(tower: GroupTower, exponent: int) -> CatalogEntry:
    name = "A" if exponent == tower.n else f"A{{{orbit_label(tower, exponent)}}}"
    pres = free_mackey(tower, [exponent], name=name)
    vec = [0] * pres.rank(exponent)
    module, _ = free_module_ambient(tower, [exponent])
    vec[module.basis_index(exponent)[module.generator_key(0)]] = 1
    entry = CatalogEntry(name, pres, [(exponent, vec)])
    entry.free_level = exponent
    if exponent == 0:
        entry.aliases.append("A_e")
    return entry


def _relation_constant(tower: GroupTower, level: int):
    def build(module):
        gen = module.gen(0)
        return [gen.res(sub).tr(level) - gen.scale(tower.p ** (level - sub)) for sub in range(level)]

    return build


def _relation_res(sub: int):
    def build(module):
        return [module.gen(0).res(sub)]

    return build


def _relation_res_and_p(tower: GroupTower, sub: int):
    def build(module):
        gen = module.gen(0)
        return [gen.res(sub), gen.scale(tower.p)]

    return build


def levelwise_res_kernel(tower: GroupTower, orbit: int, sub: int, name: str) -> CatalogEntry:
    """The sub-functor of A{G/C_{p^orbit}} of elements restricting to zero on C_{p^sub}."""
    module, amb = free_module_ambient(tower, [orbit])
    cycles = []
    for level in range(tower.n + 1):
        if level <= sub:
            cycles.append([])
            continue
        mat = SparseIntMatrix.identity(amb.ranks[level])
        for step in range(level, sub, -1):
            mat = amb.res[step] @ mat
        cycles.append(kernel_basis(mat))
    pres, _ = subquotient(amb, cycles, [[] for _ in range(tower.n + 1)], name=name)
    return entry_from_presentation(pres, name)


def generated_res_kernel(tower: GroupTower, ambient_level: int, source: int, sub: int, name: str) -> CatalogEntry:
    """The sub-functor of A{G/C_{p^ambient_level}} generated by ker(res^source_sub) at level source."""
    module, amb = free_module_ambient(tower, [ambient_level])
    mat = SparseIntMatrix.identity(amb.ranks[source])
    for step in range(source, sub, -1):
        mat = amb.res[step] @ mat
    basis = module.basis(source)

    def build(mod):
        elems = []
        for vec in kernel_basis(mat):
            elems.append(FreeModElem(mod, source, {basis[index]: coeff for index, coeff in vec.items()}))
        return elems

    return subfunctor_of_free(tower, [ambient_level], build, name)


def quotient_by_res_kernel(tower: GroupTower, source: int, sub: int, name: str) -> CatalogEntry:
    """A modulo the sub-functor generated by ker(res^source_sub) at level source."""
    module, amb = free_module_ambient(tower, [tower.n])
    mat = SparseIntMatrix.identity(amb.ranks[source])
    for step in range(source, sub, -1):
        mat = amb.res[step] @ mat
    basis = module.basis(source)

    def build(mod):
        return [FreeModElem(mod, source, {basis[index]: coeff for index, coeff in vec.items()}) for vec in kernel_basis(mat)]

    return quotient_of_free(tower, [tower.n], build, name)


def simple_torsion(tower: GroupTower, exponent: int) -> MackeyPresentation:
    """Z/p concentrated at level ``exponent`` with all structure maps zero."""
    n, p = tower.n, tower.p
    orders = [[p] if level == exponent else [] for level in range(n + 1)]
    res = {}
    tr = {}
    for level in range(1, n + 1):
        res[level] = [[0] * len(orders[level]) for _ in orders[level - 1]]
        tr[level] = [[0] * len(orders[level - 1]) for _ in orders[level]]
    weyl = {level: [[1]] if level == exponent else [] for level in range(n + 1)}
    return MackeyPresentation(tower, orders, res, tr, weyl, name=f"S_{tower.name(exponent)}(Z/{p})")


def build_catalog(tower: GroupTower) -> list[CatalogEntry]:
    """Named Mackey functors for C_{p^n}, isomorphic duplicates merged as aliases."""
    n, p = tower.n, tower.p
    entries: list[CatalogEntry] = []
    for lower in range(n + 1):
        entries.append(free_entry(tower, lower))
    zbar = constant_z(tower)
    entries.append(CatalogEntry("Zbar", zbar, [(n, [1])]))
    for upper in range(1, n):
        entries.append(
            quotient_of_free(tower, [upper], _relation_constant(tower, upper), f"Zbar{{{orbit_label(tower, upper)}}}")
        )
    aug = augmentation_morphism(tower)
    entries.append(entry_from_presentation(kernel(aug, "I"), "I"))
    for upper in range(1, n + 1):
        base = "A" if upper == n else f"A{{{orbit_label(tower, upper)}}}"
        for lower in range(upper):
            entries.append(quotient_of_free(tower, [upper], _relation_res(lower), f"{base}/res_{tower.name(lower)}"))
            entries.append(levelwise_res_kernel(tower, upper, lower, f"ker(res^{tower.name(upper)}_{tower.name(lower)})"))
            entries.append(
                generated_res_kernel(tower, upper, upper, lower, f"<ker res^{tower.name(upper)}_{tower.name(lower)}>")
            )
            if upper < n:
                entries.append(
                    generated_res_kernel(tower, n, upper, lower, f"<ker res^{tower.name(upper)}_{tower.name(lower)} in A>")
                )
    for upper in range(1, n):
        for lower in range(upper):
            entries.append(quotient_by_res_kernel(tower, upper, lower, f"A/<ker res^{tower.name(upper)}_{tower.name(lower)}>"))
    for lower in range(1, n + 1):
        entries.append(CatalogEntry(f"S_{tower.name(lower)}(Z/{p})", simple_torsion(tower, lower), [(lower, [1])]))
    for upper in range(1, n):
        for lower in range(upper):
            name = "L" if (n, upper, lower) == (2, 1, 0) else f"L({orbit_label(tower, upper)},{tower.name(lower)})"
            entries.append(quotient_of_free(tower, [upper], _relation_res_and_p(tower, lower), name))
    for below in range(1, n + 1):
        pres = inflated_z(tower, below)
        pres.name = f"Inf_{tower.name(below)}^{tower.name(n)} Z"
        entries.append(CatalogEntry(pres.name, pres, [(n, [1])]))
        if below < n:
            name = f"Inf_{tower.name(below)}^{tower.name(n)} Z/<{p} at {tower.name(below)}>"
            reduced = quotient_presentation(pres, {below: [[p]]}, name)
            entries.append(CatalogEntry(name, reduced, [(n, [1])]))
    return merge_duplicates(entries)


def merge_duplicates(entries: list[CatalogEntry]) -> list[CatalogEntry]:
    kept: list[CatalogEntry] = []
    for entry in entries:
        if entry.presentation.is_zero():
            continue
        twin = None
        for other in kept:
            if other.fingerprint == entry.fingerprint:
                if find_isomorphism(entry.presentation, [other]) is not None:
                    twin = other
                    break
        if twin is None:
            kept.append(entry)
        else:
            twin.aliases.append(entry.name)
    return kept


_CATALOG_CACHE: dict = {}


def catalog(tower: GroupTower) -> list[CatalogEntry]:
    key = (tower.p, tower.n)
    if key not in _CATALOG_CACHE:
        _CATALOG_CACHE[key] = build_catalog(tower)
    return _CATALOG_CACHE[key]


def catalog_entry(tower: GroupTower, name: str) -> CatalogEntry:
    for entry in catalog(tower):
        if entry.name == name or name in entry.aliases:
            return entry
    raise KeyError(name)


# --------------------------------------------------------------------------
# Maps out of catalog entries
# --------------------------------------------------------------------------


class CoverData:
    """A{U} -> E determined by the cover of a catalog entry, with sections and relations."""

    def __init__(self, entry: CatalogEntry):
        pres = entry.presentation
        tower = pres.tower
        self.entry = entry
        self.tower = tower
        self.levels = [gen_level for gen_level, _ in entry.cover]
        self.vectors = [vec for _, vec in entry.cover]
        self.module, _ = free_module_ambient(tower, self.levels)
        self.keys = {}
        self.sections = {}
        self.relations = {}
        for level in range(tower.n + 1):
            keys = self.module.basis(level)
            self.keys[level] = keys
            cols = [_as_dict(apply_key_operator(pres, self.levels[gen_index], shift, via, level, self.vectors[gen_index]))
                    for (_v, gen_index, shift, via) in keys]
            slack = pres.relation_vectors(level)
            big = SparseIntMatrix.from_columns(cols + slack, pres.rank(level))
            solver = IntegerSolver(big)
            section_cols = []
            for index in range(pres.rank(level)):
                solution = solver.solve({index: 1})
                if solution is None:
                    raise ValueError(f"cover of {entry.name} does not generate level {level}")
                section_cols.append({column: coeff for column, coeff in solution.items() if column < len(keys)})
            self.sections[level] = dense_from_columns(section_cols, len(keys))
            rels = []
            for vec in kernel_basis(big):
                proj = {column: coeff for column, coeff in vec.items() if column < len(keys)}
                if proj:
                    rels.append(proj)
            self.relations[level] = rels

    def unknown_sizes(self, target: MackeyPresentation) -> list[int]:
        return [target.rank(gen_level) for gen_level in self.levels]

    def key_images(self, target: MackeyPresentation, level: int, images: list) -> list:
        """Columns: image of each basis key of A{U}(level) under the map sending each cover generator to its entry of ``images``."""
        cols = []
        for (_v, gen_index, shift, via) in self.keys[level]:
            cols.append(apply_key_operator(target, self.levels[gen_index], shift, via, level, images[gen_index]))
        return cols

    def morphism(self, target: MackeyPresentation, images: list) -> MackeyMorphism:
        maps = {}
        for level in range(self.tower.n + 1):
            cols = self.key_images(target, level, images)
            key_mat = [[col[index] for col in cols] for index in range(target.rank(level))]
            section = self.sections[level]
            if section:
                maps[level] = mat_mul(key_mat, section)
            else:
                maps[level] = [[] for _ in range(target.rank(level))]
        return MackeyMorphism(self.entry.presentation, target, maps)

    def hom_lattice(self, target: MackeyPresentation) -> list:
        """Generators of Hom(E, target) as concatenated image vectors, Hermite reduced."""
        sizes = self.unknown_sizes(target)
        offsets = [sum(sizes[:gen_index]) for gen_index in range(len(sizes))]
        total = sum(sizes)
        rows: list[dict] = []
        slack_cols: list = []
        for level in range(self.tower.n + 1):
            if not self.relations[level]:
                continue
            ops = {}
            for rel in self.relations[level]:
                block = [dict() for _ in range(target.rank(level))]
                for idx, coeff in rel.items():
                    _v, gen_index, shift, via = self.keys[level][idx]
                    key = (gen_index, shift, via)
                    if key not in ops:
                        ops[key] = key_operator(target, self.levels[gen_index], shift, via, level)
                    op = ops[key]
                    for index, row in enumerate(op):
                        for column, entry in enumerate(row):
                            if entry:
                                col = offsets[gen_index] + column
                                block[index][col] = block[index].get(col, 0) + coeff * entry
                for index, order in enumerate(target.orders[level]):
                    row = {column: entry for column, entry in block[index].items() if entry}
                    if order:
                        slack_cols.append((len(rows), order))
                        row[total + len(slack_cols) - 1] = order
                    if row:
                        rows.append(row)
        ncols = total + len(slack_cols)
        gens: list[dict] = []
        if rows:
            mat = SparseIntMatrix(len(rows), ncols, rows)
            for vec in kernel_basis(mat):
                proj = {column: entry for column, entry in vec.items() if column < total}
                if proj:
                    gens.append(proj)
        else:
            gens = [{column: 1} for column in range(total)]
        for gen_index, gen_level in enumerate(self.levels):
            for index, order in enumerate(target.orders[gen_level]):
                if order:
                    gens.append({offsets[gen_index] + index: order})
        basis = hermite_rows(gens)
        out = []
        for vec in basis:
            images = self.split(target, vec)
            if any(any(entry for entry in target.reduce_vec(gen_level, img)) for gen_level, img in zip(self.levels, images)):
                out.append(vec)
        return out

    def split(self, target: MackeyPresentation, vec: dict) -> list:
        sizes = self.unknown_sizes(target)
        images = []
        start = 0
        for size in sizes:
            images.append([vec.get(start + index, 0) for index in range(size)])
            start += size
        return images


def _as_dict(vec: list) -> dict:
    return {index: entry for index, entry in enumerate(vec) if entry}


def key_operator(pres: MackeyPresentation, start: int, shift: int, via: int, level: int) -> list:
    """Matrix of tr_via^level res^start_via weyl^shift from pres(start) to pres(level)."""
    op = pres.weyl_power(start, shift)
    op = mat_mul(pres.res_between(start, via), op)
    op = mat_mul(pres.tr_between(via, level), op)
    return reduce_rows(op, pres.orders[level])


def apply_key_operator(pres: MackeyPresentation, start: int, shift: int, via: int, level: int, vec: list) -> list:
    moved = pres.move({index: entry for index, entry in enumerate(vec) if entry}, start, shift, via, level)
    out = [0] * pres.rank(level)
    for index, entry in moved.items():
        out[index] = entry
    return out


# --------------------------------------------------------------------------
# Isomorphism search
# --------------------------------------------------------------------------


def light_fingerprint(functor: MackeyPresentation) -> Fingerprint:
    """Levelwise groups plus invariants of the single structure maps."""
    counts: Counter = Counter()
    for level in range(functor.tower.n + 1):
        for key, count in elementary_divisors(functor.orders[level]).items():
            counts[(f"L{level}", key)] += count
    for level in range(1, functor.tower.n + 1):
        for name, mat, src, tgt in (("res", functor.res[level], level, level - 1), ("tr", functor.tr[level], level - 1, level)):
            coker, image = map_invariants(mat, functor.orders[src], functor.orders[tgt])
            for key, count in coker.items():
                counts[(f"coker {name}{level}", key)] += count
            for key, count in image.items():
                counts[(f"image {name}{level}", key)] += count
    return Fingerprint(tuple(sorted(counts.items())))


def _hstack_maps(parts: list, target: MackeyPresentation) -> dict:
    maps = {}
    for level in range(target.tower.n + 1):
        rows = [[] for _ in range(target.rank(level))]
        for part in parts:
            for row_index in range(target.rank(level)):
                rows[row_index].extend(part.maps[level][row_index])
        maps[level] = rows
    return maps


@dataclass
class Certificate:
    summands: list
    forward: MackeyMorphism
    backward: MackeyMorphism

    def digest(self) -> str:
        payload = {
            "summands": self.summands,
            "forward": {str(level): matrix for level, matrix in self.forward.maps.items()},
            "backward": {str(level): matrix for level, matrix in self.backward.maps.items()},
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def _candidates(hom: list, rng: random.Random, limit: int):
    seen = set()

    def emit(vec):
        key = tuple(sorted((coord, entry) for coord, entry in vec.items() if entry))
        if key and key not in seen:
            seen.add(key)
            return True
        return False

    for vec in hom:
        if emit(vec):
            yield vec
    for first in range(len(hom)):
        for second in range(first + 1, len(hom)):
            for sign in (1, -1):
                vec = dict(hom[first])
                for coord, entry in hom[second].items():
                    vec[coord] = vec.get(coord, 0) + sign * entry
                if emit(vec):
                    yield vec
    for _ in range(limit):
        vec: dict = {}
        for generator in hom:
            scale = rng.randint(-2, 2)
            if scale:
                for coord, entry in generator.items():
                    vec[coord] = vec.get(coord, 0) + scale * entry
        if emit(vec):
            yield vec


def find_isomorphism(
    target: MackeyPresentation,
    summands: list,
    seed: int = 0,
    candidate_limit: int = 60,
    budget: int = 4000,
) -> Certificate | None:
    """Certified isomorphism from the direct sum of catalog entries onto target."""
    tower = target.tower
    if not summands:
        return Certificate([], _zero_map(zero_presentation(tower), target), _zero_map(target, zero_presentation(tower))) \
            if target.is_zero() else None
    order = sorted(summands, key=lambda entry: (entry.free_level is not None, entry.name))
    covers = [CoverData(entry) for entry in order]
    tail_fps = []
    for start in range(len(order) + 1):
        fp = Fingerprint(())
        for entry in order[start:]:
            fp = fp + light_fingerprint(entry.presentation)
        tail_fps.append(fp)
    if light_fingerprint(target) != tail_fps[0]:
        return None
    rng = random.Random(seed)
    counter = [0]
    hom_cache: dict = {}

    def search(idx: int, chosen: list):
        if counter[0] > budget:
            return None
        if idx == len(order):
            source = direct_sum([cover_data.entry.presentation for cover_data in covers], name=" + ".join(entry.name for entry in order))
            forward = MackeyMorphism(source, target, _hstack_maps(chosen, target))
            if forward.violations():
                return None
            backward = inverse_morphism(forward)
            if backward is None:
                return None
            return Certificate([entry.name for entry in order], forward, backward)
        cover = covers[idx]
        name = cover.entry.name
        if name not in hom_cache:
            hom_cache[name] = cover.hom_lattice(target)
        hom = hom_cache[name]
        for vec in _candidates(hom, rng, candidate_limit):
            counter[0] += 1
            if counter[0] > budget:
                return None
            phi = cover.morphism(target, cover.split(target, vec))
            parts = chosen + [phi]
            source = direct_sum([cover_data.entry.presentation for cover_data in covers[: idx + 1]])
            partial = MackeyMorphism(source, target, _hstack_maps(parts, target))
            if not is_levelwise_injective(partial):
                continue
            if light_fingerprint(cokernel(partial)) != tail_fps[idx + 1]:
                continue
            found = search(idx + 1, parts)
            if found is not None:
                return found
        return None

    return search(0, [])


def _zero_map(source: MackeyPresentation, target: MackeyPresentation) -> MackeyMorphism:
    return MackeyMorphism(
        source, target,
        {level: [[0] * source.rank(level) for _ in range(target.rank(level))] for level in range(source.tower.n + 1)},
    )


# --------------------------------------------------------------------------
# Decomposition
# --------------------------------------------------------------------------


@dataclass
class Identification:
    target: MackeyPresentation
    multiplicities: Counter
    certificate: Certificate | None
    candidates_tried: int = 0
    fingerprint: Fingerprint | None = None

    @property
    def identified(self) -> bool:
        return self.certificate is not None

    def label(self, tower: GroupTower) -> str:
        if not self.identified:
            return "unidentified"
        return format_sum(tower, self.multiplicities)


def format_sum(tower: GroupTower, multiplicities: Counter) -> str:
    if not multiplicities:
        return "0"
    free = Counter()
    others = []
    for name, mult in sorted(multiplicities.items()):
        entry = catalog_entry(tower, name)
        level = entry.free_level
        if level is not None and level < tower.n:
            free[level] += mult
        else:
            others.append(name if mult == 1 else f"{name}^{mult}")
    parts = []
    if free:
        inner = " + ".join(
            (orbit_label(tower, exponent) if count == 1 else f"{count}({orbit_label(tower, exponent)})") for exponent, count in sorted(free.items())
        )
        parts.append(f"A{{{inner}}}")
    return " + ".join(parts + others)


def fingerprint_solutions(target_fp: Fingerprint, entries: list, limit: int = 20) -> list[Counter]:
    """Multisets of entries whose fingerprints add up to the target."""
    target = target_fp.as_counter()
    fps = [entry.fingerprint.as_counter() for entry in entries]
    out: list[Counter] = []

    def fits(remaining: Counter, fp: Counter) -> int:
        most = None
        for key, count in fp.items():
            if count <= 0:
                continue
            quotient = remaining.get(key, 0) // count
            most = quotient if most is None else min(most, quotient)
        return most or 0

    def dfs(position: int, remaining: Counter, chosen: Counter):
        if len(out) >= limit:
            return
        if not +remaining:
            out.append(Counter(chosen))
            return
        if position == len(entries):
            return
        top = fits(remaining, fps[position])
        for mult in range(top, -1, -1):
            rest = Counter(remaining)
            for key, count in fps[position].items():
                rest[key] -= mult * count
            if any(count < 0 for count in rest.values()):
                continue
            if mult:
                chosen[entries[position].name] = mult
            dfs(position + 1, rest, chosen)
            chosen.pop(entries[position].name, None)

    dfs(0, Counter(target), Counter())
    return out


def match_catalog(target: MackeyPresentation, seed: int = 0) -> Identification:
    tower = target.tower
    if target.is_zero():
        cert = find_isomorphism(target, [])
        return Identification(target, Counter(), cert, 0, Fingerprint(()))
    from .mackey import fingerprint

    fp = fingerprint(target)
    entries = sorted(catalog(tower), key=lambda entry: (entry.free_level is not None, entry.name))
    tried = 0
    for solution in fingerprint_solutions(fp, entries):
        tried += 1
        summands = []
        for name, mult in solution.items():
            summands += [catalog_entry(tower, name)] * mult
        cert = find_isomorphism(target, summands, seed=seed)
        if cert is not None:
            return Identification(target, solution, cert, tried, fp)
    return Identification(target, Counter(), None, tried, fp)


def identify_as(target: MackeyPresentation, names: Counter, seed: int = 0) -> Certificate | None:
    """Certificate that target is the direct sum of the named entries (with multiplicity)."""
    summands = []
    for name, mult in names.items():
        summands += [catalog_entry(target.tower, name)] * mult
    return find_isomorphism(target, summands, seed=seed)
