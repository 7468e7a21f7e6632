"""Free modules over R = A[x_{G/C_{p^gen_level}}] and over the Burnside functor A.

The underlying Mackey functor of R is the free Mackey functor on the G-set
of monomials x^exponents, with exponent vectors indexed by G/C_{p^gen_level}.
A free R-module on a list of generators, each spanning an orbit, is then
the free Mackey functor on the product of that G-set with the disjoint union
of the generator orbits.

A basis element at a given level is a key ``(exponents, gen, shift, sub)``
standing for

    tr_{C_{p^sub}}^{C_{p^level}} ( rho_sub(exponents) * res_{sub}(shift . generator[gen]) )

where ``rho_sub(exponents)`` is the product of norms restricting to
x^exponents, ``shift . generator[gen]`` is the Weyl translate of the
generator, and ``sub`` is at most the joint stabilizer of the pair.
``(exponents, shift)`` is the canonical representative of its C_{p^level}
orbit.  Modules over A itself use the empty exponent vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .intmat import SparseIntMatrix, vec_add
from .lattice import GroupTower

Key = tuple  # (exponents: tuple[int, ...], gen: int, shift: int, sub: int)


@dataclass(frozen=True)
class Generator:
    label: str
    level: int
    degree: int = 0
    denominator: tuple = ()


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of length ``parts`` with entry sum ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def rotate(vector: tuple, shift: int) -> tuple:
    """Cyclically shift the exponent vector: result[(i + shift) % size] = vector[i]."""
    size = len(vector)
    if size == 0:
        return vector
    shift %= size
    if shift == 0:
        return vector
    return vector[size - shift:] + vector[:size - shift]


def add_vectors(first: tuple, second: tuple) -> tuple:
    return tuple(left_entry + right_entry for left_entry, right_entry in zip(first, second))


class FreeModule:
    """Free module over R (``gen_level`` = m) or over A (``gen_level`` = None)."""

    def __init__(self, tower: GroupTower, gen_level: int | None, generators: Iterable[Generator], name: str = ""):
        self.tower = tower
        self.gen_level = gen_level
        self.generators = tuple(generators)
        self.name = name
        labels = [gen.label for gen in self.generators]
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be unique")
        for gen in self.generators:
            tower.check(gen.level)
        if gen_level is None:
            self.nvars = 0
            self._var_level = tower.n
        else:
            tower.check(gen_level)
            self.nvars = tower.index(gen_level)
            self._var_level = gen_level
        self._label_index = {gen.label: index for index, gen in enumerate(self.generators)}
        self._basis_cache: dict = {}

    # ----------------------------------------------------------------- basics
    @property
    def over_burnside(self) -> bool:
        return self.gen_level is None

    def index_of(self, label: str) -> int:
        return self._label_index[label]

    def rank_by_level(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for gen in self.generators:
            out[gen.level] = out.get(gen.level, 0) + 1
        return out

    def zero_vector(self) -> tuple:
        return (0,) * self.nvars

    def same_shape(self, other: "FreeModule") -> bool:
        return (
            self.tower == other.tower
            and self.gen_level == other.gen_level
            and [(gen.level, gen.degree) for gen in self.generators]
            == [(gen.level, gen.degree) for gen in other.generators]
        )

    def vector_stabilizer(self, vector: tuple) -> int:
        return _vector_stabilizer(self.tower.p, self.tower.n, self._var_level, vector)

    def key_bound(self, vector: tuple, gen: int, level: int) -> int:
        """Largest ``sub`` allowed for keys with this exponent vector and generator at ``level``."""
        return min(self.vector_stabilizer(vector), self.generators[gen].level, level)

    def canonical(self, level: int, vector: tuple, gen: int, offset: int) -> tuple[tuple, int]:
        return _canonical(self.tower.p, self.tower.n, self._var_level, self.generators[gen].level, level, vector, offset)

    def key_degree(self, key: Key) -> int:
        return sum(key[0]) + self.generators[key[1]].degree

    def generator_key(self, index: int) -> Key:
        gen = self.generators[index]
        return (self.zero_vector(), index, 0, gen.level)

    def gen(self, label_or_index, shift: int = 0) -> "FreeModElem":
        """The generator (or a Weyl translate of it) at its own level."""
        gen_index = label_or_index if isinstance(label_or_index, int) else self.index_of(label_or_index)
        level = self.generators[gen_index].level
        elem = FreeModElem(self, level, {self.generator_key(gen_index): 1})
        return elem.weyl(shift) if shift else elem

    def zero(self, level: int) -> "FreeModElem":
        return FreeModElem(self, level, {})

    # ------------------------------------------------------------ structure
    def res_key(self, key: Key, level: int, to: int) -> dict:
        exponents, gen, shift, sub = key
        p, n = self.tower.p, self.tower.n
        jj = min(sub, to)
        step = p ** (n - level)
        out: dict = {}
        for coset in range(p ** (level - max(sub, to))):
            amount = coset * step
            cv, cr = self.canonical(to, rotate(exponents, amount), gen, shift + amount)
            new_key = (cv, gen, cr, jj)
            out[new_key] = out.get(new_key, 0) + 1
        return out

    def tr_key(self, key: Key, to: int) -> Key:
        exponents, gen, shift, sub = key
        cv, cr = self.canonical(to, exponents, gen, shift)
        return (cv, gen, cr, sub)

    def weyl_key(self, key: Key, level: int, shift: int) -> Key:
        exponents, gen, shift_of_key, sub = key
        cv, cr = self.canonical(level, rotate(exponents, shift), gen, shift_of_key + shift)
        return (cv, gen, cr, sub)

    def mul_keys(self, level: int, rv: tuple, ri: int, key: Key) -> dict:
        """tr_{ri}(rho_{ri}(rv)) * key at the given level, for a ring term with exponents rv and subgroup ri."""
        exponents, gen, shift, sub = key
        p, n = self.tower.p, self.tower.n
        step = p ** (n - level)
        out: dict = {}
        for coset in range(p ** (level - max(ri, sub))):
            vv = add_vectors(rotate(rv, coset * step), exponents)
            cv, cr = self.canonical(level, vv, gen, shift)
            new_key = (cv, gen, cr, min(ri, sub))
            out[new_key] = out.get(new_key, 0) + 1
        return out

    # --------------------------------------------------------------- bases
    def basis(self, level: int, degree: int | None = None) -> list[Key]:
        """Z-basis keys at ``level``; restricted to one internal degree when
        given.  Over A the degree selects generators by their own degree."""
        cache_key = (level, degree)
        if cache_key in self._basis_cache:
            return self._basis_cache[cache_key]
        self.tower.check(level)
        keys: list[Key] = []
        for gen_index, gen in enumerate(self.generators):
            if self.over_burnside:
                if degree is not None and gen.degree != degree:
                    continue
                vectors = [()]
            else:
                if degree is None:
                    raise ValueError("modules over R need a degree to have a finite basis")
                rest = degree - gen.degree
                if rest < 0:
                    continue
                vectors = compositions(rest, self.nvars)
            seen = set()
            modulus = self.tower.index(gen.level)
            for exponents in vectors:
                for shift in range(modulus):
                    cv, cr = self.canonical(level, exponents, gen_index, shift)
                    if (cv, cr) in seen:
                        continue
                    seen.add((cv, cr))
            for cv, cr in sorted(seen, key=lambda pair: (tuple(reversed(pair[0])), pair[1])):
                for sub in range(self.key_bound(cv, gen_index, level) + 1):
                    keys.append((cv, gen_index, cr, sub))
        self._basis_cache[cache_key] = keys
        return keys

    def basis_index(self, level: int, degree: int | None = None) -> dict[Key, int]:
        cache_key = ("index", level, degree)
        if cache_key not in self._basis_cache:
            self._basis_cache[cache_key] = {key: index for index, key in enumerate(self.basis(level, degree))}
        return self._basis_cache[cache_key]

    def degrees(self) -> list[int]:
        return sorted({gen.degree for gen in self.generators})

    def describe(self) -> str:
        counts = self.rank_by_level()
        if not counts:
            return "0"
        parts = []
        for exponent in sorted(counts):
            orb = self.tower.orbit_name(exponent)
            parts.append(orb if counts[exponent] == 1 else f"{counts[exponent]}({orb})")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def _vector_stabilizer(p: int, n: int, var_level: int, vector: tuple) -> int:
    best = var_level
    for exponent in range(var_level + 1, n + 1):
        if rotate(vector, p ** (n - exponent)) == vector:
            best = exponent
        else:
            break
    return best


@lru_cache(maxsize=1 << 20)
def _canonical(p: int, n: int, var_level: int, gen_level: int, level: int, vector: tuple, offset: int) -> tuple[tuple, int]:
    r_mod = p ** (n - gen_level)
    offset %= r_mod
    low = min(var_level, gen_level)
    if level <= low:
        return vector, offset
    step = p ** (n - level)
    count = p ** (level - low)
    best = None
    best_sort = None
    for coset in range(count):
        amount = coset * step
        cand_v = rotate(vector, amount)
        cand_r = (offset + amount) % r_mod
        sort_key = (tuple(reversed(cand_v)), cand_r)
        if best_sort is None or sort_key < best_sort:
            best_sort = sort_key
            best = (cand_v, cand_r)
    return best


@dataclass
class FreeModElem:
    module: FreeModule
    level: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {key: coeff for key, coeff in self.terms.items() if coeff}

    def copy(self) -> "FreeModElem":
        return FreeModElem(self.module, self.level, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "FreeModElem"):
        if other.module is not self.module or other.level != self.level:
            raise ValueError("elements live in different modules or levels")

    def __add__(self, other: "FreeModElem") -> "FreeModElem":
        self._check(other)
        out = dict(self.terms)
        vec_add(out, other.terms)
        return FreeModElem(self.module, self.level, out)

    def __sub__(self, other: "FreeModElem") -> "FreeModElem":
        self._check(other)
        out = dict(self.terms)
        vec_add(out, other.terms, -1)
        return FreeModElem(self.module, self.level, out)

    def __neg__(self) -> "FreeModElem":
        return self.scale(-1)

    def scale(self, factor: int) -> "FreeModElem":
        return FreeModElem(self.module, self.level, {key: factor * coeff for key, coeff in self.terms.items()} if factor else {})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeModElem):
            return NotImplemented
        return self.module is other.module and self.level == other.level and self.terms == other.terms

    def res(self, to: int) -> "FreeModElem":
        if to > self.level:
            raise ValueError(f"cannot restrict from level {self.level} up to {to}")
        if to == self.level:
            return self.copy()
        out: dict = {}
        for key, coeff in self.terms.items():
            vec_add(out, self.module.res_key(key, self.level, to), coeff)
        return FreeModElem(self.module, to, out)

    def tr(self, to: int) -> "FreeModElem":
        if to < self.level:
            raise ValueError(f"cannot transfer from level {self.level} down to {to}")
        out: dict = {}
        for key, coeff in self.terms.items():
            new_key = self.module.tr_key(key, to)
            out[new_key] = out.get(new_key, 0) + coeff
        return FreeModElem(self.module, to, out)

    def weyl(self, shift: int = 1) -> "FreeModElem":
        out: dict = {}
        for key, coeff in self.terms.items():
            new_key = self.module.weyl_key(key, self.level, shift)
            out[new_key] = out.get(new_key, 0) + coeff
        return FreeModElem(self.module, self.level, out)

    def times_monomial(self, exponents: tuple) -> "FreeModElem":
        """Multiply by rho_level(exponents); the exponents must be invariant under C_{p^level}."""
        module = self.module
        if module.vector_stabilizer(exponents) < self.level:
            raise ValueError("monomial is not defined at this level")
        out: dict = {}
        for (term_exponents, gen, shift, sub), coeff in self.terms.items():
            cv, cr = module.canonical(self.level, add_vectors(exponents, term_exponents), gen, shift)
            new_key = (cv, gen, cr, sub)
            out[new_key] = out.get(new_key, 0) + coeff
        return FreeModElem(module, self.level, out)

    def times_ring(self, ring_elem: "FreeModElem") -> "FreeModElem":
        """Multiply by an element of R (a FreeModElem of the ring module) at the same level."""
        if ring_elem.level != self.level:
            raise ValueError("ring element must sit at the same level")
        out: dict = {}
        for (rv, _gen, _shift, ri), ring_coeff in ring_elem.terms.items():
            for key, coeff in self.terms.items():
                vec_add(out, self.module.mul_keys(self.level, rv, ri, key), ring_coeff * coeff)
        return FreeModElem(self.module, self.level, out)

    def degree_set(self) -> set[int]:
        return {self.module.key_degree(key) for key in self.terms}


class RModHom:
    """Module map determined by the images of the source generators."""

    def __init__(self, source: FreeModule, target: FreeModule, images: list[FreeModElem], name: str = ""):
        if len(images) != len(source.generators):
            raise ValueError("need one image per source generator")
        for gen, img in zip(source.generators, images):
            if img.module is not target:
                raise ValueError("image outside the target module")
            if img.level != gen.level:
                raise ValueError(f"image of {gen.label} must sit at level {gen.level}")
        self.source = source
        self.target = target
        self.images = images
        self.name = name
        self._memo: dict = {}

    @staticmethod
    def zero(source: FreeModule, target: FreeModule) -> "RModHom":
        return RModHom(source, target, [target.zero(gen.level) for gen in source.generators])

    @staticmethod
    def identity(module: FreeModule) -> "RModHom":
        return RModHom(module, module, [module.gen(index) for index in range(len(module.generators))])

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def _base_image(self, gen: int, shift: int, sub: int) -> dict:
        memo_key = (gen, shift, sub)
        hit = self._memo.get(memo_key)
        if hit is None:
            img = self.images[gen]
            if shift:
                img = img.weyl(shift)
            hit = img.res(sub).terms
            self._memo[memo_key] = hit
        return hit

    def apply_key(self, key: Key, level: int) -> dict:
        exponents, gen, shift, sub = key
        target = self.target
        base = self._base_image(gen, shift, sub)
        out: dict = {}
        has_monomial = any(exponents)
        for (image_exponents, image_gen, image_shift, image_sub), coeff in base.items():
            vv = add_vectors(exponents, image_exponents) if has_monomial else image_exponents
            if has_monomial or level != sub:
                cv, cr = target.canonical(level, vv, image_gen, image_shift)
                new_key = (cv, image_gen, cr, image_sub)
            else:
                new_key = (image_exponents, image_gen, image_shift, image_sub)
            new = out.get(new_key, 0) + coeff
            if new:
                out[new_key] = new
            else:
                out.pop(new_key, None)
        return out

    def apply(self, elem: FreeModElem) -> FreeModElem:
        if elem.module is not self.source:
            raise ValueError("element is not in the source module")
        out: dict = {}
        for key, coeff in elem.terms.items():
            vec_add(out, self.apply_key(key, elem.level), coeff)
        return FreeModElem(self.target, elem.level, out)

    def degree(self) -> int | None:
        """Common degree shift (image degree minus generator degree), or None if zero."""
        shifts = set()
        for gen, img in zip(self.source.generators, self.images):
            for image_degree in img.degree_set():
                shifts.add(image_degree - gen.degree)
        if len(shifts) > 1:
            raise ValueError(f"hom {self.name!r} is not degree-homogeneous: shifts {sorted(shifts)}")
        return shifts.pop() if shifts else None

    def matrix(self, level: int, degree: int | None = None) -> SparseIntMatrix:
        """Matrix on the Z-bases at one level (and one internal degree)."""
        src = self.source.basis(level, degree)
        tgt_index = self.target.basis_index(level, degree)
        cols = []
        for key in src:
            col = {}
            for image_key, coeff in self.apply_key(key, level).items():
                idx = tgt_index.get(image_key)
                if idx is None:
                    raise ValueError(f"image key {image_key} is outside the target degree-{degree} basis")
                col[idx] = coeff
            cols.append(col)
        return SparseIntMatrix.from_columns(cols, len(tgt_index))


def compose(outer: RModHom, inner: RModHom) -> RModHom:
    if inner.target is not outer.source:
        raise ValueError("homs are not composable")
    return RModHom(inner.source, outer.target, [outer.apply(img) for img in inner.images],
                   name=f"{outer.name}.{inner.name}")


def degree_matrix(hom: RModHom, level: int, degree: int) -> SparseIntMatrix:
    return hom.matrix(level, degree)


def base_change_module(module: FreeModule) -> FreeModule:
    """The free A-module on the same generating G-set."""
    return FreeModule(module.tower, None, module.generators, name=module.name)


def base_change_elem(elem: FreeModElem, target: FreeModule) -> FreeModElem:
    """Augmentation x -> 0: keep only terms without monomial factor."""
    out = {}
    for (exponents, gen, shift, sub), coeff in elem.terms.items():
        if not any(exponents):
            out[((), gen, shift, sub)] = coeff
    return FreeModElem(target, elem.level, out)


def base_change_hom(hom: RModHom, source: FreeModule, target: FreeModule) -> RModHom:
    return RModHom(source, target, [base_change_elem(img, target) for img in hom.images], name=hom.name)
