"""Burnside rings A(C_{p^k}) on the transitive-orbit basis.

An element at a given level is an integer vector ``coeffs`` of length
level+1 whose entry ``coeffs[orbit]`` is the coefficient of the class
[C_{p^level}/C_{p^orbit}].  The unit is the class of the point, the entry at
index ``level``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class BurnsideElem:
    p: int
    level: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.level + 1:
            raise ValueError("coefficient vector must have length level+1")

    @staticmethod
    def zero(p: int, level: int) -> "BurnsideElem":
        return BurnsideElem(p, level, (0,) * (level + 1))

    @staticmethod
    def one(p: int, level: int) -> "BurnsideElem":
        return BurnsideElem.basis(p, level, level)

    @staticmethod
    def basis(p: int, level: int, orbit: int) -> "BurnsideElem":
        """The class [C_{p^level}/C_{p^j}]."""
        if not 0 <= orbit <= level:
            raise ValueError("basis index out of range")
        vector = [0] * (level + 1)
        vector[orbit] = 1
        return BurnsideElem(p, level, tuple(vector))

    @staticmethod
    def integer(p: int, level: int, value: int) -> "BurnsideElem":
        return BurnsideElem.one(p, level).scale(value)

    def _same(self, other: "BurnsideElem"):
        if (self.p, self.level) != (other.p, other.level):
            raise ValueError("Burnside elements live at different levels")

    def __add__(self, other: "BurnsideElem") -> "BurnsideElem":
        self._same(other)
        return BurnsideElem(self.p, self.level, tuple(mine + theirs for mine, theirs in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BurnsideElem") -> "BurnsideElem":
        return self + other.scale(-1)

    def __neg__(self) -> "BurnsideElem":
        return self.scale(-1)

    def scale(self, factor: int) -> "BurnsideElem":
        return BurnsideElem(self.p, self.level, tuple(factor * coeff for coeff in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, other: "BurnsideElem") -> "BurnsideElem":
        return mul(self, other)

    def __repr__(self) -> str:
        return f"BurnsideElem(C{self.p}^{self.level}: {pretty(self)})"


def mul(left: BurnsideElem, right: BurnsideElem) -> BurnsideElem:
    """[k/i]*[k/j] = p^{k-max(i,j)} [k/min(i,j)], extended bilinearly."""
    left._same(right)
    p, level = left.p, left.level
    out = [0] * (level + 1)
    for left_orbit, left_coeff in enumerate(left.coeffs):
        if not left_coeff:
            continue
        for right_orbit, right_coeff in enumerate(right.coeffs):
            if right_coeff:
                out[min(left_orbit, right_orbit)] += left_coeff * right_coeff * p ** (level - max(left_orbit, right_orbit))
    return BurnsideElem(p, level, tuple(out))


def res(elem: BurnsideElem, to: int) -> BurnsideElem:
    """Restriction to C_{p^to}: [k/j] splits into C_{p^to}-orbits."""
    p, level = elem.p, elem.level
    if not 0 <= to <= level:
        raise ValueError(f"cannot restrict from level {level} to {to}")
    out = [0] * (to + 1)
    for orbit, coeff in enumerate(elem.coeffs):
        if coeff:
            out[min(orbit, to)] += coeff * p ** (level - max(orbit, to))
    return BurnsideElem(p, to, tuple(out))


def tr(elem: BurnsideElem, to: int) -> BurnsideElem:
    """Transfer (induction) to C_{p^to}: [l/j] -> [to/j]."""
    if to < elem.level:
        raise ValueError(f"cannot transfer from level {elem.level} to {to}")
    return BurnsideElem(elem.p, to, elem.coeffs + (0,) * (to - elem.level))


def marks(elem: BurnsideElem) -> tuple[int, ...]:
    """Fixed-point counts under C_{p^i} for i = 0..level."""
    p, level = elem.p, elem.level
    return tuple(
        sum(coeff * p ** (level - orbit) for orbit, coeff in enumerate(elem.coeffs) if orbit >= subgroup)
        for subgroup in range(level + 1)
    )


def from_marks(p: int, level: int, mark_vector: Sequence[int]) -> BurnsideElem:
    """Inverse of the mark homomorphism; raises if the input is not a genuine mark vector."""
    coeffs = [0] * (level + 1)
    for subgroup in range(level, -1, -1):
        larger = range(subgroup + 1, level + 1)
        rest = mark_vector[subgroup] - sum(coeffs[orbit] * p ** (level - orbit) for orbit in larger)
        quotient, remainder = divmod(rest, p ** (level - subgroup))
        if remainder:
            raise ValueError("not a mark vector of a Burnside element")
        coeffs[subgroup] = quotient
    return BurnsideElem(p, level, tuple(coeffs))


def norm_int(p: int, count: int, to: int) -> BurnsideElem:
    """nm_e^{C_{p^to}}(a): the coinduced set Map(C_{p^to}, a) as a Burnside class."""
    if to == 0:
        return BurnsideElem.integer(p, 0, count)
    if to == 1:
        # Closed form a + ((a^p - a)/p) t.
        return BurnsideElem(p, 1, ((count ** p - count) // p, count))
    # Fixed points of C_{p^i} on functions C_{p^to} -> {1..a} are functions on
    # the p^{to-i} cosets.
    return from_marks(p, to, [count ** (p ** (to - subgroup)) for subgroup in range(to + 1)])


def augmentation(elem: BurnsideElem) -> int:
    """Total cardinality: the mark at the trivial subgroup."""
    return marks(elem)[0]


def is_augmentation_ideal(elem: BurnsideElem) -> bool:
    return augmentation(elem) == 0


def pretty(elem: BurnsideElem) -> str:
    terms = []
    level = elem.level
    for orbit in range(level, -1, -1):
        coeff = elem.coeffs[orbit]
        if not coeff:
            continue
        cls = "1" if orbit == level else f"[C{elem.p ** level}/{'e' if orbit == 0 else 'C' + str(elem.p ** orbit)}]"
        if cls == "1":
            terms.append(str(coeff))
        elif coeff == 1:
            terms.append(cls)
        else:
            terms.append(f"{coeff}{cls}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"
