"""Subgroup lattice of C_{p^n}, finite G-sets, Weyl groups and wedge orbits.

Subgroups are denoted by their exponent ``k`` (meaning C_{p^k}).  The group
G = C_{p^n} is modelled as Z/p^n with generator 1, so C_{p^k} is generated by
p^{n-k} and the orbit G/C_{p^k} is identified with Z/p^{n-k}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    divisor = 2
    while divisor * divisor <= p:
        if p % divisor == 0:
            return False
        divisor += 1
    return True


@dataclass(frozen=True)
class GroupTower:
    """The cyclic group C_{p^n} together with its chain of subgroups."""

    p: int
    n: int

    def __post_init__(self):
        # p = 2 is accepted here because the fixed-generator Green case is
        # computed for C_2; the Koszul builders reject it separately.
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def order(self) -> int:
        return self.p ** self.n

    def check(self, exponent: int) -> int:
        if not 0 <= exponent <= self.n:
            raise ValueError(f"subgroup exponent {exponent} outside 0..{self.n}")
        return exponent

    def index(self, exponent: int) -> int:
        """|G/C_{p^k}|, the size of the orbit G/C_{p^k}."""
        return self.p ** (self.n - self.check(exponent))

    def generator(self, exponent: int) -> int:
        """The element of Z/p^n generating C_{p^k}."""
        return self.p ** (self.n - self.check(exponent))

    def name(self, exponent: int) -> str:
        if exponent == 0:
            return "e"
        return f"C{self.p ** exponent}"

    def orbit_name(self, exponent: int) -> str:
        return f"C{self.order}/{self.name(exponent)}"


def weyl_group(tower: GroupTower, level: int) -> int:
    """Order of the Weyl group W_G(C_{p^level}) = G/C_{p^level}."""
    return tower.index(level)


@dataclass(frozen=True)
class GSet:
    """A finite G-set as a multiset of orbits G/C_{p^k}."""

    counts: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def of(mapping: dict[int, int] | Iterable[tuple[int, int]]) -> "GSet":
        items = dict(mapping)
        if any(mult < 0 for mult in items.values()):
            raise ValueError("negative multiplicity")
        return GSet(tuple(sorted((exponent, mult) for exponent, mult in items.items() if mult)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __add__(self, other: "GSet") -> "GSet":
        merged = self.as_dict()
        for exponent, mult in other.counts:
            merged[exponent] = merged.get(exponent, 0) + mult
        return GSet.of(merged)

    def cardinality(self, tower: GroupTower) -> int:
        return sum(mult * tower.index(exponent) for exponent, mult in self.counts)

    def is_empty(self) -> bool:
        return not self.counts

    def describe(self, tower: GroupTower) -> str:
        if not self.counts:
            return "0"
        parts = []
        for exponent, mult in sorted(self.counts):
            orb = tower.orbit_name(exponent)
            parts.append(orb if mult == 1 else f"{mult}({orb})")
        return " + ".join(parts)


def orbit_product(tower: GroupTower, first: int, second: int) -> GSet:
    """Orbit decomposition of G/C_{p^a} x G/C_{p^b}."""
    tower.check(first)
    tower.check(second)
    return GSet.of({min(first, second): tower.p ** (tower.n - max(first, second))})


def gset_product(tower: GroupTower, first: GSet, second: GSet) -> GSet:
    out = GSet()
    for first_orbit, first_mult in first.counts:
        for second_orbit, second_mult in second.counts:
            prod = orbit_product(tower, first_orbit, second_orbit)
            out = out + GSet.of({exponent: mult * first_mult * second_mult for exponent, mult in prod.counts})
    return out


def shift_set(indices: Iterable[int], shift: int, modulus: int) -> tuple[int, ...]:
    return tuple(sorted((index + shift) % modulus for index in indices))


def set_stabilizer(tower: GroupTower, level: int, indices: Iterable[int]) -> int:
    """Exponent of the stabilizer in G of a subset of G/C_{p^level}."""
    modulus = tower.index(level)
    base = tuple(sorted(indices))
    best = level
    for exponent in range(level + 1, tower.n + 1):
        if shift_set(base, tower.generator(exponent), modulus) == base:
            best = exponent
        else:
            break
    return best


def canonical_subset(tower: GroupTower, level: int, indices: Iterable[int]) -> tuple[int, ...]:
    """Lexicographically least ascending shift-translate of a subset."""
    modulus = tower.index(level)
    base = tuple(sorted(indices))
    if not base:
        return base
    return min(shift_set(base, -start, modulus) for start in base)


@dataclass(frozen=True)
class WedgeGenerator:
    """Canonical representative of an orbit of k-element subsets of G/C_{p^level}."""

    level: int
    index_set: tuple[int, ...]
    stabilizer: int


def wedge_orbit_decomposition(
    tower: GroupTower, level: int, subset_size: int
) -> tuple[GSet, list[WedgeGenerator]]:
    """Orbits of the G-set of unordered k-subsets of T = G/C_{p^level}."""
    size = tower.index(level)
    if subset_size < 0 or subset_size > size:
        return GSet(), []
    reps: dict[tuple[int, ...], int] = {}
    for subset in combinations(range(size), subset_size):
        if subset and subset[0] != 0:
            continue
        canon = canonical_subset(tower, level, subset)
        if canon not in reps:
            reps[canon] = set_stabilizer(tower, level, canon)
    gens = [WedgeGenerator(level, idx, stab) for idx, stab in sorted(reps.items())]
    counts: dict[int, int] = {}
    for gen in gens:
        counts[gen.stabilizer] = counts.get(gen.stabilizer, 0) + 1
    return GSet.of(counts), gens


def wedge_mass(tower: GroupTower, level: int, subset_size: int) -> int:
    return comb(tower.index(level), subset_size)


def project(tower: GroupTower, coset: int, frm: int, to: int) -> int:
    """Image of the coset i in G/C_{p^frm} under G/C_{p^frm} -> G/C_{p^to}."""
    if to < frm:
        raise ValueError("projection goes to a larger subgroup")
    return coset % tower.index(to)


def incidence_set(
    tower: GroupTower, level: int, lower: Iterable[int], upper: Iterable[int]
) -> tuple[int, ...]:
    """Elements of I in G/C_{p^level} whose image in G/C_{p^{level+1}} lies in J."""
    jset = set(upper)
    return tuple(sorted(coset for coset in lower if project(tower, coset, level, level + 1) in jset))
