"""Arithmetic in the levels of the free incomplete Tambara functor
R = A[x_{G/C_{p^gen_level}}] for G = C_{p^n}.

Elements are stored in the single-generator normal form of the free Mackey
decomposition: an element at a level is an integer combination of transfers
from C_{p^sub} up to that level of norms from C_{p^gen_level} to C_{p^sub} of
monomials x^exponents, with ``exponents`` a canonical orbit representative.
Products of such terms are rewritten by Frobenius reciprocity and the double
coset formula, so every element has a unique expression.
"""

from __future__ import annotations

from .burnside import BurnsideElem
from .freemod import FreeModElem, FreeModule, Generator, compositions, rotate
from .lattice import GroupTower

RLevelElem = FreeModElem


class NonMonomialNorm(ValueError):
    """Raised for norms of anything other than a single unit-coefficient monomial."""


class FreeTambara:
    def __init__(self, tower: GroupTower, gen_level: int):
        tower.check(gen_level)
        self.tower = tower
        self.gen_level = gen_level
        self.module = FreeModule(tower, gen_level, [Generator("1", tower.n, 0)], name="R")
        self.nvars = self.module.nvars

    # ------------------------------------------------------------ builders
    def elem(self, level: int, terms: dict) -> RLevelElem:
        """Element from ``{(exponents, sub): coefficient}``; keys are canonicalized."""
        out: dict = {}
        for (exponents, sub), coeff in terms.items():
            exponents = tuple(exponents)
            if len(exponents) != self.nvars:
                raise ValueError(f"exponent vector must have length {self.nvars}")
            if sub > min(self.module.vector_stabilizer(exponents), level):
                raise ValueError(f"q^{sub} is not defined for {exponents} at level {level}")
            cv, _ = self.module.canonical(level, exponents, 0, 0)
            key = (cv, 0, 0, sub)
            out[key] = out.get(key, 0) + coeff
        return FreeModElem(self.module, level, out)

    def zero(self, level: int) -> RLevelElem:
        return self.module.zero(level)

    def one(self, level: int) -> RLevelElem:
        return self.elem(level, {(self.module.zero_vector(), level): 1})

    def integer(self, level: int, value: int) -> RLevelElem:
        return self.one(level).scale(value)

    def burnside(self, burnside_elem: BurnsideElem) -> RLevelElem:
        zero = self.module.zero_vector()
        return self.elem(burnside_elem.level, {(zero, sub): coeff for sub, coeff in enumerate(burnside_elem.coeffs) if coeff})

    def variable(self, index: int) -> RLevelElem:
        """The variable x^{(index)} at the generator level."""
        exponents = [0] * self.nvars
        exponents[index % self.nvars] = 1
        return self.monomial(tuple(exponents), self.gen_level)

    def monomial(self, exponents: tuple, level: int) -> RLevelElem:
        """The element restricting to x^exponents; the exponents must be C_{p^level}-invariant."""
        return self.elem(level, {(tuple(exponents), level): 1})

    def unfold(self, sub: int, folded: tuple) -> tuple:
        """Exponent vector over G/C_{p^m} of nm_{C_{p^m}}^{C_{p^sub}}(x^folded), with folded indexed by G/C_{p^sub}."""
        size = self.tower.index(sub)
        if len(folded) != size:
            raise ValueError(f"vector over G/C_{self.tower.p}^{sub} must have length {size}")
        return tuple(folded[position % size] for position in range(self.nvars))

    def q_generator(self, sub: int, folded: tuple, level: int) -> RLevelElem:
        """tr_{C_{p^sub}}^{C_{p^level}}(nm_{C_{p^m}}^{C_{p^sub}}(x^folded))."""
        if not self.gen_level <= sub <= level:
            raise ValueError("need gen_level <= sub <= level")
        return self.monomial(self.unfold(sub, tuple(folded)), sub).tr(level)

    # ---------------------------------------------------------- operations
    def mul(self, left: RLevelElem, right: RLevelElem) -> RLevelElem:
        return right.times_ring(left)

    def res(self, elem: RLevelElem, to: int) -> RLevelElem:
        return elem.res(to)

    def tr(self, elem: RLevelElem, to: int) -> RLevelElem:
        return elem.tr(to)

    def weyl(self, elem: RLevelElem, shift: int = 1) -> RLevelElem:
        return elem.weyl(shift)

    def power(self, elem: RLevelElem, exponent: int) -> RLevelElem:
        out = self.one(elem.level)
        for _ in range(exponent):
            out = self.mul(out, elem)
        return out

    def norm_monomial(self, mono: RLevelElem, to: int) -> RLevelElem:
        """Norm up to C_{p^to} of a single monomial with unit coefficient."""
        source = mono.level
        if to < source:
            raise ValueError("norm goes up the subgroup lattice")
        if len(mono.terms) != 1:
            raise NonMonomialNorm("norm of a sum is outside the supported formulas")
        ((exponents, _gen, _shift, sub), coeff), = mono.terms.items()
        if coeff != 1 or sub != source:
            raise NonMonomialNorm("norm needs a unit-coefficient monomial, not a transfer or multiple")
        if not any(exponents):
            return self.one(to)
        if source < self.gen_level:
            raise NonMonomialNorm("norms start at the generator level or above")
        p, n = self.tower.p, self.tower.n
        total = list(self.module.zero_vector())
        step = p ** (n - to)
        for coset in range(p ** (to - source)):
            rot = rotate(exponents, coset * step)
            total = [running + added for running, added in zip(total, rot)]
        return self.monomial(tuple(total), to)

    def basis_of_degree(self, level: int, degree: int) -> list[RLevelElem]:
        return [FreeModElem(self.module, level, {key: 1}) for key in self.module.basis(level, degree)]

    def augment(self, elem: RLevelElem) -> BurnsideElem:
        coeffs = [0] * (elem.level + 1)
        for (exponents, _gen, _shift, sub), coeff in elem.terms.items():
            if not any(exponents):
                coeffs[sub] += coeff
        return BurnsideElem(self.tower.p, elem.level, tuple(coeffs))

    def degree(self, elem: RLevelElem) -> set[int]:
        return elem.degree_set()

    def polynomial(self, elem: RLevelElem) -> dict:
        """Underlying polynomial at level e as {exponent vector: integer}."""
        out: dict = {}
        for (exponents, _gen, _shift, _sub), coeff in elem.res(0).terms.items():
            out[exponents] = out.get(exponents, 0) + coeff
        return {exponents: coeff for exponents, coeff in out.items() if coeff}

    # ------------------------------------------------------------ printing
    def pretty(self, elem: RLevelElem) -> str:
        if elem.is_zero():
            return "0"
        items = sorted(elem.terms.items(), key=lambda item: (-sum(item[0][0]), item[0][3], tuple(reversed(item[0][0]))))
        parts = []
        for (exponents, _gen, _shift, sub), coeff in items:
            name = self.term_name(elem.level, exponents, sub)
            if name == "1":
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{coeff}{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def term_name(self, level: int, exponents: tuple, sub: int) -> str:
        p, n, gen_level = self.tower.p, self.tower.n, self.gen_level
        burnside_class = "1" if sub == level else ("t" if n == 1 else f"[C{p ** level}/{self.tower.name(sub)}]")
        if not any(exponents):
            return burnside_class
        if level <= gen_level or sub < gen_level:
            mono = "".join(
                f"x^({index})" if power == 1 else f"(x^({index}))^{power}" for index, power in enumerate(exponents) if power
            )
            if sub == level:
                return mono
            if sub <= gen_level and level <= gen_level:
                return f"{burnside_class}{mono}"
            return f"tr_{self.tower.name(sub)}({mono})"
        if (n, gen_level) == (1, 0) and level == 1:
            if sub == 0:
                if all(power < 10 for power in exponents):
                    return "t_" + "".join(str(power) for power in exponents)
                return "t_(" + ",".join(str(power) for power in exponents) + ")"
            power = exponents[0]
            return "n" if power == 1 else f"n^{power}"
        folded = exponents[: self.tower.index(sub)]
        return f"q^{sub}_(" + ",".join(str(power) for power in folded) + ")"


def plain_polynomial_product(first: dict, second: dict) -> dict:
    """Product of polynomials given as {exponent tuple: coefficient}."""
    out: dict = {}
    for left_exps, left_coeff in first.items():
        for right_exps, right_coeff in second.items():
            key = tuple(left_power + right_power for left_power, right_power in zip(left_exps, right_exps))
            out[key] = out.get(key, 0) + left_coeff * right_coeff
    return {exps: coeff for exps, coeff in out.items() if coeff}


def monomial_count(nvars: int, degree: int) -> int:
    return sum(1 for _ in compositions(degree, nvars))
