"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from functools import lru_cache

from hypothesis import strategies as st

from tambara_koszul.freemod import FreeModElem
from tambara_koszul.lattice import GroupTower
from tambara_koszul.tambara import FreeTambara

# (p, n, m) triples small enough for fast random arithmetic.
RING_PARAMETERS = [(3, 1, 0), (5, 1, 0), (3, 2, 0), (3, 2, 1), (2, 1, 0), (2, 2, 1), (2, 2, 0)]
CONFLUENCE_PARAMETERS = [(3, 1, 0), (5, 1, 0), (3, 2, 0)]


@lru_cache(maxsize=None)
def ring(p: int, n: int, gen_level: int) -> FreeTambara:
    return FreeTambara(GroupTower(p, n), gen_level)


@st.composite
def ring_elements(draw, tambara: FreeTambara, level: int, max_degree: int = 2, max_terms: int = 4):
    terms: dict = {}
    for _ in range(draw(st.integers(0, max_terms))):
        degree = draw(st.integers(0, max_degree))
        basis = tambara.module.basis(level, degree)
        if not basis:
            continue
        key = draw(st.sampled_from(basis))
        terms[key] = terms.get(key, 0) + draw(st.integers(-3, 3))
    return FreeModElem(tambara.module, level, terms)


@st.composite
def ring_setups(draw, parameters=RING_PARAMETERS):
    p, n, gen_level = draw(st.sampled_from(parameters))
    return p, n, gen_level, ring(p, n, gen_level)
