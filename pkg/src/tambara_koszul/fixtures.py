"""Expected values for the verification cases.

Each datum carries a ``source`` tag: ``"reference"`` for reference values the
computation is checked against, ``"derived"`` for values obtained by an
independent calculation described in ``note``.
"""

from __future__ import annotations

from collections import Counter

CASES = (
    "green-fixed-c2",
    "green-fixed-c3",
    "cp-tor-3",
    "cp-tor-5",
    "c9-tor",
    "c9-pages",
    "cone-exactness-3",
    "c9-exactness",
    "lemma-hkfirst-3",
)


GREEN_FIXED = {
    2: {"source": "reference", "rows": [{"A": 1}, {"A": 1}, {}, {}, {}, {}]},
    3: {"source": "reference", "rows": [{"A": 1}, {"A": 1}, {}, {}, {}, {}]},
}

CP_TOR = {
    3: {
        "source": "reference",
        "rows": [{"A": 1}, {"A_e": 1, "I": 1}, {"A_e": 1}, {"Zbar": 1}],
    },
    5: {
        "source": "reference",
        "rows": [{"A": 1}, {"A_e": 1, "I": 1}, {"A_e": 2}, {"A_e": 2}, {"A_e": 1}, {"Zbar": 1}],
    },
}

C9_TOR = {
    "source": "reference",
    "rows": [
        {"A": 1},
        {"A_e": 1, "A{C9/C3}/res_e": 1, "A/res_C3": 1},
        {"A_e": 4, "A{C9/C3}/res_e": 1},
        {"A_e": 9, "Zbar{C9/C3}": 1, "Inf_C3^C9 Z": 1},
        {"A_e": 14, "L": 2},
        {"A_e": 14, "L": 1},
        {"A_e": 9, "Zbar{C9/C3}": 1},
        {"A_e": 4, "L": 1},
        {"A_e": 1},
        {"Zbar": 1},
    ],
}

# Page cells are keyed (column, middle, top): column counts the index set in the C9/e
# direction, middle the one in the C9/C3 direction, top the top direction.  Cells
# not listed are expected to vanish.  Reference labels are mapped to catalog
# names as follows: "A/res" in the horizontal page means A{C9/C3}/res_e (the
# only reading compatible with the cell's level ranks); ker(res^{C9}_e)/res^{C9}_{C3}
# is read as the quotient of ker(res^{C9}_e) by the sub-functor generated at
# level C3, which is A/res_C3.
_FREE_ROW_HORIZONTAL = {
    9: {"A": 1},
    8: {"A_e": 1},
    7: {"A_e": 4},
    6: {"A_e": 9, "A{C9/C3}": 1},
    5: {"A_e": 14},
    4: {"A_e": 14},
    3: {"A_e": 9, "A{C9/C3}": 1},
    2: {"A_e": 4},
    1: {"A_e": 1},
    0: {"A": 1},
}


def _horizontal_cells() -> dict:
    cells = {}
    for column, names in _FREE_ROW_HORIZONTAL.items():
        cells[(column, 0, 0)] = names
    cells[(9, 1, 0)] = {"ker(res^C3_e)": 1}
    cells[(6, 1, 0)] = {"ker(res^C3_e)": 2, "A{C9/C3}/res_e": 1}
    cells[(3, 1, 0)] = {"ker(res^C3_e)": 1, "A{C9/C3}/res_e": 2}
    cells[(0, 1, 0)] = {"A{C9/C3}/res_e": 1}
    cells[(9, 2, 0)] = {"ker(res^C3_e)": 1}
    cells[(6, 2, 0)] = {"ker(res^C3_e)": 3}
    cells[(3, 2, 0)] = {"ker(res^C3_e)": 2, "A{C9/C3}/res_e": 1}
    cells[(0, 2, 0)] = {"A{C9/C3}/res_e": 1}
    for top in (0, 1):
        cells[(9, 3, top)] = {"ker(res^C9_e)": 1}
        cells[(6, 3, top)] = {"ker(res^C3_e)": 1}
        cells[(3, 3, top)] = {"ker(res^C3_e)": 1}
        cells[(0, 3, top)] = {"A/res_e": 1}
    cells[(9, 0, 1)] = {"ker(res^C9_e)": 1}
    cells[(6, 0, 1)] = {"ker(res^C3_e)": 1}
    cells[(3, 0, 1)] = {"ker(res^C3_e)": 1}
    cells[(0, 0, 1)] = {"A/res_e": 1}
    for middle in (1, 2):
        # The reference diagram lists three copies in column 9 as well, but the cell
        # there is a single C9/C3 orbit, too small for that; one copy is the
        # reading consistent with the ranks.
        cells[(9, middle, 1)] = {"ker(res^C3_e)": 1}
        for column in (6, 3):
            cells[(column, middle, 1)] = {"ker(res^C3_e)": 3}
        cells[(0, middle, 1)] = {"A{C9/C3}/res_e": 1}
    return cells


def _vertical_cells() -> dict:
    cells = {}
    cells[(9, 0, 1)] = {"A/res_C3": 1}
    cells[(0, 0, 1)] = {"A/res_C3": 1}
    cells[(9, 3, 1)] = {"ker(res^C9_e)": 1}
    cells[(0, 3, 1)] = {"ker(res^C9_C3)": 1}
    cells[(9, 0, 0)] = {"A/<ker res^C3_e>": 1}
    cells[(8, 0, 0)] = {"A_e": 1}
    cells[(7, 0, 0)] = {"A_e": 4}
    cells[(6, 0, 0)] = {"A_e": 9, "Zbar{C9/C3}": 1}
    cells[(5, 0, 0)] = {"A_e": 14}
    cells[(4, 0, 0)] = {"A_e": 14}
    cells[(3, 0, 0)] = {"A_e": 9, "Zbar{C9/C3}": 1}
    cells[(2, 0, 0)] = {"A_e": 4}
    cells[(1, 0, 0)] = {"A_e": 1}
    cells[(0, 0, 0)] = {"A": 1}
    cells[(6, 1, 0)] = {"L": 1}
    cells[(3, 1, 0)] = {"L": 2}
    cells[(0, 1, 0)] = {"A{C9/C3}/res_e": 1}
    cells[(3, 2, 0)] = {"L": 1}
    cells[(0, 2, 0)] = {"A{C9/C3}/res_e": 1}
    cells[(9, 3, 0)] = {"ker(res^C9_e)": 1}
    cells[(0, 3, 0)] = {"A/res_e": 1}
    return cells


C9_PAGES = {
    "source": "reference",
    "horizontal": _horizontal_cells(),
    "vertical": _vertical_cells(),
    "shape": (9, 3, 1),
}

CONE_EXACTNESS_3 = {"source": "reference", "cutoff": 6, "p": 3}
C9_EXACTNESS = {"source": "reference", "cutoff": 3}

LIFT_HOMOLOGY_3 = {
    "source": "reference",
    "cutoff": 6,
    "note": "H_0 is A plus one copy of I for each norm power n^i in the window; "
    "H_3 is the sub-module (t - p) R of the top generator",
}


def expected_counter(names: dict) -> Counter:
    return Counter({name: mult for name, mult in names.items() if mult})
