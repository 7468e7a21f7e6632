from collections import Counter

import pytest

from sympy_oracle import level_homology, presentation_level
from tambara_koszul.catalog import identify_as
from tambara_koszul.freemod import FreeModule, Generator
from tambara_koszul.homology import (
    THREADS_ENV,
    graded_exactness,
    homology_blocks,
    page_homology,
    page_presentations,
    resolution_complex,
    tor,
    worker_count,
)
from tambara_koszul.koszul import ChainComplex, MultiComplex, build_cp_cone
from tambara_koszul.lattice import GroupTower
from tambara_koszul.mackey import fingerprint, free_mackey
from tambara_koszul.verify import canonical_names


@pytest.fixture(scope="module")
def c3_rows():
    return tor(3, 1, 0)


def test_c3_tor_rows(c3_rows):
    tower = GroupTower(3, 1)
    assert [row.label(tower) for row in c3_rows] == ["A", "A{C3/e} + I", "A{C3/e}", "Zbar", "0"]
    assert all(row.identified for row in c3_rows if row.blocks)


def test_cone_homology_matches_the_resolution_route():
    cone = build_cp_cone(3).base_change()
    cone_rows = tor(3, 1, 0, complex_over_a=cone)
    tower = GroupTower(3, 1)
    assert [row.label(tower) for row in cone_rows[:4]] == ["A", "A{C3/e} + I", "A{C3/e}", "Zbar"]
    degree_three = homology_blocks(cone, 3)
    assert identify_as(degree_three[3], Counter({"Zbar": 1})) is not None


@pytest.mark.parametrize("p", [3, 5])
def test_cp_level_groups_agree_with_sympy(p):
    cc = resolution_complex(p, 1, 0).base_change()
    for position in range(len(cc.modules)):
        blocks = homology_blocks(cc, position)
        for degree in range(p + 1):
            for level in (0, 1):
                expected = level_homology(cc, position, level, degree)
                got = presentation_level(blocks[degree], level) if degree in blocks else (0, [])
                assert got == expected, (position, degree, level)


def test_c5_degree_three_carries_top_level_torsion():
    """Degree 3 for C5 is A_e^2 plus a copy of Z/5 at the top level.

    The Z/5 is confirmed by sympy on the degree-5 block; the reference table lists
    A_e^2 only (see the decision ledger).
    """
    cc = resolution_complex(5, 1, 0).base_change()
    assert level_homology(cc, 3, 1, 5) == (0, [5])
    row = tor(5, 1, 0, max_degree=3)[3]
    expected = canonical_names(GroupTower(5, 1), {"A_e": 2, "S_C5(Z/5)": 1})
    assert row.multiplicities() == expected


@pytest.mark.parametrize(
    "position, level, degree, expected",
    [
        (3, 2, 9, (1, [3])),
        (4, 1, 6, (0, [3, 3, 3])),
        (4, 2, 6, (0, [3])),
        (5, 2, 9, (0, [9])),
        (5, 1, 9, (0, [3])),
        (7, 2, 9, (0, [9])),
        (9, 2, 9, (1, [])),
    ],
)
def test_c9_torsion_blocks_agree_with_sympy(position, level, degree, expected):
    cc = resolution_complex(3, 2, 0).base_change()
    assert level_homology(cc, position, level, degree) == expected
    block = homology_blocks(cc, position).get(degree)
    assert presentation_level(block, level) == expected


def test_exactness_of_the_c3_cone_and_the_c9_complex():
    cone = graded_exactness(build_cp_cone(3), 6)
    assert cone.certified()
    c9 = graded_exactness(resolution_complex(3, 2, 0), 3)
    assert c9.certified()
    assert {entry.degree for entry in c9.entries} == {0, 1, 2, 3}


def test_exactness_report_of_the_unaugmented_lift_sees_degree_p():
    from tambara_koszul.koszul import build_cp_lift

    report = graded_exactness(build_cp_lift(3), 6, compare_unit=False)
    top = report.at(3, 1, 3)
    assert top is not None and top.defect == 1
    assert report.at(0, 0, 0).defect == 1


def test_empty_complex_gives_an_empty_report():
    assert graded_exactness(ChainComplex([], {}), 5).entries == []


def test_cutoff_zero_reports_degree_zero_only():
    report = graded_exactness(resolution_complex(3, 1, 0), 0)
    assert {entry.degree for entry in report.entries} == {0}
    assert report.certified()


def test_page_homology_of_a_single_cell():
    tower = GroupTower(3, 1)
    module = FreeModule(tower, None, [Generator("g", 0)])
    grid = MultiComplex(tower, None, (0,), (0,), {(0,): module}, {}, name="one cell")
    pages = page_homology(grid, [0])
    (cell,) = page_presentations(pages[1]).values()
    assert fingerprint(cell) == fingerprint(free_mackey(tower, [0]))


def test_thread_count_comes_from_the_environment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert worker_count() == 3
    monkeypatch.setenv(THREADS_ENV, "nonsense")
    assert worker_count() == 1
    monkeypatch.setenv(THREADS_ENV, "2")
    threaded = graded_exactness(build_cp_cone(3), 4)
    monkeypatch.delenv(THREADS_ENV)
    serial = graded_exactness(build_cp_cone(3), 4)
    assert threaded.to_json() == serial.to_json()
