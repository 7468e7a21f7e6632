from collections import Counter

import pytest

from tambara_koszul import fixtures
from tambara_koszul.lattice import GroupTower
from tambara_koszul.verify import RUNNERS, canonical_names, run_case


def test_every_case_has_a_runner():
    assert set(RUNNERS) == set(fixtures.CASES)
    with pytest.raises(KeyError):
        run_case("missing")


@pytest.mark.parametrize("case", ["green-fixed-c2", "green-fixed-c3", "cp-tor-3", "cone-exactness-3",
                                  "c9-exactness", "lemma-hkfirst-3"])
def test_reproduced_cases_pass(case):
    result = run_case(case)
    assert result.passed, result.first_failure()
    assert result.checks


def test_mismatch_is_reported_with_its_detail():
    result = run_case("cp-tor-5")
    failure = result.first_failure()
    assert not result.passed
    assert failure.name == "C5 Tor degree 3"
    assert failure.to_json()["actual"] == {"A{C5/e}": 2, "S_C5(Z/5)": 1}


def test_fixture_sources_are_tagged():
    tagged = [fixtures.CP_TOR[3], fixtures.CP_TOR[5], fixtures.C9_TOR, fixtures.C9_PAGES,
              fixtures.CONE_EXACTNESS_3, fixtures.C9_EXACTNESS, fixtures.LIFT_HOMOLOGY_3,
              fixtures.GREEN_FIXED[2], fixtures.GREEN_FIXED[3]]
    assert all(datum["source"] in ("reference", "derived") for datum in tagged)


def test_expected_names_resolve_in_the_catalog():
    tower = GroupTower(3, 2)
    for row in fixtures.C9_TOR["rows"]:
        canonical_names(tower, row)
    for page in ("horizontal", "vertical"):
        for names in fixtures.C9_PAGES[page].values():
            canonical_names(tower, names)
    assert canonical_names(tower, {"A_e": 2, "L": 0}) == Counter({"A{C9/e}": 2})
