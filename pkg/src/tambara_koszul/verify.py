"""Runners for the named verification cases; each returns a list of checks."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

from . import fixtures
from .catalog import catalog_entry, identify_as, match_catalog
from .freemod import FreeModElem
from .homology import (
    graded_exactness,
    page_homology,
    page_presentations,
    resolution_complex,
    tor,
)
from .koszul import build_cp_lift, build_general
from .lattice import GroupTower
from .intmat import SparseIntMatrix, rank
from .tambara import FreeTambara


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": _plain(self.expected),
            "actual": _plain(self.actual),
            "passed": self.passed,
            "detail": self.detail,
        }


def _plain(value):
    if isinstance(value, Counter):
        return dict(sorted(value.items()))
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


@dataclass
class CaseResult:
    case: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def first_failure(self) -> Check | None:
        for check in self.checks:
            if not check.passed:
                return check
        return None


def canonical_names(tower: GroupTower, names: dict) -> Counter:
    out: Counter = Counter()
    for name, mult in names.items():
        if mult:
            out[catalog_entry(tower, name).name] += mult
    return out


def compare_tor_rows(tower: GroupTower, rows, expected_rows: list, label: str) -> list[Check]:
    checks = []
    for degree, expected in enumerate(expected_rows):
        want = canonical_names(tower, expected)
        row = rows[degree] if degree < len(rows) else None
        if row is None or not row.blocks:
            got = Counter()
            ok = not want
            checks.append(Check(f"{label} degree {degree}", want, got, ok))
            continue
        got = row.multiplicities() if row.identified else Counter({"unidentified": 1})
        ok = row.identified and got == want
        detail = ""
        if not ok and want:
            # Decompositions need not be unique; accept any certified isomorphism.
            cert = identify_as(row.presentation, want)
            ok = cert is not None
            detail = "certified against the expected sum" if ok else "no isomorphism onto the expected sum"
        elif ok:
            detail = "certificates " + ",".join(sorted(row.certificate_digests().values()))
        checks.append(Check(f"{label} degree {degree}", want, got, ok, detail))
    return checks


def run_green_fixed(p: int) -> list[Check]:
    tower = GroupTower(p, 1)
    rows = tor(p, 1, 1, max_degree=5)
    return compare_tor_rows(tower, rows, fixtures.GREEN_FIXED[p]["rows"], f"green fixed C{p}")


def run_cp_tor(p: int) -> list[Check]:
    tower = GroupTower(p, 1)
    rows = tor(p, 1, 0)
    return compare_tor_rows(tower, rows, fixtures.CP_TOR[p]["rows"], f"C{p} Tor")


def run_c9_tor() -> list[Check]:
    tower = GroupTower(3, 2)
    rows = tor(3, 2, 0)
    checks = compare_tor_rows(tower, rows, fixtures.C9_TOR["rows"], "C9 Tor")
    extra = [row for row in rows[len(fixtures.C9_TOR["rows"]):] if row.blocks]
    checks.append(Check("C9 Tor vanishes above degree 9", 0, len(extra), not extra))
    return checks


def _cell_check(tower, label, key, pres, expected) -> Check:
    want = canonical_names(tower, expected) if expected else Counter()
    if pres.is_zero():
        return Check(f"{label} {key}", want, Counter(), not want)
    if not want:
        ident = match_catalog(pres)
        return Check(f"{label} {key}", want, ident.multiplicities if ident.identified else pres.level_names(), False,
                     "expected zero")
    cert = identify_as(pres, want)
    if cert is not None:
        return Check(f"{label} {key}", want, want, True, "certificate " + cert.digest())
    ident = match_catalog(pres)
    got = ident.multiplicities if ident.identified else Counter({"unidentified": 1})
    return Check(f"{label} {key}", want, got, False, "levels " + " | ".join(pres.level_names()))


def run_c9_pages() -> list[Check]:
    tower = GroupTower(3, 2)
    mc = build_general(3, 2, 0).base_change()
    pages = page_homology(mc, [0, 1])
    checks = []
    for stage, label, expected in ((1, "horizontal", fixtures.C9_PAGES["horizontal"]),
                                   (2, "vertical", fixtures.C9_PAGES["vertical"])):
        pres = page_presentations(pages[stage])
        for key in sorted(pres, key=lambda cell: (-cell[2], cell[1], -cell[0])):
            checks.append(_cell_check(tower, label, key, pres[key], expected.get(key)))
    return checks


def run_exactness(p: int, n: int, cutoff: int) -> list[Check]:
    cc = resolution_complex(p, n, 0)
    report = graded_exactness(cc, cutoff)
    bad = [(entry.position, entry.level, entry.degree, entry.defect, entry.torsion) for entry in report.nonzero()]
    return [Check(f"exactness of the C{p ** n} resolution up to degree {cutoff}", [], bad, not bad,
                  f"{len(report.entries)} (position, level, degree) triples")]


def multiplication_rank(ring: FreeTambara, factor: FreeModElem, level: int, degree: int) -> int:
    """Rank of multiplication by a degree-0 element on the degree-d part of one level."""
    basis = ring.module.basis(level, degree)
    index = ring.module.basis_index(level, degree)
    cols = []
    for key in basis:
        prod = ring.mul(factor, FreeModElem(ring.module, level, {key: 1}))
        cols.append({index[image_key]: coeff for image_key, coeff in prod.terms.items()})
    return rank(SparseIntMatrix.from_columns(cols, len(index)))


def run_lift_homology(p: int = 3) -> list[Check]:
    """Truncated homology of the first lift: H_0 = A + I per norm power, H_3 = (t - p) R."""
    cutoff = fixtures.LIFT_HOMOLOGY_3["cutoff"]
    lift = build_cp_lift(p)
    tower = lift.tower
    report = graded_exactness(lift, cutoff, compare_unit=False)
    ring = FreeTambara(tower, 0)
    top = tower.n
    t_elem = ring.elem(top, {(ring.module.zero_vector(), 0): 1}) - ring.integer(top, p)
    checks = []
    for entry in report.entries:
        if entry.position == 0:
            want = 0
            if entry.degree == 0:
                want = entry.level + 1
            elif entry.level == top and entry.degree % p == 0:
                want = 1
        elif entry.position == p and entry.level == top and entry.degree >= p:
            want = multiplication_rank(ring, t_elem, top, entry.degree - p)
        else:
            want = 0
        got = entry.defect
        ok = got == want and not entry.torsion
        checks.append(Check(f"lift H_{entry.position} level {entry.level} degree {entry.degree}", want, got, ok,
                            f"torsion {entry.torsion}" if entry.torsion else ""))
    return checks


RUNNERS = {
    "green-fixed-c2": lambda: run_green_fixed(2),
    "green-fixed-c3": lambda: run_green_fixed(3),
    "cp-tor-3": lambda: run_cp_tor(3),
    "cp-tor-5": lambda: run_cp_tor(5),
    "c9-tor": run_c9_tor,
    "c9-pages": run_c9_pages,
    "cone-exactness-3": lambda: run_exactness(3, 1, fixtures.CONE_EXACTNESS_3["cutoff"]),
    "c9-exactness": lambda: run_exactness(3, 2, fixtures.C9_EXACTNESS["cutoff"]),
    "lemma-hkfirst-3": lambda: run_lift_homology(3),
}


def run_case(name: str) -> CaseResult:
    if name not in RUNNERS:
        raise KeyError(name)
    start = time.perf_counter()
    checks = RUNNERS[name]()
    return CaseResult(name, checks, time.perf_counter() - start)
