"""JSON report documents and their plain-text rendering.

Every document carries ``schema``/``version``/``kind`` and is validated
against the shipped JSON schema before it leaves the package.  The text
rendering is computed from the JSON document alone, so both output formats
always agree.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .catalog import catalog_entry
from .homology import graded_exactness, resolution_complex, tor
from .lattice import GroupTower
from .mackey import MackeyPresentation, fingerprint, zero_presentation
from .verify import CaseResult

SCHEMA_NAME = "tambara-koszul/report"
SCHEMA_VERSION = 1


@lru_cache(maxsize=1)
def report_schema() -> dict:
    text = resources.files("tambara_koszul").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def validate(document: dict) -> dict:
    jsonschema.validate(document, report_schema())
    return document


def _header(kind: str) -> dict:
    return {"schema": SCHEMA_NAME, "version": SCHEMA_VERSION, "kind": kind}


def _parameters(p: int, n: int, gen_level: int) -> dict:
    return {"p": p, "n": n, "gen_level": gen_level}


# --------------------------------------------------------------------------
# Builders
# --------------------------------------------------------------------------


def tor_document(p: int, n: int, gen_level: int = 0, max_degree: int | None = None) -> dict:
    tower = GroupTower(p, n)
    rows = tor(p, n, gen_level, max_degree=max_degree)
    out_rows = []
    for row in rows:
        blocks = []
        for degree in sorted(row.blocks):
            pres = row.blocks[degree]
            ident = row.identifications.get(degree)
            identified = ident is not None and ident.identified
            blocks.append(
                {
                    "internal_degree": degree,
                    "label": ident.label(tower) if ident is not None else "unidentified",
                    "fingerprint": fingerprint(pres).digest(),
                    "certificate": ident.certificate.digest() if identified else None,
                    "presentation": pres.to_json(),
                }
            )
        out_rows.append(
            {
                "degree": row.degree,
                "label": row.label(tower),
                "identified": row.identified,
                "summands": dict(sorted(row.multiplicities().items())) if row.identified else {},
                "blocks": blocks,
            }
        )
    doc = _header("tor")
    doc.update({"parameters": _parameters(p, n, gen_level), "rows": out_rows})
    return validate(doc)


def verify_document(result: CaseResult) -> dict:
    failure = result.first_failure()
    doc = _header("verify")
    doc.update(
        {
            "case": result.case,
            "passed": result.passed,
            "seconds": round(result.seconds, 3),
            "checks": [check.to_json() for check in result.checks],
            "first_failure": failure.to_json() if failure is not None else None,
        }
    )
    return validate(doc)


def lewis_document(target: str, presentation: MackeyPresentation, aliases: tuple = ()) -> dict:
    doc = _header("lewis")
    doc.update({"target": target, "aliases": list(aliases), "presentation": presentation.to_json()})
    return validate(doc)


def resolve_lewis_target(tower: GroupTower, target: str) -> tuple[MackeyPresentation, tuple]:
    """A catalog name or alias, or ``tor:K`` for the computed Tor_K."""
    if target.startswith("tor:"):
        degree = int(target[4:])
        rows = tor(tower.p, tower.n, 0, max_degree=degree, identify=False)
        pres = rows[degree].presentation
        if pres is None:
            pres = zero_presentation(tower, name=f"Tor_{degree}")
        return pres, ()
    entry = catalog_entry(tower, target)
    return entry.presentation, (entry.name,) + tuple(entry.aliases)


def resolution_document(p: int, n: int, gen_level: int = 0, check_exactness: bool = False,
                        cutoff: int = 3) -> dict:
    cc = resolution_complex(p, n, gen_level)
    exactness = graded_exactness(cc, cutoff).to_json() if check_exactness else None
    doc = _header("resolution")
    doc.update(
        {
            "parameters": _parameters(p, n, gen_level),
            "length": cc.length(),
            "positions": cc.summary(),
            "exactness": exactness,
        }
    )
    return validate(doc)


# --------------------------------------------------------------------------
# Text rendering
# --------------------------------------------------------------------------


def _lewis_text(data: dict) -> str:
    return MackeyPresentation.from_json(data).lewis()


def _render_tor(doc: dict) -> list[str]:
    par = doc["parameters"]
    lines = [f"Tor over the free Tambara functor on C{par['p'] ** par['n']}, generator level {par['gen_level']}"]
    for row in doc["rows"]:
        lines.append(f"  Tor_{row['degree']} = {row['label']}")
        for block in row["blocks"]:
            cert = block["certificate"] or "none"
            lines.append(f"      internal degree {block['internal_degree']}: {block['label']}  [certificate {cert}]")
    return lines


def _render_verify(doc: dict) -> list[str]:
    status = "PASS" if doc["passed"] else "FAIL"
    passed = sum(1 for item in doc["checks"] if item["passed"])
    lines = [f"{doc['case']}: {status} ({passed}/{len(doc['checks'])} checks, {doc['seconds']:.1f}s)"]
    for check in doc["checks"]:
        if not check["passed"]:
            lines.append(f"  FAIL {check['name']}: expected {check['expected']}, got {check['actual']}")
            if check["detail"]:
                lines.append(f"       {check['detail']}")
    return lines


def _render_lewis(doc: dict) -> list[str]:
    lines = [doc["target"]]
    others = [alias for alias in doc.get("aliases", []) if alias != doc["target"]]
    if others:
        lines.append("  also known as " + ", ".join(others))
    lines.append(_lewis_text(doc["presentation"]))
    return lines


def _render_resolution(doc: dict) -> list[str]:
    par = doc["parameters"]
    lines = [f"Koszul resolution for C{par['p'] ** par['n']}, generator level {par['gen_level']}, "
             f"length {doc['length']}"]
    for pos in doc["positions"]:
        noun = "orbit generator" if pos["count"] == 1 else "orbit generators"
        lines.append(f"  F_{pos['degree']}: {pos['generators']}  ({pos['count']} {noun})")
    exact = doc.get("exactness")
    if exact is not None:
        verdict = "exact" if exact["certified"] else "NOT exact"
        lines.append(f"  augmented complex {verdict} through internal degree {exact['cutoff']}")
        for entry in exact["entries"]:
            if entry["defect"] or entry["torsion"]:
                lines.append(
                    f"    position {entry['position']} level {entry['level']} degree {entry['degree']}: "
                    f"defect {entry['defect']}, torsion {entry['torsion']}"
                )
    return lines


_RENDERERS = {
    "tor": _render_tor,
    "verify": _render_verify,
    "lewis": _render_lewis,
    "resolution": _render_resolution,
}


def render_text(doc: dict) -> str:
    validate(doc)
    return "\n".join(_RENDERERS[doc["kind"]](doc))


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


__all__ = [
    "lewis_document",
    "render_json",
    "render_text",
    "resolution_document",
    "resolve_lewis_target",
    "tor_document",
    "validate",
    "verify_document",
]
