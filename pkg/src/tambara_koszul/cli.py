"""Command line interface: ``tambara-koszul tor|verify|lewis|resolution``.

Exit codes: 0 when the command succeeds (for ``verify``, when every check
passes), 1 when a verification case finds a mismatch, 2 for usage errors and
unsupported parameters.  ``TAMBARA_KOSZUL_THREADS`` sets the worker count of
the homology engine.
"""

from __future__ import annotations

import sys

import click

from . import fixtures
from .koszul import BuildError
from .lattice import GroupTower
from .report import (
    lewis_document,
    render_json,
    render_text,
    resolution_document,
    resolve_lewis_target,
    tor_document,
    verify_document,
)
from .verify import run_case

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

_format_option = click.option(
    "--format", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True,
    help="Plain text, or the JSON report document.",
)


def _emit(doc: dict, output_format: str) -> None:
    click.echo(render_json(doc) if output_format == "json" else render_text(doc))


def _tower(p: int, n: int) -> GroupTower:
    try:
        return GroupTower(p, n)
    except ValueError as err:
        raise click.UsageError(str(err)) from err


def _check_gen_level(n: int, gen_level: int) -> None:
    if not 0 <= gen_level <= n:
        raise click.UsageError(f"--gen-level must lie in 0..{n}")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def cli() -> None:
    """Equivariant Koszul complexes and Tor computations for the cyclic group C_{p^n}."""


@cli.command("tor")
@click.option("-p", type=int, required=True, help="Prime p.")
@click.option("-n", type=int, required=True, help="Exponent n of the group C_{p^n}.")
@click.option("--gen-level", type=int, default=0, show_default=True, help="Subgroup exponent of the generator orbit C_{p^n}/C_{p^gen_level}.")
@click.option("--max-degree", type=int, default=None, help="Largest homological degree to report.")
@_format_option
def tor_command(p: int, n: int, gen_level: int, max_degree: int | None, output_format: str) -> None:
    """Compute Tor_*(A, A) and name every summand."""
    _tower(p, n)
    _check_gen_level(n, gen_level)
    try:
        doc = tor_document(p, n, gen_level, max_degree)
    except BuildError as err:
        raise click.UsageError(str(err)) from err
    _emit(doc, output_format)


@cli.command("verify")
@click.argument("case", type=click.Choice(list(fixtures.CASES)))
@_format_option
def verify_command(case: str, output_format: str) -> None:
    """Run one named verification case; exit 1 on any mismatch."""
    doc = verify_document(run_case(case))
    _emit(doc, output_format)
    sys.exit(EXIT_OK if doc["passed"] else EXIT_MISMATCH)


@cli.command("lewis")
@click.argument("name")
@click.option("-p", type=int, default=3, show_default=True, help="Prime p.")
@click.option("-n", type=int, default=2, show_default=True, help="Exponent n of the group C_{p^n}.")
@_format_option
def lewis_command(name: str, p: int, n: int, output_format: str) -> None:
    """Lewis diagram of a catalog functor, or of ``tor:K`` for the computed Tor_K."""
    tower = _tower(p, n)
    try:
        pres, aliases = resolve_lewis_target(tower, name)
    except KeyError as err:
        raise click.BadParameter(f"unknown functor {name!r}", param_hint="NAME") from err
    except (ValueError, IndexError, BuildError) as err:
        raise click.BadParameter(str(err) or f"bad target {name!r}", param_hint="NAME") from err
    _emit(lewis_document(name, pres, aliases), output_format)


@cli.command("resolution")
@click.option("-p", type=int, required=True, help="Prime p.")
@click.option("-n", type=int, required=True, help="Exponent n of the group C_{p^n}.")
@click.option("--gen-level", type=int, default=0, show_default=True, help="Subgroup exponent of the generator orbit.")
@click.option("--check-exactness", is_flag=True, help="Check exactness of the augmented complex.")
@click.option("--cutoff", type=int, default=3, show_default=True, help="Internal degree cutoff for the check.")
@_format_option
def resolution_command(p: int, n: int, gen_level: int, check_exactness: bool, cutoff: int,
                       output_format: str) -> None:
    """Describe the Koszul resolution; optionally check exactness up to a cutoff."""
    _tower(p, n)
    _check_gen_level(n, gen_level)
    try:
        doc = resolution_document(p, n, gen_level, check_exactness, cutoff)
    except BuildError as err:
        raise click.UsageError(str(err)) from err
    _emit(doc, output_format)
    if check_exactness and not doc["exactness"]["certified"]:
        sys.exit(EXIT_MISMATCH)


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="tambara-koszul", standalone_mode=False)
    except click.UsageError as err:
        err.show()
        return EXIT_USAGE
    except click.exceptions.Exit as err:
        return err.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
