"""
Command-line front end.

    python cli.py classify boost.txt
    python cli.py conjugate a.txt b.txt
    python cli.py census --n-min 2 --n-max 30 --verify
    python cli.py moebius '[["1","1"],["0","1"]]' --lift
    python cli.py an '{"a": ["3", "4"], "r": "2"}'

Reports go to stdout, logs to stderr. Library errors exit with code 2 and a
JSON error object; anything unexpected exits with code 1.
"""

import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Optional

import typer

import config
import reports
from angroup import ANElement
from errors import DiagnosticError, HyperIsoError, ParseError, RangeError
from moebius import Orientation, parse_moebius_json
from qlinalg import parse_matrix_text, validate_isometry
from zclass import census_by_enumeration, count_zclasses

log = logging.getLogger('cli')

app = typer.Typer(help='Classify isometries of hyperbolic space with exact arithmetic.',
                  add_completion=False)


class Format(str, Enum):
    JSON = 'json'
    CSV = 'csv'
    TEXT = 'text'


@app.callback()
def main(verbose: bool = typer.Option(False, '--verbose', '-v', help='Log debug output to stderr.')):
    config.setup_logging('DEBUG' if verbose else None)


# --- HELPERS ---
def _emit(text):
    typer.echo(text, nl=False)


def _run(build):
    """Run a command body; errors become a JSON object and a nonzero exit."""
    try:
        build()
    except HyperIsoError as exc:
        log.info("%s: %s", exc.code, exc.message)
        _emit(reports.dumps(reports.error_payload(exc.to_dict())))
        raise typer.Exit(2)
    except typer.Exit:
        raise
    except Exception as exc:
        log.exception('unexpected failure')
        _emit(reports.dumps(reports.error_payload({'type': 'InternalError', 'message': str(exc)})))
        raise typer.Exit(1)


def _read(source):
    if source == '-':
        return sys.stdin.read()
    try:
        with open(source, encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}", path=source)


def _load_isometry(source):
    matrix = parse_matrix_text(_read(source))
    log.info("Loaded %dx%d matrix from %s", matrix.dim, matrix.dim, source)
    return validate_isometry(matrix)


def _load_json(argument):
    """A JSON literal, a file holding one, or '-' for stdin."""
    text = _read(argument) if argument == '-' or os.path.isfile(argument) else argument
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)


# --- COMMANDS ---
@app.command()
def classify(
    source: str = typer.Argument('-', help="Matrix file, or '-' for stdin."),
    format: Format = typer.Option(Format.JSON, '--format', help='json or text.'),
    decompose: bool = typer.Option(False, '--decompose', help='Include the invariant subspaces.'),
):
    """Dynamical type, z-class and centralizer of one isometry."""
    def build():
        T = _load_isometry(source)
        report = reports.classify_report(T, source, decompose=decompose)
        _emit(reports.classify_text(report) if format is Format.TEXT else reports.dumps(report))

    _run(build)


@app.command()
def conjugate(
    first: str = typer.Argument(..., help='First matrix file.'),
    second: str = typer.Argument(..., help='Second matrix file.'),
    format: Format = typer.Option(Format.JSON, '--format', help='json or text.'),
):
    """Decide conjugacy and z-class equality of two isometries."""
    def build():
        report = reports.conjugate_report(_load_isometry(first), _load_isometry(second))
        _emit(reports.conjugate_text(report) if format is Format.TEXT else reports.dumps(report))

    _run(build)


@app.command()
def census(
    n_min: int = typer.Option(2, '--n-min', help='Smallest n.'),
    n_max: Optional[int] = typer.Option(None, '--n-max', help='Largest n (defaults to --n-min).'),
    format: Format = typer.Option(Format.CSV, '--format', help='csv, json or text.'),
    verify: bool = typer.Option(False, '--verify', help='Re-derive every row by enumeration.'),
):
    """Number of z-classes of each type for every n in range."""
    def build():
        top = n_min if n_max is None else n_max
        if not 2 <= n_min <= top <= config.CENSUS_MAX_N:
            raise RangeError(f"need 2 <= n_min <= n_max <= {config.CENSUS_MAX_N}, got {n_min}..{top}",
                             n_min=n_min, n_max=top)
        ns = list(range(n_min, top + 1))
        rows = [count_zclasses(n) for n in ns]
        verified = None
        if verify:
            with ThreadPoolExecutor(max_workers=config.VERIFY_WORKERS) as pool:
                enumerated = list(pool.map(census_by_enumeration, ns))
            for row, check in zip(rows, enumerated):
                if row != check:
                    raise DiagnosticError(f"census mismatch at n={row.n}: formula {row.to_json()} "
                                          f"vs enumeration {check.to_json()}", n=row.n)
            verified = True
            log.info("Census verified for n=%d..%d", n_min, top)
        if format is Format.CSV:
            _emit(reports.census_csv(rows))
        elif format is Format.TEXT:
            _emit(reports.census_text(rows))
        else:
            _emit(reports.dumps(reports.census_json(rows, verified)))

    _run(build)


@app.command()
def moebius(
    matrix: str = typer.Argument(..., help="2x2 JSON matrix: literal, file, or '-'."),
    reversing: bool = typer.Option(False, '--reversing', help='Act through z -> conj(z) first.'),
    lift: bool = typer.Option(False, '--lift', help='Include the lift to O(3,1) and cross-check it.'),
    h2: bool = typer.Option(False, '--h2', help='Also classify as an isometry of H^2.'),
):
    """Classify a Moebius transformation as an isometry of H^3."""
    def build():
        orientation = Orientation.REVERSING if reversing else Orientation.PRESERVING
        M = parse_moebius_json(_load_json(matrix), orientation)
        _emit(reports.dumps(reports.moebius_report(M, lift=lift, h2=h2)))

    _run(build)


@app.command()
def an(
    element: str = typer.Argument(..., help='{"a": [...], "r": ...}: literal, file, or \'-\'.'),
):
    """z-class and conjugacy representative of an element of AN."""
    def build():
        e = ANElement.from_json(_load_json(element))
        _emit(reports.dumps(reports.an_report(e)))

    _run(build)


if __name__ == '__main__':
    app()
