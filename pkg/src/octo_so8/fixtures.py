"""Loaders for the bundled transcription fixtures.

The files under ``data/`` are verbatim transcriptions of the reference
tables and displayed matrices that this package re-derives.  Parsers
validate shape and token grammar but never repair contents — any
oddity in a transcription is exactly what the claim checkers are meant
to surface, so "fixing" it here would defeat the point.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .exact import ScalarParseError
from .matrices import SignedTable, SquareMatrix
from .symbolic import parse_linear_form, parse_theta_affine

# The complete bundled set.  load_fixtures() requires every one of
# these to be present, whether reading the package data or a user
# directory, so a verification run always covers the full corpus.
FIXTURE_FILES = (
    "eq2_sigma.txt",
    "eq6_X.txt",
    "eq12_R12.txt",
    "eq13_delta.txt",
    "eq14_map.txt",
    "eq21_Y1.txt",
    "eq21_Y2.txt",
    "eq23_C.txt",
    "eq24_D.txt",
    "table1.txt",
    "table2.txt",
)


class FixtureError(ValueError):
    """A fixture file is missing, mis-shaped, or has a bad token."""


def _fail(filename: str, lineno: int, msg: str):
    raise FixtureError(f"{filename}:{lineno}: {msg}")


def _content_lines(text: str):
    # (lineno, line) pairs for non-blank lines; lineno is the real file
    # line so FixtureError locations can be opened in an editor.
    return [(n, ln) for n, ln in enumerate(text.splitlines(), start=1)
            if ln.strip()]


# ---------------------------------------------------------------------------
# token grammars

_SIGNED_CELL = re.compile(r"^([+-]?)([A-Za-z])([0-9])$")
_TERM = re.compile(r"^([+-]?)S([0-9])([0-9])$")
_MAP_LABEL = re.compile(r"^f([1-8]):$")


def parse_signed_grid(text: str, filename: str, label: str) -> SignedTable:
    """8x8 grid of tokens like ``e3`` / ``-E5`` with basis letter *label*."""
    lines = _content_lines(text)
    if len(lines) != 8:
        raise FixtureError(f"{filename}: expected 8 rows, found {len(lines)}")
    rows = []
    for lineno, line in lines:
        toks = line.split()
        if len(toks) != 8:
            _fail(filename, lineno, f"expected 8 cells, found {len(toks)}")
        row = []
        for tok in toks:
            m = _SIGNED_CELL.match(tok)
            if m is None or m.group(2) != label:
                _fail(filename, lineno, f"bad cell token {tok!r}")
            k = int(m.group(3))
            if k > 7:
                _fail(filename, lineno,
                      f"basis index out of range 0..7 in {tok!r}")
            row.append((-1 if m.group(1) == "-" else 1, k))
        rows.append(tuple(row))
    return SignedTable(tuple(rows))


def parse_term_lines(text: str, filename: str) -> dict:
    """Eight generator lines ``betaN <i|1> [+-]Smn x8`` into the same
    shape as matrices.SIGMA_TERMS."""
    lines = _content_lines(text)
    if len(lines) != 8:
        raise FixtureError(f"{filename}: expected 8 rows, found {len(lines)}")
    out = {}
    for pos, (lineno, line) in enumerate(lines, start=1):
        toks = line.split()
        if len(toks) != 10:
            _fail(filename, lineno, f"expected 10 tokens, found {len(toks)}")
        if toks[0] != f"beta{pos}":
            _fail(filename, lineno,
                  f"expected label beta{pos}, found {toks[0]!r}")
        if toks[1] not in ("i", "1"):
            _fail(filename, lineno, f"prefactor must be 'i' or '1', "
                                    f"found {toks[1]!r}")
        terms = []
        for tok in toks[2:]:
            m = _TERM.match(tok)
            if m is None:
                _fail(filename, lineno, f"bad term token {tok!r}")
            mm, nn = int(m.group(2)), int(m.group(3))
            if not (1 <= mm <= 8 and 1 <= nn <= 8):
                _fail(filename, lineno, f"unit index out of range in {tok!r}")
            terms.append((-1 if m.group(1) == "-" else 1, mm, nn))
        out[pos] = (toks[1] == "i", tuple(terms))
    return out


def parse_form_matrix(text: str, filename: str, size: int = 8) -> SquareMatrix:
    """size x size grid of whitespace-free linear-form cells."""
    lines = _content_lines(text)
    if len(lines) != size:
        raise FixtureError(
            f"{filename}: expected {size} rows, found {len(lines)}")
    rows = []
    for lineno, line in lines:
        toks = line.split()
        if len(toks) != size:
            _fail(filename, lineno,
                  f"expected {size} cells, found {len(toks)}")
        row = []
        for col, tok in enumerate(toks, start=1):
            try:
                row.append(parse_linear_form(tok))
            except ScalarParseError as exc:
                _fail(filename, lineno, f"column {col}: {exc}")
        rows.append(tuple(row))
    return SquareMatrix(tuple(rows))


def parse_theta_grid(text: str, filename: str):
    """8x8 grid of theta-affine cells, split into (const, theta) parts."""
    lines = _content_lines(text)
    if len(lines) != 8:
        raise FixtureError(f"{filename}: expected 8 rows, found {len(lines)}")
    const_rows, theta_rows = [], []
    for lineno, line in lines:
        toks = line.split()
        if len(toks) != 8:
            _fail(filename, lineno, f"expected 8 cells, found {len(toks)}")
        crow, trow = [], []
        for col, tok in enumerate(toks, start=1):
            try:
                c, t = parse_theta_affine(tok)
            except ScalarParseError as exc:
                _fail(filename, lineno, f"column {col}: {exc}")
            crow.append(c)
            trow.append(t)
        const_rows.append(tuple(crow))
        theta_rows.append(tuple(trow))
    return SquareMatrix(tuple(const_rows)), SquareMatrix(tuple(theta_rows))


def parse_map_lines(text: str, filename: str) -> tuple:
    """Eight lines ``fA: <form>`` in order A = 1..8."""
    lines = _content_lines(text)
    if len(lines) != 8:
        raise FixtureError(f"{filename}: expected 8 rows, found {len(lines)}")
    forms = []
    for pos, (lineno, line) in enumerate(lines, start=1):
        toks = line.split()
        if len(toks) != 2:
            _fail(filename, lineno, f"expected 'fA: <form>', got {line!r}")
        m = _MAP_LABEL.match(toks[0])
        if m is None or int(m.group(1)) != pos:
            _fail(filename, lineno,
                  f"expected label f{pos}:, found {toks[0]!r}")
        try:
            forms.append(parse_linear_form(toks[1]))
        except ScalarParseError as exc:
            _fail(filename, lineno, str(exc))
    return tuple(forms)


# ---------------------------------------------------------------------------
# the store

@dataclass(frozen=True)
class FixtureStore:
    """Every bundled fixture, parsed, plus a sha256 digest per file."""
    table1: SignedTable
    table2: SignedTable
    eq2: dict              # same shape as matrices.SIGMA_TERMS
    eq6: SquareMatrix      # 8x8 linear forms
    eq12_const: SquareMatrix
    eq12_theta: SquareMatrix
    eq13: SquareMatrix     # 8x8 linear forms
    eq14: tuple            # 8 linear forms, the per-component flow
    eq21_y1: SquareMatrix
    eq21_y2: SquareMatrix
    eq23_c: SquareMatrix   # 4x4
    eq24_d: SquareMatrix   # 4x4
    digests: dict          # filename -> sha256 hex


def _read_raw(directory: Optional[str]) -> dict:
    raw = {}
    if directory is None:
        root = resources.files("octo_so8") / "data"
        for name in FIXTURE_FILES:
            try:
                raw[name] = (root / name).read_bytes()
            except FileNotFoundError:
                raise FixtureError(f"missing bundled fixture {name}") from None
    else:
        root = Path(directory)
        if not root.is_dir():
            raise FixtureError(f"fixture directory not found: {root}")
        for name in FIXTURE_FILES:
            p = root / name
            if not p.is_file():
                raise FixtureError(f"missing fixture file: {p}")
            raw[name] = p.read_bytes()
    return raw


def load_fixtures(directory: Optional[str] = None) -> FixtureStore:
    """Parse the full fixture set from *directory*, or from the bundled
    package data when *directory* is None."""
    raw = _read_raw(directory)
    digests = {name: hashlib.sha256(raw[name]).hexdigest()
               for name in FIXTURE_FILES}
    text = {name: raw[name].decode("utf-8") for name in FIXTURE_FILES}

    eq12_const, eq12_theta = parse_theta_grid(text["eq12_R12.txt"],
                                              "eq12_R12.txt")
    return FixtureStore(
        table1=parse_signed_grid(text["table1.txt"], "table1.txt", "E"),
        table2=parse_signed_grid(text["table2.txt"], "table2.txt", "e"),
        eq2=parse_term_lines(text["eq2_sigma.txt"], "eq2_sigma.txt"),
        eq6=parse_form_matrix(text["eq6_X.txt"], "eq6_X.txt"),
        eq12_const=eq12_const,
        eq12_theta=eq12_theta,
        eq13=parse_form_matrix(text["eq13_delta.txt"], "eq13_delta.txt"),
        eq14=parse_map_lines(text["eq14_map.txt"], "eq14_map.txt"),
        eq21_y1=parse_form_matrix(text["eq21_Y1.txt"], "eq21_Y1.txt"),
        eq21_y2=parse_form_matrix(text["eq21_Y2.txt"], "eq21_Y2.txt"),
        eq23_c=parse_form_matrix(text["eq23_C.txt"], "eq23_C.txt", size=4),
        eq24_d=parse_form_matrix(text["eq24_D.txt"], "eq24_D.txt", size=4),
        digests=digests,
    )
