"""Command-line frontend.

Subcommands: ``tables``, ``verify``, ``rotate K L``, ``spinor``,
``gram``, ``dump-beta A``.  Markdown is the default rendering; every
subcommand also emits canonical JSON with ``--format json``.

Exit codes: 0 on success; 1 when ``verify --strict`` finds refuted
claims; 2 on operational errors (missing fixtures, malformed tokens,
degenerate inputs).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from .claims import REFUTED, render_markdown, run_all, to_json
from .exact import ScalarParseError, parse_dyadic
from .fixtures import FixtureError, load_fixtures
from .matrices import beta_set, build_E, compare_tables, signed_table
from .rotations import (DEFAULT_MAX_TERMS, DEFAULT_TOL, assemble_X,
                        extract_components, numeric_X, plane_product,
                        rotate_exact, rotation_component_map, spinor_transform,
                        standard_spinor, substitute_matrix)
from .splitrep import split_transform
from .symbolic import render_linear_form

_FORMATS = ("md", "json")


# ---------------------------------------------------------------------------
# argument plumbing

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--fixtures", metavar="DIR", default=None,
                   help="fixture directory (default: bundled set, or "
                        "$OCTO_SO8_FIXTURES)")
    p.add_argument("--format", choices=_FORMATS, default="md",
                   help="output format (default: md)")
    p.add_argument("--beta-variant", choices=("sigma", "tensor"),
                   default="sigma",
                   help="which transcribed generator reading to use")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octo-so8",
        description="Exact octonion / 8x8-matrix machinery with a "
                    "fixture-diffing verifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="print the octonion table, the "
                       "derived E-matrix table, and their diff")
    _add_common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="run every registered claim and "
                       "print the report")
    _add_common(p)
    p.add_argument("--strict", action="store_true",
                   help="exit 1 when any claim is refuted")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rotate", help="apply the (k,l) plane rotation; "
                       "symbolic map without --f, numeric with --f")
    _add_common(p)
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--theta", default="0",
                   help="dyadic rotation parameter, e.g. 1/4 (default 0)")
    p.add_argument("--f", default=None,
                   help="8 comma-separated dyadic components, e.g. "
                        "1,0,0,0,0,0,0,0")
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("spinor", help="transform the standard spinor by "
                       "exp(X) at numeric f")
    _add_common(p)
    p.add_argument("--f", required=True,
                   help="8 comma-separated numeric components "
                        "(decimals allowed)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help="series truncation tolerance")
    p.add_argument("--split", action="store_true",
                   help="also transform the split spinor by exp(Y) "
                        "(Y from the bundled fixture)")
    p.set_defaults(func=cmd_spinor)

    p = sub.add_parser("gram", help="print the generator trace Gram matrix")
    _add_common(p)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("dump-beta", help="print one generator matrix")
    _add_common(p)
    p.add_argument("a", type=int, choices=range(1, 9), metavar="A",
                   help="generator index 1..8")
    p.set_defaults(func=cmd_dump_beta)

    return parser


def _fixture_dir(args) -> Optional[str]:
    if args.fixtures:
        return args.fixtures
    return os.environ.get("OCTO_SO8_FIXTURES") or None


def _emit_json(payload: dict):
    print(json.dumps(payload, indent=2))


def _md_grid(tokens, prefix: str):
    head = "|   | " + " | ".join(f"{prefix}{j}" for j in range(8)) + " |"
    lines = [head, "|" + " --- |" * 9]
    for i, row in enumerate(tokens):
        lines.append(f"| {prefix}{i} | " + " | ".join(row) + " |")
    return lines


# ---------------------------------------------------------------------------
# subcommands

def cmd_tables(args) -> int:
    fx = load_fixtures(_fixture_dir(args))
    derived = signed_table(build_E(beta_set(args.beta_variant)))
    diff = compare_tables(fx.table2, derived)
    if args.format == "json":
        _emit_json({
            "octonion_table": fx.table2.render("e"),
            "derived_e_table": derived.render("E"),
            "diff": {"counts": diff.counts(), "cells": list(diff.cells)},
        })
        return 0
    c = diff.counts()
    out = ["## Octonion multiplication table (fixture)", ""]
    out += _md_grid(fx.table2.render("e"), "e")
    out += ["", "## Derived E-matrix multiplication table", ""]
    out += _md_grid(derived.render("E"), "E")
    out += ["", "## Diff (octonion fixture vs derived E)", "",
            f"identical: {c['identical']}, sign-flipped: {c['sign_flipped']},"
            f" structurally-different: {c['structurally_different']}"]
    if diff.cells:
        out += ["", "| row | col | octonion | derived | kind |",
                "| --- | --- | --- | --- | --- |"]
        out += [f"| {d['row']} | {d['col']} | {d['left']} | {d['right']} |"
                f" {d['kind']} |" for d in diff.cells]
    print("\n".join(out))
    return 0


def cmd_verify(args) -> int:
    fx = load_fixtures(_fixture_dir(args))
    report = run_all(fx, args.beta_variant)
    if args.format == "json":
        print(to_json(report))
    else:
        print(render_markdown(report), end="")
    if args.strict and report.summary[REFUTED] > 0:
        return 1
    return 0


def _parse_f_exact(text: str) -> list:
    parts = text.split(",")
    if len(parts) != 8:
        raise ScalarParseError("need exactly 8 comma-separated f values")
    return [parse_dyadic(p.strip()) for p in parts]


def _parse_f_numeric(text: str) -> list:
    parts = text.split(",")
    if len(parts) != 8:
        raise ScalarParseError("need exactly 8 comma-separated f values")
    out = []
    for p in parts:
        p = p.strip()
        try:
            out.append(float(p))
        except ValueError:
            out.append(float(parse_dyadic(p)))
    return out


def _max_abs_cells(m, fvals=None) -> float:
    best = 0.0
    for i in range(m.n):
        for j in range(m.n):
            e = m.at(i, j)
            v = e.substitute(fvals) if fvals is not None else e
            if hasattr(v, "constant"):   # constant LinearForm
                v = v.constant
            best = max(best, abs(complex(v)))
    return best


def cmd_rotate(args) -> int:
    bs = beta_set(args.beta_variant)
    k, l = args.k, args.l
    cm = rotation_component_map(k, l, bs)   # validates the plane
    fx = load_fixtures(_fixture_dir(args))
    comparable = plane_product(k, l, bs) == plane_product(1, 2, bs)

    if args.f is None:
        lines = []
        for a in range(8):
            rec = {"component": a + 1,
                   "derived": render_linear_form(cm.lines[a]),
                   "stated": None, "match": None}
            if comparable:
                rec["stated"] = render_linear_form(fx.eq14[a])
                rec["match"] = cm.lines[a] == fx.eq14[a]
            lines.append(rec)
        residual = [{"row": i, "col": j, "entry": render_linear_form(e)}
                    for i, j, e in cm.residual.nonzero_cells()]
        if args.format == "json":
            _emit_json({"plane": [k, l], "mode": "symbolic",
                        "lines": lines, "residual_cells": residual})
            return 0
        out = [f"first-order component map for plane ({k},{l}):"]
        for rec in lines:
            s = (f"  f{rec['component']} -> f{rec['component']}"
                 f" + theta*({rec['derived']})")
            if rec["match"] is False:
                s += f"   [differs from stated {rec['stated']}]"
            out.append(s)
        if residual:
            out.append("projection residual (per theta) nonzero at:")
            out += [f"  ({c['row']},{c['col']}): {c['entry']}"
                    for c in residual]
        print("\n".join(out))
        return 0

    theta = parse_dyadic(args.theta)
    fvals = _parse_f_exact(args.f)
    first = cm.apply(fvals, theta)
    first_residual = float(theta) * _max_abs_cells(cm.residual, fvals)
    rotated = rotate_exact(substitute_matrix(assemble_X(bs), fvals),
                           k, l, theta, bs)
    forms, residual = extract_components(rotated, bs)
    exact = [f.constant for f in forms]
    exact_residual = _max_abs_cells(residual)
    if args.format == "json":
        _emit_json({
            "plane": [k, l], "mode": "numeric", "theta": str(theta),
            "f": [str(v) for v in fvals],
            "first_order": {"f_prime": [str(v) for v in first],
                            "residual_max": first_residual},
            "exact": {"f_prime": [str(v) for v in exact],
                      "residual_max": exact_residual},
        })
        return 0
    out = [f"plane ({k},{l}), theta = {theta}:",
           "  first-order f': " + ", ".join(str(v) for v in first),
           f"  first-order residual max-entry: {first_residual}",
           "  exact-conjugation f': " + ", ".join(str(v) for v in exact),
           f"  exact residual max-entry: {exact_residual}"]
    print("\n".join(out))
    return 0


def _octonion_terms(o, eps: float = 1e-15):
    terms = []
    for j, c in enumerate(o.coeffs):
        z = complex(c)
        if abs(z) <= eps:
            continue
        terms.append({"unit": f"e{j}",
                      "re": z.real, "im": z.imag, "abs": abs(z)})
    return terms


def _render_octonion_line(label: str, terms) -> str:
    if not terms:
        return f"{label} = 0"
    body = " + ".join(f"({t['re']:.12g}{t['im']:+.12g}i)*{t['unit']}"
                      for t in terms)
    mags = ", ".join(f"|{t['unit']}|={t['abs']:.12g}" for t in terms)
    return f"{label} = {body}   [{mags}]"


def cmd_spinor(args) -> int:
    fvals = _parse_f_numeric(args.f)
    bs = beta_set(args.beta_variant)
    psi_out = spinor_transform(standard_spinor(), numeric_X(fvals, bs),
                               tol=args.tol, max_terms=DEFAULT_MAX_TERMS)
    payload = {"f": fvals, "tol": args.tol,
               "components": [{"index": i + 1,
                               "terms": _octonion_terms(o)}
                              for i, o in enumerate(psi_out)]}
    lines = [_render_octonion_line(f"psi{i + 1}'", c["terms"])
             for i, c in enumerate(payload["components"])]
    if args.split:
        from .splitrep import build_split_spinor
        fx = load_fixtures(_fixture_dir(args))
        y_total = fx.eq21_y1 + fx.eq21_y2
        y_num = np.array(
            [[_eval_form(y_total.at(i, j), fvals) for j in range(8)]
             for i in range(8)], dtype=np.complex128)
        phi_out = split_transform(build_split_spinor().components, y_num,
                                  tol=args.tol,
                                  max_terms=DEFAULT_MAX_TERMS)
        payload["split"] = {
            "y_source": "fixture sum (eq21_Y1 + eq21_Y2)",
            "components": [{"index": i + 1, "terms": _octonion_terms(o)}
                           for i, o in enumerate(phi_out)],
        }
        lines.append(f"Y source: {payload['split']['y_source']}")
        lines += [_render_octonion_line(f"phi{i + 1}'", c["terms"])
                  for i, c in enumerate(payload["split"]["components"])]
    if args.format == "json":
        _emit_json(payload)
    else:
        print("\n".join(lines))
    return 0


def _eval_form(form, fvals) -> complex:
    acc = complex(form.constant)
    for a in range(8):
        acc += complex(form.coeff(a + 1)) * fvals[a]
    return acc


def cmd_gram(args) -> int:
    from .matrices import anticommutator_audit, gram
    bs = beta_set(args.beta_variant)
    g = gram(bs)
    grid = g.render()
    pairs = [list(p) for p in anticommutator_audit(bs)]
    if args.format == "json":
        _emit_json({"variant": args.beta_variant, "gram": grid,
                    "anticommuting_pairs": pairs})
        return 0
    out = [f"trace Gram matrix, {args.beta_variant} reading:", ""]
    out += ["  " + " ".join(f"{t:>3}" for t in row) for row in grid]
    out += ["", f"anticommuting generator pairs: "
            + (", ".join(f"({a},{b})" for a, b in pairs) if pairs else "none")]
    print("\n".join(out))
    return 0


def cmd_dump_beta(args) -> int:
    bs = beta_set(args.beta_variant)
    grid = bs.beta(args.a).render()
    if args.format == "json":
        _emit_json({"generator": args.a, "variant": args.beta_variant,
                    "matrix": grid})
        return 0
    out = [f"beta{args.a}, {args.beta_variant} reading:", ""]
    out += ["  " + " ".join(f"{t:>2}" for t in row) for row in grid]
    print("\n".join(out))
    return 0


# ---------------------------------------------------------------------------
# entry points

def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FixtureError, ScalarParseError, ValueError, ArithmeticError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry():
    sys.exit(main())
