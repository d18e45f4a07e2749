"""Formal linear combinations of the eight real component symbols f1..f8.

A ``LinearForm`` is ``const + sum_k c_k * f_k`` with exact complex
coefficients (``CDyadic`` or ``CRational``; the f symbols themselves are
treated as real, so conjugation only conjugates coefficients).  Forms
add, negate, and scale by exact scalars; two forms never multiply.

The token grammar (used by fixture files and the CLI) writes a form as
sign-joined terms with ``*`` separators and no whitespace:
``-f4-i*f2``, ``2*f2-2*i*f4``, ``i*f8``, ``0``.
"""

from __future__ import annotations

import re
from typing import Sequence

from .exact import (CDyadic, CRational, CD_ZERO, CD_ONE, Dyadic,
                    ScalarParseError, parse_cdyadic, render_cdyadic)

_SCALARS = (int, Dyadic, CDyadic, CRational)


def _as_coeff(v):
    if isinstance(v, (CDyadic, CRational)):
        return v
    if isinstance(v, (int, Dyadic)):
        return CDyadic(v if isinstance(v, Dyadic) else Dyadic(v))
    raise TypeError(f"bad coefficient {v!r}")


class LinearForm:
    """const + c1*f1 + ... + c8*f8 over exact complex coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        # coeffs[0] is the constant term, coeffs[k] multiplies f_k
        if len(coeffs) != 9:
            raise ValueError("need 9 coefficients (const + f1..f8)")
        object.__setattr__(self, "coeffs", tuple(_as_coeff(c) for c in coeffs))

    def __setattr__(self, *_):
        raise AttributeError("LinearForm is immutable")

    @classmethod
    def zero(cls) -> "LinearForm":
        return _ZERO

    @classmethod
    def const(cls, value) -> "LinearForm":
        return cls([value] + [0] * 8)

    @classmethod
    def symbol(cls, k: int, coeff=1) -> "LinearForm":
        if not 1 <= k <= 8:
            raise ValueError(f"symbol index {k} out of range 1..8")
        c = [0] * 9
        c[k] = coeff
        return cls(c)

    @property
    def constant(self):
        return self.coeffs[0]

    def coeff(self, k: int):
        """Coefficient of f_k, 1-indexed."""
        return self.coeffs[k]

    def __add__(self, other):
        if isinstance(other, LinearForm):
            return LinearForm([a + b for a, b in zip(self.coeffs, other.coeffs)])
        if isinstance(other, _SCALARS):
            return self + LinearForm.const(other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (LinearForm,) + _SCALARS):
            return self + (-other if isinstance(other, LinearForm)
                           else LinearForm.const(other) * -1)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALARS):
            return LinearForm.const(other) - self
        return NotImplemented

    def __neg__(self):
        return LinearForm([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, LinearForm):
            raise TypeError("product of two linear forms is not linear")
        if isinstance(other, _SCALARS):
            return LinearForm([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = LinearForm.const(other)
        if not isinstance(other, LinearForm):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def conj(self) -> "LinearForm":
        return LinearForm([c.conj() for c in self.coeffs])

    def has_imaginary_coeff(self) -> bool:
        """True when any symbol coefficient (or the constant) has an
        imaginary part."""
        return any(c.im != 0 if isinstance(c, CRational) else not c.im.is_zero()
                   for c in self.coeffs)

    def substitute(self, fvals: Sequence):
        """Evaluate at f = fvals (8 scalars); returns a scalar."""
        if len(fvals) != 8:
            raise ValueError("need 8 f values")
        acc = self.coeffs[0]
        for c, v in zip(self.coeffs[1:], fvals):
            acc = acc + c * v
        return acc

    def __str__(self):
        return render_linear_form(self)

    def __repr__(self):
        return f"LinearForm({self})"


def _is_zero(c) -> bool:
    return c.is_zero()


_ZERO = LinearForm([0] * 9)


# ---------------------------------------------------------------------------
# rendering

def _coeff_token(c) -> str:
    """Render a coefficient for use in front of '*fk'.

    Returns '' for 1, '-' for -1, 'i*'/' -i*' style otherwise; mixed
    complex coefficients come back parenthesized.
    """
    if isinstance(c, CRational):
        re_zero, im = c.re == 0, c.im
        if re_zero and im == 0:
            return None
        if re_zero:
            if im == 1:
                return "i*"
            if im == -1:
                return "-i*"
            return str(CRational(0, im)) + "*"
        if im == 0:
            if c.re == 1:
                return ""
            if c.re == -1:
                return "-"
            return str(c.re) + "*"
        return "(" + str(c) + ")*"
    if c.is_zero():
        return None
    if c.is_real():
        if c == 1:
            return ""
        if c == -1:
            return "-"
        return str(c.re) + "*"
    if c.re.is_zero():
        if c == CDyadic(0, 1):
            return "i*"
        if c == CDyadic(0, -1):
            return "-i*"
        return render_cdyadic(c) + "*"
    return "(" + render_cdyadic(c) + ")*"


def render_linear_form(form: LinearForm) -> str:
    parts = []
    for k in range(1, 9):
        tok = _coeff_token(form.coeffs[k])
        if tok is None:
            continue
        parts.append(tok + f"f{k}")
    c0 = form.coeffs[0]
    if not _is_zero(c0):
        s = str(c0)
        if "+" in s[1:] or "-" in s[1:]:
            s = "(" + s + ")"
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


# ---------------------------------------------------------------------------
# parsing
#
# term  := [+-] factor ('*' factor)*
# factor:= 'i' | 'f'<1-8> | 'theta' | number['/'number]['i'] | '(' scalar ')'
#
# Symbols allowed in a given context are passed in; each term may carry
# at most one symbol factor.

_FSYM = re.compile(r"f([1-8])$")


class FormParseError(ScalarParseError):
    pass


def _split_terms(s: str):
    """Split on +/- at depth 0; keeps each term's sign."""
    terms = []
    depth = 0
    cur = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FormParseError(f"unbalanced ')' in {s!r}")
        if ch in "+-" and depth == 0:
            if cur in ("+", "-"):
                raise FormParseError(f"consecutive signs in {s!r}")
            if cur:
                terms.append(cur)
            cur = ch
        else:
            cur += ch
    if depth != 0:
        raise FormParseError(f"unbalanced '(' in {s!r}")
    if cur in ("", "+", "-"):
        raise FormParseError(f"dangling sign in {s!r}")
    terms.append(cur)
    return terms


def _split_factors(term: str):
    factors = []
    depth = 0
    cur = ""
    for ch in term:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append(cur)
            cur = ""
        else:
            cur += ch
    factors.append(cur)
    if any(not f for f in factors):
        raise FormParseError(f"empty factor in {term!r}")
    return factors


def parse_linear_expr(text: str, symbols: Sequence[str]) -> dict:
    """Parse an expression into {symbol_name: CDyadic}; '' keys the constant.

    ``symbols`` lists the symbol names allowed (e.g. f1..f8, or theta).
    """
    s = "".join(text.split())
    if not s:
        raise FormParseError("empty expression")
    out = {name: CD_ZERO for name in symbols}
    out[""] = CD_ZERO
    for term in _split_terms(s):
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        coeff = CD_ONE if sign == 1 else -CD_ONE
        sym = None
        for factor in _split_factors(term):
            if factor in symbols:
                if sym is not None:
                    raise FormParseError(f"two symbols in one term: {text!r}")
                sym = factor
                continue
            if factor.startswith("(") and factor.endswith(")"):
                factor = factor[1:-1]
            try:
                coeff = coeff * parse_cdyadic(factor)
            except FormParseError:
                raise
            except ScalarParseError as exc:
                # unknown names land here too; report at form level
                raise FormParseError(str(exc)) from None
        key = sym if sym is not None else ""
        out[key] = out[key] + coeff
    return out


def parse_linear_form(text: str) -> LinearForm:
    d = parse_linear_expr(text, [f"f{k}" for k in range(1, 9)])
    return LinearForm([d[""]] + [d[f"f{k}"] for k in range(1, 9)])


def parse_theta_affine(text: str) -> tuple:
    """Parse a token over {1, theta} into (const, theta_coeff) CDyadics."""
    d = parse_linear_expr(text, ["theta"])
    return d[""], d["theta"]
