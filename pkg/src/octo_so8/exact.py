"""Exact scalar arithmetic.

Three scalar types cover everything the toolkit computes with:

* ``Dyadic`` -- rationals with power-of-two denominators, stored as
  ``numerator / 2**exponent`` in normalized form (exponent 0 or odd
  numerator).  Every constant in the transcribed source material lives
  in this ring.
* ``CDyadic`` -- complex numbers with dyadic real and imaginary parts.
* ``CRational`` -- complex numbers over ``fractions.Fraction``.  The
  field of fractions of the dyadics; needed once matrix inverses enter
  (``1/(1+theta^2)`` is not dyadic).

All three are immutable value types.  Mixed arithmetic promotes up the
ladder int -> Dyadic -> CDyadic -> CRational via the reflected dunder
protocol, so e.g. ``CDyadic + CRational`` lands in ``CRational``.
"""

from __future__ import annotations

import re
from fractions import Fraction


class InexactFloatError(ValueError):
    """Raised when an exact scalar cannot be represented in binary64."""


class ScalarParseError(ValueError):
    """Raised on malformed scalar text."""


class Dyadic:
    """num / 2**exp with exp >= 0, normalized so exp == 0 or num is odd."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if exp < 0:
            # negative exponent means multiplying by 2**(-exp)
            num <<= -exp
            exp = 0
        while num != 0 and exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        if num == 0:
            exp = 0
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, *_):
        raise AttributeError("Dyadic is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = max(self.exp, o.exp)
        return Dyadic((self.num << (e - self.exp)) + (o.num << (e - o.exp)), e)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dyadic(self.num * o.num, self.exp + o.exp)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.exp == o.exp

    def __hash__(self):
        return hash((self.num, self.exp))

    def __bool__(self):
        return self.num != 0

    def is_zero(self) -> bool:
        return self.num == 0

    def is_integer(self) -> bool:
        return self.exp == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self):
        # correctly rounded, possibly inexact; use to_float_exact when
        # exactness matters
        return float(self.to_fraction())

    def to_float_exact(self) -> float:
        f = self.to_fraction()
        x = float(f)
        if Fraction(x) != f:
            raise InexactFloatError(f"{self} not representable in binary64")
        return x

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"


D_ZERO = Dyadic(0)
D_ONE = Dyadic(1)
D_HALF = Dyadic(1, 1)


class CDyadic:
    """Complex number with Dyadic real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, int):
            re = Dyadic(re)
        if isinstance(im, int):
            im = Dyadic(im)
        if not (isinstance(re, Dyadic) and isinstance(im, Dyadic)):
            raise TypeError("CDyadic parts must be Dyadic or int")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *_):
        raise AttributeError("CDyadic is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, CDyadic):
            return other
        if isinstance(other, (int, Dyadic)):
            return CDyadic(other if isinstance(other, Dyadic) else Dyadic(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CDyadic(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CDyadic(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CDyadic(self.re * o.re - self.im * o.im,
                       self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return CDyadic(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def conj(self) -> "CDyadic":
        return CDyadic(self.re, -self.im)

    def abs2(self) -> Dyadic:
        return self.re * self.re + self.im * self.im

    def to_crational(self) -> "CRational":
        return CRational(self.re.to_fraction(), self.im.to_fraction())

    def to_complex_exact(self) -> complex:
        return complex(self.re.to_float_exact(), self.im.to_float_exact())

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return render_cdyadic(self)

    def __repr__(self):
        return f"CDyadic({self.re!r}, {self.im!r})"


CD_ZERO = CDyadic(0)
CD_ONE = CDyadic(1)
CD_I = CDyadic(0, 1)
CD_HALF = CDyadic(D_HALF)
CD_HALF_I = CDyadic(D_ZERO, D_HALF)


class CRational:
    """Complex number over Fraction; the field the exact eliminations run in."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *_):
        raise AttributeError("CRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, CRational):
            return other
        if isinstance(other, (int, Fraction)):
            return CRational(other)
        if isinstance(other, Dyadic):
            return CRational(other.to_fraction())
        if isinstance(other, CDyadic):
            return other.to_crational()
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRational(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def inv(self) -> "CRational":
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("inverse of zero")
        return CRational(self.re / d, -self.im / d)

    def __neg__(self):
        return CRational(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conj(self) -> "CRational":
        return CRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return _render_complex_parts(str(self.re), self.re != 0,
                                     self.im, str(self.im), str(-self.im))

    def __repr__(self):
        return f"CRational({self.re!r}, {self.im!r})"


CR_ZERO = CRational(0)
CR_ONE = CRational(1)


# ---------------------------------------------------------------------------
# text rendering / parsing
#
# Canonical scalar tokens: "0", "3", "-1/2", "i", "-i", "2i", "1/2i",
# "-1/2+1/2i", "1-i".  Denominators are printed as plain integers (always
# powers of two).  Tokens never contain whitespace.

def render_dyadic(d: Dyadic) -> str:
    return str(d)


def _render_complex_parts(re_str, re_nonzero, im, im_pos_str, im_neg_str):
    if im == 0:
        return re_str if re_nonzero else "0"
    if im == 1:
        imtok = "i"
    elif im == -1:
        imtok = "-i"
    elif im > 0:
        imtok = im_pos_str + "i"
    else:
        imtok = "-" + im_neg_str + "i"
    if not re_nonzero:
        return imtok
    sep = "" if imtok.startswith("-") else "+"
    return re_str + sep + imtok


def render_cdyadic(z: CDyadic) -> str:
    im = z.im
    if im.is_zero():
        return str(z.re) if not z.re.is_zero() else "0"
    return _render_complex_parts(str(z.re), not z.re.is_zero(),
                                 im.to_fraction(), str(im), str(-im))


_ATOM = re.compile(r"([+-]?)(?:(\d+)(?:/(\d+))?)?(i?)$")


def _den_to_exp(den: int) -> int:
    exp = den.bit_length() - 1
    if den <= 0 or (1 << exp) != den:
        raise ScalarParseError(f"denominator {den} is not a power of two")
    return exp


def parse_dyadic(tok: str) -> Dyadic:
    z = parse_cdyadic(tok)
    if not z.im.is_zero():
        raise ScalarParseError(f"expected a real dyadic, got {tok!r}")
    return z.re


def parse_cdyadic(tok: str) -> CDyadic:
    """Parse one canonical scalar token (no whitespace)."""
    s = tok.strip()
    if not s:
        raise ScalarParseError("empty scalar token")
    # split into signed atoms: every +/- is a term separator here
    atoms = re.findall(r"[+-]?[^+-]+", s)
    if not atoms or "".join(atoms) != s:
        raise ScalarParseError(f"bad scalar token {tok!r}")
    re_part = None
    im_part = None
    for atom in atoms:
        m = _ATOM.match(atom)
        if not m or (m.group(2) is None and m.group(4) != "i"):
            raise ScalarParseError(f"bad scalar atom {atom!r} in {tok!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(2) is None:
            val = Dyadic(sign)
        else:
            num = sign * int(m.group(2))
            exp = _den_to_exp(int(m.group(3))) if m.group(3) else 0
            val = Dyadic(num, exp)
        if m.group(4) == "i":
            if im_part is not None:
                raise ScalarParseError(f"duplicate imaginary part in {tok!r}")
            im_part = val
        else:
            if re_part is not None:
                raise ScalarParseError(f"duplicate real part in {tok!r}")
            re_part = val
    return CDyadic(re_part or D_ZERO, im_part or D_ZERO)
