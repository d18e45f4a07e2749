"""Octonion algebra over exact coefficient rings.

The multiplication table of the eight basis units e0..e7 (e0 the
identity) is entered verbatim as data -- it is ground truth here, never
regenerated from a Fano-plane convention, because the whole point is to
audit derived objects against this exact table.

``Octonion`` is coefficient-ring agnostic: plain ints, Dyadic, CDyadic
(bioctonions) and even floats/complex all work, since multiplication
only needs +, * and unary - on the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact import CDyadic, CD_HALF, CD_HALF_I, Dyadic
from .matrices import SignedTable

# cell (i, j) = (sign, k) meaning e_i * e_j = sign * e_k
_T = (
    ((+1, 0), (+1, 1), (+1, 2), (+1, 3), (+1, 4), (+1, 5), (+1, 6), (+1, 7)),
    ((+1, 1), (-1, 0), (+1, 3), (-1, 2), (+1, 7), (-1, 6), (+1, 5), (-1, 4)),
    ((+1, 2), (-1, 3), (-1, 0), (+1, 1), (+1, 6), (+1, 7), (-1, 4), (-1, 5)),
    ((+1, 3), (+1, 2), (-1, 1), (-1, 0), (-1, 5), (+1, 4), (+1, 7), (-1, 6)),
    ((+1, 4), (-1, 7), (-1, 6), (+1, 5), (-1, 0), (-1, 3), (+1, 2), (+1, 1)),
    ((+1, 5), (+1, 6), (-1, 7), (-1, 4), (+1, 3), (-1, 0), (-1, 1), (+1, 2)),
    ((+1, 6), (-1, 5), (+1, 4), (-1, 7), (-1, 2), (+1, 1), (-1, 0), (+1, 3)),
    ((+1, 7), (+1, 4), (+1, 5), (+1, 6), (-1, 1), (-1, 2), (-1, 3), (-1, 0)),
)


class StructureTable:
    """The verbatim basis multiplication table."""

    def __init__(self, cells=_T):
        self.cells = tuple(tuple(row) for row in cells)

    def mul_basis(self, i: int, j: int):
        """(sign, k) with e_i e_j = sign e_k."""
        return self.cells[i][j]

    def to_signed_table(self) -> SignedTable:
        return SignedTable(self.cells)

    def oriented_triples(self):
        """The seven oriented imaginary triples (i, j, k) with
        e_i e_j = e_k, smallest index first, implied by the table."""
        triples = []
        seen = set()
        for i in range(1, 8):
            for j in range(i + 1, 8):
                sign, k = self.cells[i][j]
                key = frozenset((i, j, k))
                if key in seen:
                    continue
                seen.add(key)
                triples.append((i, j, k) if sign > 0 else (i, k, j))
        return triples


TABLE = StructureTable()


class Octonion:
    """Eight coefficients over any ring supporting +, *, unary -."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) != 8:
            raise ValueError("octonion needs 8 coefficients")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("Octonion is immutable")

    @classmethod
    def unit(cls, k: int, one=1) -> "Octonion":
        c = [one * 0] * 8
        c[k] = one
        return cls(c)

    @classmethod
    def zero(cls, zero=0) -> "Octonion":
        return cls([zero] * 8)

    def __add__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return Octonion([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return Octonion([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Octonion([-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            # scalar on the right
            return Octonion([a * other for a in self.coeffs])
        out = [self.coeffs[0] * 0] * 8
        for i, a in enumerate(self.coeffs):
            if _zeroish(a):
                continue
            for j, b in enumerate(other.coeffs):
                if _zeroish(b):
                    continue
                sign, k = _T[i][j]
                p = a * b
                out[k] = out[k] + (p if sign > 0 else -p)
        return Octonion(out)

    def __rmul__(self, scalar):
        return Octonion([scalar * a for a in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def conj(self) -> "Octonion":
        return Octonion([self.coeffs[0]] + [-a for a in self.coeffs[1:]])

    def norm(self):
        """Sum of squared coefficients.  For complex coefficient rings
        this is the bilinear extension (squares, not absolute values),
        which is what makes zero divisors detectable."""
        acc = self.coeffs[0] * self.coeffs[0]
        for a in self.coeffs[1:]:
            acc = acc + a * a
        return acc

    def is_zero(self) -> bool:
        return all(_zeroish(a) for a in self.coeffs)

    def __str__(self):
        parts = []
        for k, a in enumerate(self.coeffs):
            if _zeroish(a):
                continue
            parts.append(f"({a})*e{k}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Octonion({self})"


def _zeroish(a) -> bool:
    if hasattr(a, "is_zero"):
        return a.is_zero()
    return a == 0


def associator(x: Octonion, y: Octonion, z: Octonion) -> Octonion:
    return (x * y) * z - x * (y * z)


def commutator(x: Octonion, y: Octonion) -> Octonion:
    return x * y - y * x


# ---------------------------------------------------------------------------
# split basis
#
# u_0 = (e0 + i e7)/2 and u_m = (e_m + i e_{m+3})/2 for m = 1..3, with
# the starred elements their bioctonion conjugates (i -> -i).

@dataclass(frozen=True)
class SplitBasis:
    u: tuple        # u_0..u_3
    u_star: tuple   # u_0*..u_3*

    def element(self, name: str) -> Octonion:
        star = name.endswith("*")
        k = int(name[1])
        return (self.u_star if star else self.u)[k]

    def ordered(self):
        """(u0, u1, u2, u3, u0*, u1*, u2*, u3*)"""
        return self.u + self.u_star


def build_split_basis() -> SplitBasis:
    pairs = [(0, 7), (1, 4), (2, 5), (3, 6)]
    u, us = [], []
    for a, b in pairs:
        coeffs = [CDyadic(0)] * 8
        coeffs[a] = CD_HALF
        coeffs[b] = CD_HALF_I
        u.append(Octonion(coeffs))
        us.append(Octonion([c.conj() for c in coeffs]))
    return SplitBasis(tuple(u), tuple(us))


_EPS = {(1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)}


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: str
    rhs: str
    ok: bool


def verify_split_relations(basis: SplitBasis = None):
    """Evaluate the whole split-basis relation family; one record per
    identity instance, exact verdicts."""
    b = basis or build_split_basis()
    u, us = b.u, b.u_star
    zero = Octonion.zero(CDyadic(0))
    checks = []

    def rec(name, lhs, rhs):
        checks.append(IdentityCheck(name, str(lhs), str(rhs), lhs == rhs))

    for i in range(1, 4):
        for j in range(1, 4):
            if i == j:
                rhs1, rhs2 = zero, zero
            else:
                sign, k = _EPS[(i, j)]
                rhs1 = us[k] * sign
                rhs2 = u[k] * sign
            rec(f"u{i}*u{j} = eps*u_k_star", u[i] * u[j], rhs1)
            rec(f"u{i}*_u{j}* = eps*u_k", us[i] * us[j], rhs2)
            rec(f"u{i}*u{j}_star = -delta*u0",
                u[i] * us[j], -u[0] if i == j else zero)
            rec(f"u{i}_star*u{j} = -delta*u0_star",
                us[i] * u[j], -us[0] if i == j else zero)
    for i in range(1, 4):
        rec(f"u0*u{i} = u{i}", u[0] * u[i], u[i])
        rec(f"u{i}*u0_star = u{i}", u[i] * us[0], u[i])
        rec(f"u0_star*u{i}_star = u{i}_star", us[0] * us[i], us[i])
        rec(f"u{i}_star*u0 = u{i}_star", us[i] * u[0], us[i])
        rec(f"u{i}*u0 = 0", u[i] * u[0], zero)
        rec(f"u0*u{i}_star = 0", u[0] * us[i], zero)
        rec(f"u{i}_star*u0_star = 0", us[i] * us[0], zero)
        rec(f"u0_star*u{i} = 0", us[0] * u[i], zero)
    rec("u0*u0 = u0", u[0] * u[0], u[0])
    rec("u0_star*u0_star = u0_star", us[0] * us[0], us[0])
    rec("u0*u0_star = 0", u[0] * us[0], zero)
    rec("u0_star*u0 = 0", us[0] * u[0], zero)
    return checks
