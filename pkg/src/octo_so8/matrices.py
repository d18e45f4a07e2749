"""Dense square matrices over exact entries, and the eight 8x8 generators.

``SquareMatrix`` is entry-type agnostic: anything supporting +, -, *,
unary -, ==, ``conj()`` and ``is_zero()`` works (CDyadic, CRational,
LinearForm).  Mixed entry types rely on the scalar promotion ladder.

On top of it: Pauli and Dirac 4x4 matrices, Kronecker products, matrix
units, the two transcribed variants of the eight generator matrices
(beta_1..beta_8), their Gram matrix, the derived E-matrix family, and
signed multiplication tables with a diff operation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .exact import CDyadic, CD_ZERO, CD_ONE, CD_I, Dyadic


class SquareMatrix:
    """Immutable n x n matrix over exact entries."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n", n)

    def __setattr__(self, *_):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def identity(cls, n: int, one=CD_ONE, zero=CD_ZERO) -> "SquareMatrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, zero=CD_ZERO) -> "SquareMatrix":
        return cls([[zero] * n for _ in range(n)])

    def at(self, i: int, j: int):
        """0-indexed entry access."""
        return self.rows[i][j]

    def __add__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return SquareMatrix([[a + b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return SquareMatrix([[a - b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda e: -e)

    def __matmul__(self, other):
        if not isinstance(other, SquareMatrix) or other.n != self.n:
            return NotImplemented
        n = self.n
        cols = list(zip(*other.rows))
        return SquareMatrix(
            [[functools.reduce(lambda s, t: s + t,
                               (ra[k] * cb[k] for k in range(n)))
              for cb in cols] for ra in self.rows])

    def scale(self, scalar) -> "SquareMatrix":
        return self.map(lambda e: scalar * e)

    def map(self, fn: Callable) -> "SquareMatrix":
        return SquareMatrix([[fn(e) for e in row] for row in self.rows])

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(list(zip(*self.rows)))

    def conj_transpose(self) -> "SquareMatrix":
        return SquareMatrix([[self.rows[j][i].conj() for j in range(self.n)]
                             for i in range(self.n)])

    def trace(self):
        return functools.reduce(lambda s, t: s + t,
                                (self.rows[i][i] for i in range(self.n)))

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def is_hermitian(self) -> bool:
        return self == self.conj_transpose()

    def is_traceless(self) -> bool:
        t = self.trace()
        return t.is_zero() if hasattr(t, "is_zero") else t == 0

    def block(self, bi: int, bj: int, size: int) -> "SquareMatrix":
        """size x size sub-block at block coordinates (bi, bj)."""
        r0, c0 = bi * size, bj * size
        return SquareMatrix([[self.rows[r0 + i][c0 + j] for j in range(size)]
                             for i in range(size)])

    def nonzero_cells(self):
        """(row, col, entry) for nonzero entries, 1-indexed, row-major."""
        out = []
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if not e.is_zero():
                    out.append((i + 1, j + 1, e))
        return out

    def render(self, entry_renderer: Callable = str):
        return [[entry_renderer(e) for e in row] for row in self.rows]

    def __repr__(self):
        return f"SquareMatrix({self.n}x{self.n})"


def from_blocks(tl: SquareMatrix, tr: SquareMatrix,
                bl: SquareMatrix, br: SquareMatrix) -> SquareMatrix:
    n = tl.n
    rows = []
    for i in range(n):
        rows.append(list(tl.rows[i]) + list(tr.rows[i]))
    for i in range(n):
        rows.append(list(bl.rows[i]) + list(br.rows[i]))
    return SquareMatrix(rows)


def diff_cells(a: SquareMatrix, b: SquareMatrix, renderer: Callable = str):
    """1-indexed cells where the matrices differ, with both renderings."""
    out = []
    for i in range(a.n):
        for j in range(a.n):
            if not a.at(i, j) == b.at(i, j):
                out.append({"row": i + 1, "col": j + 1,
                            "left": renderer(a.at(i, j)),
                            "right": renderer(b.at(i, j))})
    return out


# ---------------------------------------------------------------------------
# Pauli / Dirac building blocks

_ONE, _ZERO, _I = CD_ONE, CD_ZERO, CD_I
_NEG_ONE, _NEG_I = -CD_ONE, -CD_I


def pauli(j: int) -> SquareMatrix:
    """2x2 Pauli matrix, standard convention, 1-indexed."""
    if j == 1:
        return SquareMatrix([[_ZERO, _ONE], [_ONE, _ZERO]])
    if j == 2:
        return SquareMatrix([[_ZERO, _NEG_I], [_I, _ZERO]])
    if j == 3:
        return SquareMatrix([[_ONE, _ZERO], [_ZERO, _NEG_ONE]])
    raise ValueError(f"pauli index {j} out of range 1..3")


def gamma(j: int) -> SquareMatrix:
    """4x4 Dirac matrix: for j in 1..3 the off-diagonal -i*sigma / i*sigma
    block form; gamma(4) = diag(I2, -I2)."""
    if j in (1, 2, 3):
        s = pauli(j)
        z = SquareMatrix.zeros(2)
        return from_blocks(z, s.scale(_NEG_I), s.scale(_I), z)
    if j == 4:
        i2 = SquareMatrix.identity(2)
        return from_blocks(i2, SquareMatrix.zeros(2),
                           SquareMatrix.zeros(2), -i2)
    raise ValueError(f"gamma index {j} out of range 1..4")


def kron(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """Kronecker product; a's indices select the coarse blocks."""
    n = a.n * b.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(a.at(i // b.n, j // b.n) * b.at(i % b.n, j % b.n))
        rows.append(row)
    return SquareMatrix(rows)


def matrix_unit(m: int, n: int, size: int = 8) -> SquareMatrix:
    """Elementary matrix with a single 1 at (m, n), 1-indexed."""
    if not (1 <= m <= size and 1 <= n <= size):
        raise ValueError(f"matrix unit ({m},{n}) out of range 1..{size}")
    return SquareMatrix([[_ONE if (i == m - 1 and j == n - 1) else _ZERO
                          for j in range(size)] for i in range(size)])


# ---------------------------------------------------------------------------
# the eight generator matrices, in both transcribed variants
#
# SIGMA_TERMS[A] = (prefactor_is_i, ((sign, m, n), ...)) gives
# beta_A = pref * sum sign * matrix_unit(m, n).  TENSOR_ASSIGNMENTS[A]
# gives the sigma (x) gamma reading of the same lines.  The two variants
# are kept independent so they can be diffed against each other.

SIGMA_TERMS = {
    1: (True, ((+1, 3, 6), (+1, 4, 5), (+1, 7, 2), (+1, 8, 1),
               (-1, 1, 8), (-1, 2, 7), (-1, 5, 4), (-1, 6, 3))),
    2: (True, ((+1, 3, 2), (+1, 4, 1), (+1, 5, 8), (+1, 6, 7),
               (-1, 1, 4), (-1, 2, 3), (-1, 7, 6), (-1, 8, 5))),
    3: (False, ((+1, 2, 8), (+1, 8, 2), (+1, 3, 5), (+1, 5, 3),
                (-1, 6, 4), (-1, 4, 6), (-1, 7, 1), (-1, 1, 7))),
    4: (False, ((+1, 2, 3), (+1, 3, 2), (+1, 5, 8), (+1, 8, 5),
                (-1, 1, 4), (-1, 4, 1), (-1, 6, 7), (-1, 7, 6))),
    5: (True, ((+1, 2, 8), (+1, 3, 5), (+1, 6, 4), (+1, 7, 1),
               (-1, 1, 7), (-1, 4, 6), (-1, 5, 3), (-1, 8, 2))),
    6: (True, ((+1, 2, 4), (+1, 3, 1), (+1, 5, 7), (+1, 8, 6),
               (-1, 1, 3), (-1, 4, 2), (-1, 6, 8), (-1, 7, 5))),
    7: (False, ((+1, 1, 5), (+1, 2, 6), (+1, 5, 1), (+1, 6, 2),
                (-1, 3, 7), (-1, 4, 8), (-1, 7, 3), (-1, 8, 4))),
    8: (False, ((+1, 1, 1), (+1, 2, 2), (+1, 7, 7), (+1, 8, 8),
                (-1, 3, 3), (-1, 4, 4), (-1, 5, 5), (-1, 6, 6))),
}

# (pauli_index, gamma_index) per generator; index 8 repeats (1, 1) --
# that is a faithful transcription, not a typo to repair.
TENSOR_ASSIGNMENTS = {
    1: (1, 1), 2: (3, 1), 3: (2, 3), 4: (3, 2),
    5: (1, 3), 6: (3, 3), 7: (1, 4), 8: (1, 1),
}


def beta_sigma_expansion(a: int) -> SquareMatrix:
    """Generator beta_a from its matrix-unit expansion."""
    pref_i, terms = SIGMA_TERMS[a]
    acc = SquareMatrix.zeros(8)
    for sign, m, n in terms:
        u = matrix_unit(m, n)
        acc = acc + (u if sign > 0 else -u)
    return acc.scale(_I) if pref_i else acc


def beta_tensor_text(a: int) -> SquareMatrix:
    """Generator beta_a from its sigma (x) gamma tensor reading."""
    p, g = TENSOR_ASSIGNMENTS[a]
    return kron(pauli(p), gamma(g))


@dataclass(frozen=True)
class BetaSet:
    """One of the two generator variants; mats are beta_1..beta_8."""
    variant: str            # "sigma" | "tensor"
    mats: tuple

    def beta(self, a: int) -> SquareMatrix:
        return self.mats[a - 1]


_CACHE: dict = {}


def beta_set(variant: str = "sigma") -> BetaSet:
    if variant not in ("sigma", "tensor"):
        raise ValueError(f"unknown beta variant {variant!r}")
    if variant not in _CACHE:
        builder = beta_sigma_expansion if variant == "sigma" else beta_tensor_text
        _CACHE[variant] = BetaSet(variant, tuple(builder(a) for a in range(1, 9)))
    return _CACHE[variant]


def gram(bs: BetaSet) -> SquareMatrix:
    """G[A][B] = Tr(beta_A beta_B); 8*I for the sigma variant."""
    return SquareMatrix([[(bs.mats[a] @ bs.mats[b]).trace() for b in range(8)]
                         for a in range(8)])


def anticommutator_audit(bs: BetaSet):
    """Pairs (A, B), A<B, whose generators anticommute (1-indexed)."""
    out = []
    for a in range(8):
        for b in range(a + 1, 8):
            if (bs.mats[a] @ bs.mats[b] + bs.mats[b] @ bs.mats[a]).is_zero():
                out.append((a + 1, b + 1))
    return out


# ---------------------------------------------------------------------------
# E-matrix family
#
# E_DEFS[k] lists the generator indices whose product defines E_k, plus
# the alternate product expressions recorded alongside the definitions.

E_DEFS = {
    0: (),
    1: (1, 5),
    2: (1, 7),
    3: (7, 5),
    4: (7,),
    5: (5,),
    6: (1,),
    7: (7, 5, 1),
}

E_ALTERNATES = {
    1: ((2, 6),),
    2: ((2, 8),),
    3: ((8, 6),),
    7: ((8, 6, 1),),
}


def _beta_product(bs: BetaSet, idxs) -> SquareMatrix:
    acc = SquareMatrix.identity(8)
    for a in idxs:
        acc = acc @ bs.beta(a)
    return acc


@dataclass(frozen=True)
class EMatrixSet:
    variant: str
    mats: tuple   # E_0 .. E_7

    def e(self, k: int) -> SquareMatrix:
        return self.mats[k]


def build_E(bs: BetaSet) -> EMatrixSet:
    return EMatrixSet(bs.variant,
                      tuple(_beta_product(bs, E_DEFS[k]) for k in range(8)))


def audit_E_alternates(bs: BetaSet, ems: EMatrixSet):
    """Check every alternate product against its primary definition."""
    records = []
    for k in sorted(E_ALTERNATES):
        for alt in E_ALTERNATES[k]:
            m = _beta_product(bs, alt)
            records.append({
                "e_index": k,
                "primary": "*".join(f"beta{a}" for a in E_DEFS[k]),
                "alternate": "*".join(f"beta{a}" for a in alt),
                "equal": m == ems.mats[k],
            })
    # E_7 also factors through E_3 * E_6
    records.append({
        "e_index": 7,
        "primary": "*".join(f"beta{a}" for a in E_DEFS[7]),
        "alternate": "E3*E6",
        "equal": (ems.mats[3] @ ems.mats[6]) == ems.mats[7],
    })
    return records


# ---------------------------------------------------------------------------
# signed multiplication tables

@dataclass(frozen=True)
class SignedTable:
    """8x8 grid of (sign, basis_index) cells; None marks a product that
    is not +/- a basis element."""
    cells: tuple   # 8 rows of 8 cells

    def cell(self, i: int, j: int):
        return self.cells[i][j]

    def render(self, prefix: str):
        def tok(c):
            if c is None:
                return "?"
            sign, k = c
            return ("-" if sign < 0 else "") + f"{prefix}{k}"
        return [[tok(c) for c in row] for row in self.cells]


def signed_table(ems: EMatrixSet) -> SignedTable:
    """Multiplication table of the E family, matched against +/-E_k."""
    cells = []
    for a in range(8):
        row = []
        for b in range(8):
            p = ems.mats[a] @ ems.mats[b]
            found = None
            for k in range(8):
                if p == ems.mats[k]:
                    found = (1, k)
                    break
                if p == -ems.mats[k]:
                    found = (-1, k)
                    break
            row.append(found)
        cells.append(tuple(row))
    return SignedTable(tuple(cells))


@dataclass(frozen=True)
class TableDiff:
    identical: int
    sign_flipped: int
    structurally_different: int
    cells: tuple   # non-identical cells, row-major

    def counts(self):
        return {"identical": self.identical,
                "sign_flipped": self.sign_flipped,
                "structurally_different": self.structurally_different}


def _cell_token(c) -> str:
    if c is None:
        return "?"
    return ("+" if c[0] > 0 else "-") + str(c[1])


def compare_tables(left: SignedTable, right: SignedTable) -> TableDiff:
    identical = flipped = different = 0
    cells = []
    for i in range(8):
        for j in range(8):
            a, b = left.cell(i, j), right.cell(i, j)
            if a == b and a is not None:
                identical += 1
                continue
            if (a is not None and b is not None
                    and a[1] == b[1] and a[0] == -b[0]):
                flipped += 1
                kind = "sign-flipped"
            else:
                different += 1
                kind = "structurally-different"
            cells.append({"row": i, "col": j, "left": _cell_token(a),
                          "right": _cell_token(b), "kind": kind})
    return TableDiff(identical, flipped, different, tuple(cells))
