"""SO(8) rotation machinery over the generator matrices.

The symbolic object of interest is X = sum_A f_A beta_A, an 8x8 matrix
of linear forms.  Rotations act by conjugation with R_kl = I + theta *
beta_k beta_l; this module provides the exact conjugation (Gaussian
elimination over the rational-complex field, f symbols carried
linearly), the first-order commutator approximation, component
extraction by trace projection, the duplicate-plane scan, and the
numeric matrix exponential used for spinor transport.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .exact import CDyadic, CRational, CR_ONE, CR_ZERO, Dyadic
from .matrices import BetaSet, SquareMatrix, beta_set, gram
from .octonion import Octonion
from .symbolic import LinearForm


class StructureMismatch(ValueError):
    """Block structure of a symbolic matrix is not the expected compact
    form; carries the offending 1-indexed cells."""

    def __init__(self, message, cells):
        super().__init__(message)
        self.cells = cells


class SingularRotation(ValueError):
    """Exact elimination met a singular matrix."""


class DegenerateBasis(ValueError):
    """Component extraction attempted against a singular Gram matrix."""


class NonFiniteInput(ValueError):
    """Numeric path fed NaN or infinity."""


class ToleranceNotMet(ArithmeticError):
    """Series did not reach tolerance within the iteration cap."""


# ---------------------------------------------------------------------------
# symbolic assembly

def assemble_X(betas: Optional[BetaSet] = None) -> SquareMatrix:
    """X with entry (i,j) = sum_A beta_A[i][j] * f_A."""
    bs = betas or beta_set()
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            coeffs = [CDyadic(0)] + [bs.mats[a].at(i, j) for a in range(8)]
            row.append(LinearForm(coeffs))
        rows.append(row)
    return SquareMatrix(rows)


@dataclass(frozen=True)
class BlockDecomp:
    """X = [[A, B+], [B, -A]] reading; a and b are the 4x4 form blocks."""
    a: SquareMatrix
    b: SquareMatrix

    def reassemble(self) -> SquareMatrix:
        from .matrices import from_blocks
        return from_blocks(self.a, self.b.conj_transpose(), self.b, -self.a)


def block_decompose(x: SquareMatrix) -> BlockDecomp:
    tl, tr = x.block(0, 0, 4), x.block(0, 1, 4)
    bl, br = x.block(1, 0, 4), x.block(1, 1, 4)
    bad = []
    expect_tr = bl.conj_transpose()
    for i in range(4):
        for j in range(4):
            if not tr.at(i, j) == expect_tr.at(i, j):
                bad.append((i + 1, j + 5))
            if not br.at(i, j) == -tl.at(i, j):
                bad.append((i + 5, j + 5))
    if bad:
        raise StructureMismatch("matrix is not in compact block form", bad)
    return BlockDecomp(tl, bl)


# ---------------------------------------------------------------------------
# rotation operators

def plane_product(k: int, l: int, betas: Optional[BetaSet] = None) -> SquareMatrix:
    """beta_k beta_l for a rotation plane (k, l), 1-indexed, k != l."""
    if k == l:
        raise ValueError("rotation plane needs two distinct indices")
    if not (1 <= k <= 8 and 1 <= l <= 8):
        raise ValueError("plane indices out of range 1..8")
    bs = betas or beta_set()
    return bs.beta(k) @ bs.beta(l)


def rotation_operator(k: int, l: int, theta: Dyadic,
                      betas: Optional[BetaSet] = None) -> SquareMatrix:
    """R_kl = I + theta * beta_k beta_l, exact CDyadic entries."""
    n = plane_product(k, l, betas)
    return SquareMatrix.identity(8) + n.scale(CDyadic(theta))


def invert_exact(m: SquareMatrix) -> SquareMatrix:
    """Gauss-Jordan inverse over CRational entries."""
    n = m.n
    a = [[CRational._coerce(m.at(i, j)) for j in range(n)] +
         [CR_ONE if i == j else CR_ZERO for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            raise SingularRotation(f"singular at column {col + 1}")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inv()
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r == col or a[r][col].is_zero():
                continue
            factor = a[r][col]
            a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return SquareMatrix([row[n:] for row in a])


def rotate_exact(x: SquareMatrix, k: int, l: int, theta: Dyadic,
                 betas: Optional[BetaSet] = None) -> SquareMatrix:
    """R x R^-1 exactly; resulting form coefficients live in the
    rational-complex field (denominators like 1 + theta^2 appear)."""
    r = rotation_operator(k, l, theta, betas)
    r_q = r.map(lambda e: CRational._coerce(e))
    r_inv = invert_exact(r_q)
    return (r_q @ x) @ r_inv


@dataclass(frozen=True)
class FirstOrderRotation:
    """x_prime = x + increment, increment = theta * [beta_k beta_l, x]."""
    x_prime: SquareMatrix
    increment: SquareMatrix
    commutator: SquareMatrix   # [beta_k beta_l, x], theta not yet applied


def rotate_first_order(x: SquareMatrix, k: int, l: int, theta: Dyadic,
                       betas: Optional[BetaSet] = None) -> FirstOrderRotation:
    n = plane_product(k, l, betas)
    comm = (n @ x) - (x @ n)
    incr = comm.map(lambda e: CDyadic(theta) * e)
    return FirstOrderRotation(x + incr, incr, comm)


# ---------------------------------------------------------------------------
# component extraction

def extract_components(m: SquareMatrix, betas: Optional[BetaSet] = None):
    """Project a symbolic matrix onto the generator span.

    Returns (forms, residual): forms[A] is the coefficient of beta_A as
    a LinearForm, residual = m - sum_A forms[A] * beta_A (exact).
    Raises DegenerateBasis when the Gram matrix is singular.
    """
    bs = betas or beta_set()
    g = gram(bs)
    try:
        g_inv = invert_exact(g)
    except SingularRotation as exc:
        raise DegenerateBasis("generator Gram matrix is singular") from exc
    traces = [(bs.mats[a] @ m).trace() for a in range(8)]
    forms = []
    for a in range(8):
        acc = LinearForm.zero()
        for b in range(8):
            c = g_inv.at(a, b)
            if not c.is_zero():
                acc = acc + c * traces[b]
        forms.append(acc)
    recon = _span_combination(forms, bs)
    return tuple(forms), m - recon


def _span_combination(forms: Sequence[LinearForm], bs: BetaSet) -> SquareMatrix:
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            acc = LinearForm.zero()
            for a in range(8):
                c = bs.mats[a].at(i, j)
                if not c.is_zero():
                    acc = acc + c * forms[a]
            row.append(acc)
        rows.append(row)
    return SquareMatrix(rows)


@dataclass(frozen=True)
class ComponentMap:
    """First-order component flow f_A -> f_A + theta * lines[A](f)."""
    k: int
    l: int
    lines: tuple         # 8 LinearForms, the theta coefficients
    residual: SquareMatrix   # per-theta residual outside the span

    def apply(self, fvals: Sequence, theta) -> list:
        out = []
        for a in range(8):
            out.append(fvals[a] + CDyadic(theta) * self.lines[a].substitute(fvals))
        return out


def rotation_component_map(k: int, l: int,
                           betas: Optional[BetaSet] = None) -> ComponentMap:
    """Trace-projected first-order action of the (k, l) rotation."""
    bs = betas or beta_set()
    x = assemble_X(bs)
    n = plane_product(k, l, bs)
    comm = (n @ x) - (x @ n)
    forms, residual = extract_components(comm, bs)
    return ComponentMap(k, l, forms, residual)


# ---------------------------------------------------------------------------
# duplicate-plane scan

def duplicate_rotation_scan(betas: Optional[BetaSet] = None):
    """Partition all 28 planes (k < l) by exact equality of
    beta_k beta_l; classes come back sorted by first member."""
    bs = betas or beta_set()
    groups: dict = {}
    order = []
    for k in range(1, 9):
        for l in range(k + 1, 9):
            key = plane_product(k, l, bs)
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append((k, l))
    return [tuple(groups[key]) for key in order]


# ---------------------------------------------------------------------------
# numeric exponential and spinor transport

def to_complex_array(m: SquareMatrix) -> np.ndarray:
    """Exact CDyadic matrix -> complex128; raises when any entry is not
    exactly representable in binary64."""
    out = np.empty((m.n, m.n), dtype=np.complex128)
    for i in range(m.n):
        for j in range(m.n):
            e = m.at(i, j)
            out[i, j] = e.to_complex_exact() if isinstance(e, CDyadic) else complex(e)
    return out


def substitute_matrix(x: SquareMatrix, fvals: Sequence) -> SquareMatrix:
    """Evaluate every linear-form entry at f = fvals."""
    return x.map(lambda form: form.substitute(fvals))


def numeric_X(fvals: Sequence, betas: Optional[BetaSet] = None) -> np.ndarray:
    """sum_A f_A beta_A as a complex array; fvals may be floats."""
    bs = betas or beta_set()
    acc = np.zeros((8, 8), dtype=np.complex128)
    for a in range(8):
        acc = acc + complex(fvals[a]) * to_complex_array(bs.mats[a])
    return acc


DEFAULT_TOL = 2.0 ** -40
DEFAULT_MAX_TERMS = 64


def matrix_exp(m: np.ndarray, tol: float = DEFAULT_TOL,
               max_terms: int = DEFAULT_MAX_TERMS) -> np.ndarray:
    """Scaling-and-squaring Taylor exponential.

    Scales by 2**-s until the max-row-sum norm is <= 1/2, sums the
    Taylor series until the next term's max-entry magnitude drops below
    tol, then squares s times.  Raises NonFiniteInput / ToleranceNotMet.
    """
    a = np.asarray(m, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput("matrix contains NaN or infinity")
    norm = float(np.max(np.sum(np.abs(a), axis=1))) if a.size else 0.0
    s = 0
    while norm > 0.5:
        norm /= 2.0
        s += 1
    scaled = a / (2.0 ** s)
    n = a.shape[0]
    result = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    converged = False
    for k in range(1, max_terms + 1):
        term = term @ scaled / k
        result = result + term
        if float(np.max(np.abs(term))) < tol:
            converged = True
            break
    if not converged:
        raise ToleranceNotMet(
            f"exponential series above tol {tol} after {max_terms} terms")
    for _ in range(s):
        result = result @ result
    return result


def spinor_transform(psi: Sequence[Octonion], x_num: np.ndarray,
                     tol: float = DEFAULT_TOL,
                     max_terms: int = DEFAULT_MAX_TERMS) -> list:
    """psi'_i = sum_j exp(X)_{ij} psi_j, coefficients as complex."""
    if len(psi) != x_num.shape[0]:
        raise ValueError("spinor length does not match the matrix")
    e = matrix_exp(x_num, tol, max_terms)
    numeric = [Octonion([complex(c) for c in o.coeffs]) for o in psi]
    out = []
    for i in range(len(psi)):
        acc = Octonion.zero(0j)
        for j in range(len(psi)):
            acc = acc + complex(e[i, j]) * numeric[j]
        out.append(acc)
    return out


def standard_spinor() -> list:
    """(1, e1, ..., e7) as exact bioctonions."""
    one = CDyadic(1)
    return [Octonion.unit(k, one) for k in range(8)]


def hermiticity_defect(e: np.ndarray) -> float:
    return float(np.max(np.abs(e - e.conj().T)))


def unitarity_defect(e: np.ndarray) -> float:
    n = e.shape[0]
    return float(np.max(np.abs(e.conj().T @ e - np.eye(n))))
