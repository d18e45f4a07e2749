"""Symbolic X, exact plane rotations, component extraction, numeric exp."""

import math

import numpy as np
import pytest
import scipy.linalg

from octo_so8 import (
    CDyadic,
    CRational,
    DegenerateBasis,
    Dyadic,
    LinearForm,
    NonFiniteInput,
    Octonion,
    SingularRotation,
    SquareMatrix,
    StructureMismatch,
    ToleranceNotMet,
    assemble_X,
    beta_set,
    block_decompose,
    duplicate_rotation_scan,
    extract_components,
    invert_exact,
    matrix_exp,
    plane_product,
    render_linear_form,
    rotate_exact,
    rotate_first_order,
    rotation_component_map,
    rotation_operator,
    spinor_transform,
    standard_spinor,
    substitute_matrix,
)
from octo_so8.matrices import matrix_unit
from octo_so8.rotations import (
    DEFAULT_TOL,
    hermiticity_defect,
    numeric_X,
    to_complex_array,
    unitarity_defect,
)
from fractions import Fraction

ONES = [Dyadic(1)] * 8


def span_combination(forms, bs):
    acc = SquareMatrix.zeros(8).map(lambda e: LinearForm.const(e))
    for a in range(8):
        acc = acc + bs.mats[a].map(lambda c, f=forms[a]: c * f)
    return acc


class TestSymbolicX:
    def test_matches_fixture(self, fx):
        assert assemble_X() == fx.eq6

    def test_hermitian_traceless(self):
        x = assemble_X()
        assert x.is_hermitian()
        assert x.is_traceless()

    def test_block_decomposition(self, fx):
        dec = block_decompose(assemble_X())
        assert dec.a == fx.eq6.block(0, 0, 4)
        assert dec.b == fx.eq6.block(1, 0, 4)
        assert dec.reassemble() == assemble_X()

    def test_block_mismatch_located(self):
        perturbed = assemble_X() + matrix_unit(1, 5)
        with pytest.raises(StructureMismatch) as exc:
            block_decompose(perturbed)
        assert (1, 5) in exc.value.cells


class TestRotationOperator:
    def test_matches_fixture_parts(self, fx):
        theta = Dyadic(1, 1)
        expected = fx.eq12_const + fx.eq12_theta.scale(CDyadic(theta))
        assert rotation_operator(1, 2, theta) == expected
        assert fx.eq12_const == SquareMatrix.identity(8)
        assert fx.eq12_theta == plane_product(1, 2)

    def test_plane_validation(self):
        with pytest.raises(ValueError):
            plane_product(1, 1)
        with pytest.raises(ValueError):
            plane_product(0, 2)

    def test_exact_inverse(self):
        r = rotation_operator(1, 2, Dyadic(1, 1))
        r_q = r.map(CRational._coerce)
        assert r_q @ invert_exact(r_q) == SquareMatrix.identity(8)

    def test_singular_matrix_rejected(self):
        with pytest.raises(SingularRotation):
            invert_exact(SquareMatrix.zeros(2))


class TestExactRotation:
    def test_known_tangent_values(self):
        # conjugating f = e_1 in the (1,2) plane at theta = 1/4 must land
        # on ((1-t^2)/(1+t^2), -2t/(1+t^2)) = (15/17, -8/17)
        fvals = [Dyadic(1)] + [Dyadic(0)] * 7
        x_num = substitute_matrix(assemble_X(), fvals)
        rotated = rotate_exact(x_num, 1, 2, Dyadic(1, 2))
        forms, residual = extract_components(rotated)
        comps = [f.constant for f in forms]
        assert comps[0] == CRational(Fraction(15, 17))
        assert comps[1] == CRational(Fraction(-8, 17))
        assert all(c.is_zero() for c in comps[2:])
        assert residual.is_zero()

    def test_preserves_hermiticity_and_trace(self):
        rotated = rotate_exact(assemble_X(), 1, 2, Dyadic(1, 1))
        assert rotated.is_hermitian()
        assert rotated.is_traceless()

    def test_second_order_scaling(self):
        # deviation from the first-order map must drop ~4x when theta halves
        x_num = substitute_matrix(assemble_X(), ONES)

        def deviation(theta):
            exact = rotate_exact(x_num, 1, 2, theta)
            first = rotate_first_order(x_num, 1, 2, theta).x_prime
            diff = exact - first
            return max(abs(complex(e)) for row in diff.rows for e in row)

        ratio = deviation(Dyadic(1, 6)) / deviation(Dyadic(1, 7))
        assert 3.5 <= ratio <= 4.5


class TestFirstOrder:
    def test_commutator_matches_fixture(self, fx):
        fo = rotate_first_order(assemble_X(), 1, 2, Dyadic(1))
        assert fo.commutator == fx.eq13.scale(2)

    def test_increment_is_linear_in_theta(self):
        x = assemble_X()
        a = rotate_first_order(x, 1, 2, Dyadic(1, 2)).increment
        b = rotate_first_order(x, 1, 2, Dyadic(1, 1)).increment
        assert b == a.scale(2)
        assert rotate_first_order(x, 1, 2, Dyadic(1, 2)).x_prime == x + a


class TestComponentExtraction:
    def test_projection_of_X_is_identity_map(self):
        forms, residual = extract_components(assemble_X())
        assert residual.is_zero()
        for a in range(8):
            assert forms[a] == LinearForm.symbol(a + 1)

    def test_reconstruction_is_exact(self):
        bs = beta_set()
        comm = rotate_first_order(assemble_X(), 1, 2, Dyadic(1)).commutator
        forms, residual = extract_components(comm)
        assert span_combination(forms, bs) + residual == comm

    def test_component_map_lines(self):
        cm = rotation_component_map(1, 2)
        rendered = [render_linear_form(f) for f in cm.lines]
        assert rendered == ["2*f2", "-2*f1", "0", "0",
                            "2*f6", "-2*f5", "2*f8", "-2*f7"]

    def test_component_map_residual_cells(self):
        cm = rotation_component_map(1, 2)
        cells = [(i, j, render_linear_form(e))
                 for i, j, e in cm.residual.nonzero_cells()]
        assert cells == [
            (1, 8, "-2*f4"), (2, 7, "2*f4"), (3, 6, "2*f4"), (4, 5, "-2*f4"),
            (5, 4, "-2*f4"), (6, 3, "2*f4"), (7, 2, "2*f4"), (8, 1, "-2*f4"),
        ]

    def test_apply(self):
        cm = rotation_component_map(1, 2)
        out = cm.apply([Dyadic(1)] + [Dyadic(0)] * 7, Dyadic(1, 2))
        assert out[1] == CDyadic(Dyadic(-1, 1))  # f2' = -2*theta*f1 = -1/2

    def test_degenerate_basis_detected(self):
        with pytest.raises(DegenerateBasis):
            extract_components(SquareMatrix.zeros(8), beta_set("tensor"))


class TestDuplicatePlanes:
    def test_class_of_plane_1_2(self):
        classes = duplicate_rotation_scan()
        cls = next(c for c in classes if (1, 2) in c)
        assert cls == ((1, 2), (5, 6), (7, 8))

    def test_partition_of_all_28_pairs(self):
        classes = duplicate_rotation_scan()
        sizes = sorted(len(c) for c in classes)
        assert sum(sizes) == 28
        assert len(classes) == 23
        assert sizes.count(3) == 1 and sizes.count(2) == 3

    def test_duplicate_planes_share_operator(self):
        theta = Dyadic(3, 2)
        assert rotation_operator(5, 6, theta) == rotation_operator(1, 2, theta)
        assert rotation_operator(7, 8, theta) == rotation_operator(1, 2, theta)


class TestNumericExponential:
    def test_zero_gives_exact_identity(self):
        e = matrix_exp(np.zeros((8, 8)))
        assert np.array_equal(e, np.eye(8, dtype=np.complex128))

    def test_against_scipy(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            a *= 0.8
            assert np.max(np.abs(matrix_exp(a) - scipy.linalg.expm(a))) < 1e-9

    def test_diagonal_oracle(self):
        d = np.diag([0.5, -1.0, 2.0, 0.0]).astype(np.complex128)
        expected = np.diag(np.exp([0.5, -1.0, 2.0, 0.0]))
        assert np.max(np.abs(matrix_exp(d) - expected)) < 1e-12

    def test_skew_hermitian_gives_unitary(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        h = a + a.conj().T
        assert unitarity_defect(matrix_exp(1j * h)) < 1e-9

    def test_hermitian_input_gives_hermitian_exp(self):
        e = matrix_exp(numeric_X([0.3, -0.2, 0.7, 0.1, 0.0, -0.5, 0.4, 0.9]))
        assert hermiticity_defect(e) < 1e-10

    def test_tolerance_not_met(self):
        with pytest.raises(ToleranceNotMet):
            matrix_exp(np.eye(2), tol=1e-300, max_terms=3)

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteInput):
            matrix_exp(np.full((2, 2), np.nan))

    def test_f8_only_diagonal(self):
        e = matrix_exp(numeric_X([0.0] * 7 + [math.log(2.0)]))
        expected = np.diag([2.0, 2.0, 0.5, 0.5, 0.5, 0.5, 2.0, 2.0])
        assert np.max(np.abs(e - expected)) < 10 * DEFAULT_TOL


class TestNumericHelpers:
    def test_numeric_X_matches_symbolic_substitution(self):
        fvals = [Dyadic(k, 1) for k in range(1, 9)]
        sym = substitute_matrix(assemble_X(), fvals)
        assert np.allclose(to_complex_array(sym),
                           numeric_X([float(v) for v in fvals]))

    def test_spinor_transform_at_zero(self):
        out = spinor_transform(standard_spinor(), np.zeros((8, 8)))
        for k, o in enumerate(out):
            assert o == Octonion.unit(k, 1.0 + 0j)

    def test_spinor_length_checked(self):
        with pytest.raises(ValueError):
            spinor_transform(standard_spinor()[:3], np.zeros((8, 8)))
