import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from framekit import (
    Field,
    LoewnerMargin,
    NotHermitian,
    NotOrthonormal,
    NotPositiveDefinite,
    NotSquare,
    ShapeMismatch,
    ZeroLeadingCoefficient,
    ZeroSubspace,
    adjoint,
    as_operator,
    complement_identity_residual,
    hermitian_eig,
    inner,
    loewner_check,
    operator_norm,
    orthonormal_basis,
    projected_adjoint_residual,
    projection,
    psd_power,
    quad_bound,
    substream,
)
from framekit.gen import random_operator, random_subspace_basis, random_vector


class TestAdjoint:
    def test_identity_is_self_adjoint(self):
        assert_allclose(adjoint(np.eye(3)), np.eye(3))

    def test_real_nilpotent_transposes(self):
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert_allclose(adjoint(a), np.array([[0.0, 0.0], [1.0, 0.0]]))

    def test_complex_1x1_conjugates(self):
        assert adjoint(np.array([[1j]]))[0, 0] == -1j

    @settings(max_examples=25, deadline=None, derandomize=True)
    @given(seed=st.integers(0, 10_000), rows=st.integers(1, 6), cols=st.integers(1, 6))
    def test_involution_and_norm(self, seed, rows, cols):
        a = random_operator(rows, cols, Field.COMPLEX, substream(seed, 7))
        assert np.array_equal(adjoint(adjoint(a)), a)
        assert operator_norm(a) == pytest.approx(operator_norm(adjoint(a)), rel=1e-9)


class TestValidation:
    def test_rejects_non_2d(self):
        with pytest.raises(ShapeMismatch):
            as_operator(np.zeros(3))

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            as_operator(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_rejects_inf(self):
        with pytest.raises(ValueError):
            as_operator(np.array([[np.inf]]))


class TestHermitianEig:
    def test_diagonal(self):
        dec = hermitian_eig(np.diag([4.0, 1.0]))
        assert_allclose(dec.eigenvalues, [1.0, 4.0])

    def test_2x2_closed_form(self):
        # trace/2 +- sqrt((gap/2)^2 + offdiag^2) = 1.5 +- 0.5
        dec = hermitian_eig(np.array([[1.5, 0.5], [0.5, 1.5]]))
        assert_allclose(dec.eigenvalues, [1.0, 2.0], atol=1e-12)

    def test_identity(self):
        dec = hermitian_eig(np.eye(5))
        assert_allclose(dec.eigenvalues, np.ones(5))

    def test_not_square(self):
        with pytest.raises(NotSquare):
            hermitian_eig(np.zeros((2, 3)))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @pytest.mark.parametrize("field", list(Field))
    def test_reconstruction_and_unitarity(self, field):
        rng = substream(21, 3)
        for _ in range(20):
            g = random_operator(5, 5, field, rng)
            a = g + adjoint(g)
            dec = hermitian_eig(a)
            u, w = dec.eigenvectors, dec.eigenvalues
            assert np.all(np.diff(w) >= 0)
            assert operator_norm((u * w) @ adjoint(u) - a) <= 1e-9 * operator_norm(a)
            assert operator_norm(adjoint(u) @ u - np.eye(5)) <= 1e-9


class TestPsdPower:
    def test_diagonal_inverse_sqrt(self):
        assert_allclose(psd_power(np.diag([4.0, 1.0]), -0.5), np.diag([0.5, 1.0]), atol=1e-14)

    @pytest.mark.parametrize("p", [-1.0, -0.5, 0.5, 2.0])
    def test_identity_fixed_point(self, p):
        assert_allclose(psd_power(np.eye(4), p), np.eye(4), atol=1e-14)

    def test_2x2_inverse_formula(self):
        # inverse of [[2,1],[1,2]] by adjugate/determinant: det = 3
        expected = np.array([[2.0, -1.0], [-1.0, 2.0]]) / 3.0
        assert_allclose(psd_power(np.array([[2.0, 1.0], [1.0, 2.0]]), -1.0), expected, atol=1e-14)

    def test_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefinite):
            psd_power(np.diag([1.0, -1.0]), 0.5)

    def test_rejects_singular(self):
        with pytest.raises(NotPositiveDefinite):
            psd_power(np.diag([1.0, 0.0]), -1.0)

    @pytest.mark.parametrize("field", list(Field))
    def test_sqrt_roundtrip_property(self, field):
        rng = substream(5, 9)
        for _ in range(20):
            g = random_operator(4, 4, field, rng)
            a = g @ adjoint(g) + 0.1 * np.eye(4)
            scale = operator_norm(a)
            half = psd_power(a, 0.5)
            assert operator_norm(half @ half - a) <= 1e-9 * scale
            whiten = psd_power(a, -0.5)
            assert operator_norm(whiten @ a @ whiten - np.eye(4)) <= 1e-9 * scale
            assert operator_norm(psd_power(a, -1.0) @ a - np.eye(4)) <= 1e-9 * scale


class TestOrthonormalBasis:
    def test_already_orthonormal(self):
        b = orthonormal_basis([np.array([1.0, 0.0, 0.0])])
        assert b.shape == (3, 1)
        assert_allclose(np.abs(b[:, 0]), [1.0, 0.0, 0.0], atol=1e-14)

    def test_rank_deficient_compresses(self):
        b = orthonormal_basis([np.array([1.0, 1.0]), np.array([2.0, 2.0])])
        assert b.shape == (2, 1)
        assert_allclose(np.abs(b[:, 0]), np.full(2, 2**-0.5), atol=1e-14)

    def test_standard_basis(self):
        b = orthonormal_basis(np.eye(2))
        assert b.shape == (2, 2)
        assert_allclose(adjoint(b) @ b, np.eye(2), atol=1e-14)

    def test_zero_subspace(self):
        with pytest.raises(ZeroSubspace):
            orthonormal_basis([np.zeros(3)])

    def test_empty_input(self):
        with pytest.raises(ZeroSubspace):
            orthonormal_basis([])


class TestProjection:
    def test_coordinate_projection(self):
        assert_allclose(projection(np.array([[1.0], [0.0]])), np.diag([1.0, 0.0]))

    def test_full_basis_gives_identity(self):
        assert_allclose(projection(np.eye(3)), np.eye(3))

    def test_rank_one_outer_product(self):
        b = np.full((2, 1), 2**-0.5)
        assert_allclose(projection(b), np.full((2, 2), 0.5), atol=1e-14)

    def test_rejects_non_orthonormal(self):
        with pytest.raises(NotOrthonormal):
            projection(np.array([[1.0], [1.0]]))

    @pytest.mark.parametrize("field", list(Field))
    def test_idempotent_and_hermitian(self, field):
        rng = substream(17, 11)
        for _ in range(20):
            b = random_subspace_basis(5, 2, field, rng)
            p = projection(b)
            assert operator_norm(p @ p - p) <= 1e-9
            assert operator_norm(p - adjoint(p)) <= 1e-9
            assert np.linalg.matrix_rank(p) == 2


class TestLoewnerCheck:
    def test_boundary_attained(self):
        lm = loewner_check(np.diag([0.25, 0.0]), 0.0, 0.25, tol=1e-12)
        assert lm.lower_margin == pytest.approx(0.0, abs=1e-14)
        assert lm.upper_margin == pytest.approx(0.0, abs=1e-14)
        assert lm.passed

    def test_constructed_violation(self):
        lm = loewner_check(0.5 * np.eye(2), 0.0, 0.25, tol=1e-12)
        assert lm.upper_margin == pytest.approx(-0.25)
        assert not lm.passed

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            loewner_check(np.eye(2), np.eye(3), np.eye(3), tol=0.0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            loewner_check(np.array([[0.0, 1.0], [0.0, 0.0]]), 0.0, 1.0, tol=0.0)

    def test_coordinate_parseval_partial(self, coordinate_gfusion):
        # partial reconstruction on one line: P - P^2 = 0 exactly
        p = coordinate_gfusion.partial_sum([0])
        lm = loewner_check(p - p @ p, 0.0, 0.25, tol=1e-12)
        assert lm.passed
        assert lm.lower_margin == pytest.approx(0.0, abs=1e-14)
        assert lm.upper_margin == pytest.approx(0.25, abs=1e-14)


class TestQuadBound:
    @pytest.mark.parametrize(
        "coeffs,expected",
        [((1.0, -1.0, 1.0), 0.75), ((2.0, -2.0, 1.0), 0.5), ((1.0, 0.0, 0.0), 0.0)],
    )
    def test_known_values(self, coeffs, expected):
        assert quad_bound(*coeffs) == pytest.approx(expected)

    def test_zero_leading_coefficient(self):
        with pytest.raises(ZeroLeadingCoefficient):
            quad_bound(0.0, 1.0, 1.0)

    @settings(max_examples=50, deadline=None, derandomize=True)
    @given(
        a=st.floats(0.1, 3.0),
        b=st.floats(-3.0, 3.0),
        c=st.floats(-3.0, 3.0),
        sign=st.sampled_from([1.0, -1.0]),
        seed=st.integers(0, 1_000),
    )
    def test_bounds_quadratic_form(self, a, b, c, sign, seed):
        a = sign * a
        rng = substream(seed, 13)
        g = random_operator(4, 4, Field.COMPLEX, rng)
        u = g + adjoint(g)
        u *= 10.0 / max(operator_norm(u), 10.0)  # keep ||u|| <= 10
        f = random_vector(4, Field.COMPLEX, rng)
        f /= np.linalg.norm(f)
        v = a * (u @ u) + b * u + c * np.eye(4)
        value = inner(v @ f, f).real
        bound = quad_bound(a, b, c)
        if a > 0:
            assert value >= bound - 1e-10
        else:
            assert value <= bound + 1e-10


class TestProjectedAdjointResidual:
    def test_identity_operator(self):
        basis = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        assert projected_adjoint_residual(basis, np.eye(3)) <= 1e-12

    def test_full_subspace(self):
        rng = substream(3, 15)
        t = random_operator(4, 4, Field.COMPLEX, rng) + 2 * np.eye(4)
        assert projected_adjoint_residual(np.eye(4), t) <= 1e-9 * operator_norm(t)

    def test_seeded_pair(self):
        rng = substream(7, 15)
        t = random_operator(4, 4, Field.COMPLEX, rng)
        v = random_subspace_basis(4, 2, Field.COMPLEX, rng)
        assert projected_adjoint_residual(v, t) <= 1e-12

    @pytest.mark.parametrize("field", list(Field))
    def test_100_seeded_pairs(self, field):
        rng = substream(2024, 15)
        for _ in range(100):
            t = random_operator(5, 5, field, rng)
            v = random_subspace_basis(5, int(rng.integers(1, 5)), field, rng)
            assert projected_adjoint_residual(v, t) <= 1e-10 * operator_norm(t)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            projected_adjoint_residual(np.eye(3), np.eye(4))


class TestComplementIdentityResidual:
    def test_projection_case(self):
        assert complement_identity_residual(np.diag([1.0, 0.0])) <= 1e-15

    def test_random_operators(self):
        rng = substream(9, 17)
        for _ in range(50):
            u = random_operator(5, 5, Field.COMPLEX, rng)
            assert complement_identity_residual(u) <= 1e-10 * max(1.0, operator_norm(u) ** 2)

    def test_not_square(self):
        with pytest.raises(NotSquare):
            complement_identity_residual(np.zeros((2, 3)))


class TestScalarField:
    def test_conjugation_involution(self):
        z = 1.5 - 2.5j
        assert np.conjugate(np.conjugate(z)) == z

    def test_real_scalars_fixed(self):
        assert np.conjugate(3.25) == 3.25

    def test_dtypes(self):
        assert Field.REAL.dtype == np.float64
        assert Field.COMPLEX.dtype == np.complex128
