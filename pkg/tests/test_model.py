import numpy as np
import pytest

from conftest import random_params
from fermifid.errors import ParameterError
from fermifid.model import (Boundary, ModelParams, Sign, build, build_cyclic,
                            build_free_ends, full_range)


def params(L, r, mu, gamma, boundary=Boundary.FREE_ENDS, sign=Sign.S4):
    return ModelParams(L=L, r=r, mu=mu, gamma=gamma, boundary=boundary,
                       sign=sign)


class TestFreeEnds:
    def test_L2_determinant_on_unit_circle(self):
        for mu, gamma in [(0.7, 0.4), (-1.0, 0.3), (0.0, 1.0), (2.0, -0.5)]:
            m = build_free_ends(params(2, 1, mu, gamma))
            assert np.linalg.det(m.Z) == pytest.approx(mu**2 + gamma**2 - 1,
                                                       abs=1e-12)

    def test_zero_range_decouples(self):
        m = build_free_ends(params(6, 0, 0.8, 1.3, sign=Sign.S3))
        assert np.array_equal(m.A, -0.8 * np.eye(6))
        assert np.array_equal(m.B, np.zeros((6, 6)))

    def test_triangular_point_gram_matrix(self):
        # at (mu, gamma) = (0, 1) with full range Z is triangular and
        # Z^T Z has the staircase form 4*min(L-i, L-j)
        L = 5
        m = build_free_ends(params(L, 4, 0.0, 1.0))
        i = np.arange(1, L + 1)
        expected = 4.0 * np.minimum.outer(L - i, L - i)
        assert np.allclose(m.Z.T @ m.Z, expected, atol=1e-14)
        assert np.allclose(np.triu(m.Z, 1), 0.0)

    def test_diagonal_entries(self):
        m = build_free_ends(params(4, 2, 1.7, 0.3, sign=Sign.S3))
        assert np.allclose(np.diag(m.A), -1.7)
        m4 = build_free_ends(params(4, 2, 1.7, 0.3, sign=Sign.S4))
        assert np.allclose(np.diag(m4.A), 1.7)


class TestCyclic:
    def test_B_first_row_r2(self):
        gamma = 1.3
        m = build_cyclic(params(8, 2, 0.4, gamma, Boundary.CYCLIC, Sign.S3))
        expected = -gamma * np.array([0, 1, 1, 0, 0, 0, -1, -1], dtype=float)
        assert np.array_equal(m.B[0], expected)

    def test_antipodal_pairing_cancels(self):
        m = build_cyclic(params(6, 3, 0.4, 1.0, Boundary.CYCLIC, Sign.S3))
        assert m.B[0, 3] == 0.0
        # while A keeps a single antipodal bond
        assert m.A[0, 3] == -1.0

    def test_row_sums_at_symmetric_point(self):
        # gamma = 0 makes Z = A symmetric; the uniform vector is an
        # eigenvector with eigenvalue equal to the row sum
        m = build_cyclic(params(5, 2, 1.0, 0.0, Boundary.CYCLIC, Sign.S4))
        assert np.allclose(m.Z, m.A)
        assert np.allclose(m.Z.sum(axis=1), 5.0)

    def test_fully_connected_odd_L(self):
        m = build_cyclic(params(7, 3, 0.2, 0.9, Boundary.CYCLIC))
        off = m.A - np.diag(np.diag(m.A))
        assert np.array_equal(off, 1.0 - np.eye(7))

    def test_circulant_structure(self, rng):
        for _ in range(5):
            L = int(rng.integers(3, 12))
            r = int(rng.integers(0, L // 2 + 1))
            m = build_cyclic(params(L, r, float(rng.uniform(-2, 2)),
                                    float(rng.uniform(-2, 2)),
                                    Boundary.CYCLIC))
            for M in (m.A, m.B):
                for j in range(1, L):
                    assert np.array_equal(M[j], np.roll(M[j - 1], 1))


class TestInvariants:
    def test_symmetry_antisymmetry_exact(self, rng):
        for _ in range(20):
            p = random_params(rng)
            m = build(p)
            assert np.array_equal(m.A, m.A.T)
            assert np.array_equal(m.B, -m.B.T)
            assert np.array_equal(np.diag(m.B), np.zeros(p.L))
            assert np.array_equal(m.Z, m.A - m.B)

    def test_sign_flip_is_global_minus(self, rng):
        for _ in range(10):
            p3 = random_params(rng, sign=Sign.S3)
            p4 = ModelParams(L=p3.L, r=p3.r, mu=p3.mu, gamma=p3.gamma,
                             boundary=p3.boundary, sign=Sign.S4)
            m3, m4 = build(p3), build(p4)
            assert np.array_equal(m4.A, -m3.A)
            assert np.array_equal(m4.B, -m3.B)

    def test_free_cyclic_agree_away_from_wrap(self, rng):
        for _ in range(8):
            L = int(rng.integers(4, 12))
            r = int(rng.integers(0, L // 2 + 1))
            mu, gamma = float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))
            mf = build(params(L, r, mu, gamma, Boundary.FREE_ENDS))
            mc = build(params(L, r, mu, gamma, Boundary.CYCLIC))
            d = np.abs(np.subtract.outer(np.arange(L), np.arange(L)))
            mask = (d <= r) | (d < L - r)
            if 2 * r == L:
                mask &= d != r  # antipodal A entries differ by construction
            assert np.array_equal(mf.A[mask], mc.A[mask])
            assert np.array_equal(mf.B[mask], mc.B[mask])

    def test_free_ends_toeplitz(self, rng):
        for _ in range(8):
            p = random_params(rng, boundary=Boundary.FREE_ENDS)
            m = build(p)
            for M in (m.A, m.B):
                for j in range(1, p.L):
                    assert np.array_equal(M[j, 1:], M[j - 1, :-1])


class TestValidation:
    def test_range_bounds(self):
        with pytest.raises(ParameterError):
            params(6, 6, 0.0, 0.0, Boundary.FREE_ENDS)
        with pytest.raises(ParameterError):
            params(6, 4, 0.0, 0.0, Boundary.CYCLIC)
        with pytest.raises(ParameterError):
            params(1, 0, 0.0, 0.0)
        with pytest.raises(ParameterError):
            params(4, -1, 0.0, 0.0)

    def test_boundary_mismatch(self):
        with pytest.raises(ParameterError):
            build_free_ends(params(4, 2, 0.0, 0.0, Boundary.CYCLIC))
        with pytest.raises(ParameterError):
            build_cyclic(params(4, 2, 0.0, 0.0, Boundary.FREE_ENDS))

    def test_full_range(self):
        assert full_range(9, Boundary.FREE_ENDS) == 8
        assert full_range(9, Boundary.CYCLIC) == 4
        assert full_range(8, Boundary.CYCLIC) == 4
