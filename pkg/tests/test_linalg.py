import numpy as np
import pytest

from avekit import linalg as la
from avekit.errors import DimensionTooLarge, SingularMatrix

from conftest import random_matrix, well_conditioned_matrix, random_signature

CIRCULANT = np.array([[0.0, 0.0, 0.625], [0.625, 0.0, 0.0], [0.0, 0.625, 0.0]])


class TestInfinityNorm:
    def test_zero_matrix(self):
        assert la.infinity_norm(np.zeros((2, 2))) == 0.0

    def test_trap_matrix(self):
        eps = 0.01
        a = np.array([[eps / 2, (1 + eps) / 2], [0.0, 0.5]])
        assert la.infinity_norm(a) == pytest.approx(0.51, abs=1e-15)

    def test_circulant(self):
        assert la.infinity_norm(CIRCULANT) == 0.625

    def test_one_norm(self):
        a = np.array([[1.0, -2.0], [3.0, 0.5]])
        assert la.one_norm(a) == 4.0


class TestLu:
    def test_identity(self):
        f = la.lu_factor(np.eye(3))
        assert f.sign == 1
        assert np.array_equal(f.perm, np.arange(3))
        assert np.array_equal(f.lu, np.eye(3))

    def test_row_swap(self):
        a = np.array([[0.0, 1.0], [1.0, 0.0]])
        f = la.lu_factor(a)
        assert f.sign == -1
        assert la.determinant(a) == -1.0

    def test_rank_deficient_raises(self):
        with pytest.raises(SingularMatrix):
            la.lu_factor(np.ones((2, 2)))

    @pytest.mark.parametrize("seed", range(30))
    def test_reconstruction(self, seed):
        n = 2 + seed % 7
        a = random_matrix(seed, n)
        f = la.lu_factor(a)
        lower = np.tril(f.lu, -1) + np.eye(n)
        upper = np.triu(f.lu)
        err = np.abs(a[f.perm] - lower @ upper).max()
        assert err <= 1e-12 * (1.0 + la.infinity_norm(a))

    def test_solve_identity(self):
        b = np.array([3.0, -4.0, 5.0])
        assert np.array_equal(la.lu_solve(la.lu_factor(np.eye(3)), b), b)

    def test_solve_circulant_shifted(self):
        # (I - A)x = 1 with the 5/8 circulant: by symmetry x = 1/(1 - 5/8).
        x = la.lu_solve(la.lu_factor(np.eye(3) - CIRCULANT), np.ones(3))
        assert x == pytest.approx(np.full(3, 8.0 / 3.0), rel=1e-14)

    def test_solve_diagonal(self):
        x = la.lu_solve(la.lu_factor(np.diag([2.0, 4.0])), np.array([2.0, 8.0]))
        assert np.array_equal(x, [1.0, 2.0])

    def test_solve_residual_bound_many(self):
        failures = 0
        for seed in range(1000):
            n = 2 + seed % 9
            a = well_conditioned_matrix(seed, n)
            b = np.random.default_rng(seed + 1).uniform(-1, 1, size=n)
            x = la.lu_solve(la.lu_factor(a), b)
            bound = 1e-10 * (
                1.0 + la.infinity_norm(a) * np.abs(x).max() + np.abs(b).max()
            )
            if np.abs(a @ x - b).max() > bound:
                failures += 1
        assert failures == 0

    def test_solve_matrix_rhs(self):
        a = well_conditioned_matrix(7, 4)
        inv = la.lu_solve(la.lu_factor(a), np.eye(4))
        assert np.abs(a @ inv - np.eye(4)).max() < 1e-12


class TestDeterminant:
    def test_identity(self):
        assert la.determinant(np.eye(3)) == 1.0

    def test_swap(self):
        assert la.determinant(np.array([[0.0, 1.0], [1.0, 0.0]])) == -1.0

    def test_signed_shift(self):
        a = np.eye(2) - 0.25 * np.eye(2) @ np.diag([1.0, -1.0])
        assert la.determinant(a) == pytest.approx(0.9375, abs=1e-15)

    def test_singular_returns_zero(self):
        assert la.determinant(np.ones((3, 3))) == 0.0

    @pytest.mark.parametrize("seed", range(200))
    def test_multiplicative(self, seed):
        a = random_matrix(2 * seed, 5)
        b = random_matrix(2 * seed + 1, 5)
        lhs = la.determinant(a @ b)
        rhs = la.determinant(a) * la.determinant(b)
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)


class TestCharPoly:
    def test_identity(self):
        assert la.char_poly(np.eye(2)) == pytest.approx([1.0, -2.0, 1.0])

    def test_swap(self):
        assert la.char_poly(np.array([[0.0, 1.0], [1.0, 0.0]])) == pytest.approx(
            [-1.0, 0.0, 1.0]
        )

    def test_circulant(self):
        a = 0.625
        assert la.char_poly(CIRCULANT) == pytest.approx([-(a**3), 0.0, 0.0, 1.0])

    def test_monic(self):
        p = la.char_poly(random_matrix(3, 6))
        assert p[-1] == 1.0

    def test_dimension_cap(self):
        with pytest.raises(DimensionTooLarge):
            la.char_poly(np.eye(17))

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_determinant_samples(self, seed):
        # Independent route: det(x I - A) evaluated pointwise must agree
        # with the recursion's polynomial.
        n = 2 + seed % 5
        a = random_matrix(seed + 100, n)
        p = la.char_poly(a)
        for x in np.linspace(-2.0, 2.0, n + 3):
            direct = la.determinant(x * np.eye(n) - a)
            assert la.poly_eval(p, x) == pytest.approx(direct, rel=1e-9, abs=1e-9)


class TestRealRoots:
    def test_two_roots(self):
        roots = la.real_roots(np.array([-1.0, 0.0, 1.0]), -2.0, 2.0)
        assert roots == pytest.approx([-1.0, 1.0], abs=1e-10)

    def test_no_real_roots(self):
        assert la.real_roots(np.array([1.0, 0.0, 1.0]), -2.0, 2.0).size == 0

    def test_cube_root(self):
        a = 0.625
        roots = la.real_roots(np.array([-(a**3), 0.0, 0.0, 1.0]), -1.0, 1.0)
        assert roots == pytest.approx([a], abs=1e-10)

    def test_double_root_reported_once(self):
        roots = la.real_roots(np.array([1.0, -2.0, 1.0]), -2.0, 2.0)
        assert roots == pytest.approx([1.0], abs=1e-7)

    def test_root_at_interval_edge(self):
        roots = la.real_roots(np.array([-1.0, 0.0, 1.0]), -1.0, 1.0)
        assert roots == pytest.approx([-1.0, 1.0], abs=1e-9)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            la.real_roots(np.zeros(3), -1.0, 1.0)

    @pytest.mark.parametrize("seed", range(40))
    def test_no_missed_sign_changes(self, seed):
        # Every sign change on a 1024-point grid must have a reported root
        # nearby (odd-multiplicity roots cannot be skipped).
        g = np.random.default_rng(seed)
        deg = int(g.integers(2, 7))
        true_roots = g.uniform(-1.5, 1.5, size=deg)
        p = np.array([1.0])
        for r in true_roots:
            p = np.convolve(p, np.array([-r, 1.0]))
        tol = 1e-9
        found = la.real_roots(p, -2.0, 2.0, tol=tol)
        grid = np.linspace(-2.0, 2.0, 1024)
        vals = la.poly_eval(p, grid)
        for i in range(len(grid) - 1):
            if vals[i] != 0.0 and vals[i + 1] != 0.0 and (vals[i] > 0) != (vals[i + 1] > 0):
                lo, hi = grid[i] - tol, grid[i + 1] + tol
                assert ((found >= lo) & (found <= hi)).any()


class TestRho0:
    def test_rotation_has_no_real_eigenvalue(self):
        assert la.rho0(np.array([[0.0, -1.0], [1.0, 0.0]])) == 0.0

    def test_diagonal(self):
        assert la.rho0(np.diag([0.3, -0.9])) == pytest.approx(0.9, abs=1e-11)

    def test_circulant(self):
        assert la.rho0(CIRCULANT) == pytest.approx(0.625, abs=1e-11)

    def test_zero(self):
        assert la.rho0(np.zeros((4, 4))) == 0.0

    def test_dimension_cap(self):
        with pytest.raises(DimensionTooLarge):
            la.rho0(np.eye(17))

    @pytest.mark.parametrize("seed", range(10))
    def test_signature_similarity_invariance_exhaustive(self, seed):
        # S A S is a similarity for every signature S, so the real
        # spectrum is unchanged; check all 2^n signatures.
        n = 2 + seed % 3
        a = random_matrix(seed + 300, n)
        expected = la.rho0(a)
        for bits in range(1 << n):
            s = np.array([1.0 if (bits >> j) & 1 == 0 else -1.0 for j in range(n)])
            sas = s[:, None] * a * s[None, :]
            assert la.rho0(sas) == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_repeated_eigenvalue_identities(self, n):
        # +-I_n has an n-fold eigenvalue at +-1; locating a root of
        # multiplicity m from polynomial values blurs by about eps^(1/m).
        blur = 4.0 * (n * 2.3e-16) ** (1.0 / n) + 1e-10
        assert abs(la.rho0(np.eye(n)) - 1.0) <= blur
        assert abs(la.rho0(-np.eye(n)) - 1.0) <= blur

    @pytest.mark.parametrize("n", range(2, 9))
    def test_structured_matrices(self, n):
        assert la.rho0(np.diag(np.linspace(-0.9, 0.8, n))) == pytest.approx(
            0.9, abs=1e-10
        )
        assert la.rho0(np.triu(np.ones((n, n)), 1)) == pytest.approx(0.0, abs=1e-9)
        assert la.rho0(np.full((n, n), 0.3)) == pytest.approx(0.3 * n, rel=1e-9)

    @pytest.mark.parametrize("seed", range(25))
    def test_agrees_with_real_roots_route(self, seed):
        # Dual route: isolate every root of the characteristic polynomial
        # with the scalar Sturm machinery and compare maxima.
        n = 2 + seed % 5
        a = random_matrix(seed + 500, n)
        bound = la.infinity_norm(a)
        roots = la.real_roots(la.char_poly(a), -bound - 1e-9, bound + 1e-9, tol=1e-12)
        expected = float(np.abs(roots).max()) if roots.size else 0.0
        assert la.rho0(a) == pytest.approx(expected, abs=1e-9)
