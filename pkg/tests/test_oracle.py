import numpy as np
import pytest

from avekit import analysis as an
from avekit import problems as pr
from avekit.errors import DimensionTooLarge, NotUnique
from avekit.oracle import enumerate_solutions, unique_solution

from conftest import random_matrix, rng


class TestEnumerateSolutions:
    def test_zero_matrix(self):
        b = np.array([3.0, -4.0])
        result = enumerate_solutions(pr.AveProblem(np.zeros((2, 2)), b))
        assert len(result.solutions) == 1
        assert np.array_equal(result.solutions[0][1], b)

    def test_circulant_unique(self):
        result = enumerate_solutions(pr.newton_cycle_instance())
        assert len(result.solutions) == 1
        assert result.solutions[0][1] == pytest.approx(np.full(3, 8.0 / 3.0), rel=1e-13)

    def test_inflated_scalar_no_solutions(self):
        problem = pr.AveProblem(pr.inflated_identity(0.5, 1), np.array([1.0]))
        result = enumerate_solutions(problem)
        assert result.solutions == []

    def test_inflated_pair_multiple_solutions(self):
        problem = pr.AveProblem(pr.inflated_identity(0.01, 2), np.array([-1.0, -1.0]))
        result = enumerate_solutions(problem)
        assert len(result.solutions) == 4
        found = [z for _, z in result.solutions]
        assert any(np.abs(z - 100.0).max() < 1e-6 for z in found)

    def test_boundary_solution_deduplicated(self):
        # z = (0, 1) sits on an orthant boundary and is found under two
        # signatures; only one representative may remain.
        problem = pr.AveProblem(np.zeros((2, 2)), np.array([0.0, 1.0]))
        result = enumerate_solutions(problem)
        assert len(result.solutions) == 1
        sig, z = result.solutions[0]
        assert np.array_equal(sig, [1, 1])

    def test_singular_signature_recorded(self):
        # I - AS is singular for S = diag(1): A = I (n=1).
        problem = pr.AveProblem(np.array([[1.0]]), np.array([-1.0]))
        result = enumerate_solutions(problem)
        assert any(np.array_equal(s, [1]) for s in result.singular_signatures)
        assert len(result.solutions) == 1  # z = -1/2 from the negative orthant

    def test_dimension_cap(self):
        with pytest.raises(DimensionTooLarge):
            enumerate_solutions(pr.AveProblem(np.zeros((13, 13)), np.zeros(13)))

    @pytest.mark.parametrize("seed", range(20))
    def test_accepted_solutions_verify(self, seed):
        n = 2 + seed % 5
        a = random_matrix(seed, n, norm=1.4)
        b = rng(seed + 1).uniform(-1, 1, size=n)
        problem = pr.AveProblem(a, b)
        result = enumerate_solutions(problem)
        for sig, z in result.solutions:
            assert pr.residual(problem, z) <= 1e-10 * (1 + np.abs(b).max())
            assert (sig * z >= -1e-10 * (1 + np.abs(z).max())).all()

    @pytest.mark.parametrize("seed", range(20))
    def test_count_invariant_under_relabeling(self, seed):
        n = 2 + seed % 4
        a = random_matrix(seed + 10, n, norm=1.3)
        b = rng(seed + 2).uniform(-1, 1, size=n)
        perm = rng(seed + 3).permutation(n)
        p = np.eye(n)[perm]
        direct = enumerate_solutions(pr.AveProblem(a, b))
        relabeled = enumerate_solutions(pr.AveProblem(p @ a @ p.T, p @ b))
        assert len(direct.solutions) == len(relabeled.solutions)


class TestUniqueSolution:
    def test_norm_below_one_always_unique(self):
        for seed in range(20):
            n = 2 + seed % 4
            a = random_matrix(seed + 30, n, norm=0.95)
            b = rng(seed).uniform(-1, 1, size=n)
            z = unique_solution(pr.AveProblem(a, b))
            assert pr.residual(pr.AveProblem(a, b), z) <= 1e-10 * (1 + np.abs(b).max())

    def test_not_unique_when_empty(self):
        problem = pr.AveProblem(pr.inflated_identity(0.01, 2), np.array([1.0, 1.0]))
        with pytest.raises(NotUnique):
            unique_solution(problem)

    @pytest.mark.parametrize("seed", range(10))
    def test_radius_separates_uniqueness(self, seed):
        # Rescale a random matrix to both sides of the threshold and probe
        # each with a batch of right-hand sides.  Half the sides are drawn
        # uniformly, half as b = (S - A)u with u > 0, which plants a
        # solution in orthant S; when some orthant carries the minority
        # determinant sign, its fiber holds several solutions.
        n = 2 + seed % 4
        base = random_matrix(seed + 50, n)
        r = an.rho_sr_enum(base)
        g = rng(seed + 60)

        def sides(a):
            for i in range(20):
                if i % 2 == 0:
                    yield g.uniform(-1, 1, size=n)
                else:
                    s = g.choice([-1.0, 1.0], size=n)
                    yield (np.diag(s) - a) @ g.uniform(0.1, 1.0, size=n)

        below = base * (0.85 / r)
        for b in sides(below):
            assert len(enumerate_solutions(pr.AveProblem(below, b)).solutions) == 1
        above = base * (1.25 / r)
        counts = [
            len(enumerate_solutions(pr.AveProblem(above, b)).solutions)
            for b in sides(above)
        ]
        assert any(c != 1 for c in counts)
