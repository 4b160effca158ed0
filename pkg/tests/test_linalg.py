"""Exact mod-p linear algebra, cross-checked by brute-force enumeration."""

import itertools

import numpy as np
import pytest

from singeq import linalg


def _mat(rows):
    return np.array(rows, dtype=np.int64)


def brute_solutions(A, b, p):
    """All solutions of A x = b found by enumerating F_p^n."""
    n = A.shape[1]
    out = []
    for xs in itertools.product(range(p), repeat=n):
        x = _mat(xs)
        if np.array_equal((A @ x) % p, b % p):
            out.append(x)
    return out


class TestSolveAndKernel:
    def test_rank_one_system_over_f2(self):
        # oracle: enumerate all 4 vectors of F_2^2
        A = _mat([[1, 1], [0, 0]])
        b = _mat([1, 0])
        sol = linalg.solve_and_kernel(A, b, 2)
        assert sol.rank == 1
        expected = brute_solutions(A, b, 2)
        assert any(np.array_equal(sol.particular, x) for x in expected)
        assert sol.kernel.shape == (2, 1)
        assert np.array_equal(sol.kernel[:, 0], _mat([1, 1]))

    def test_identity_system(self):
        A = linalg.eye(3)
        b = _mat([1, 0, 1])
        sol = linalg.solve_and_kernel(A, b, 2)
        assert np.array_equal(sol.particular, b)
        assert sol.kernel.shape[1] == 0
        assert sol.rank == 3

    def test_zero_matrix_inconsistent(self):
        A = linalg.zeros(2, 2)
        b = _mat([1, 0])
        sol = linalg.solve_and_kernel(A, b, 2)
        assert sol.particular is None
        assert sol.kernel.shape[1] == 2
        assert sol.rank == 0

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_random_systems_match_enumeration(self, p):
        rng = np.random.default_rng(0)
        for _ in range(20):
            A = rng.integers(0, p, size=(3, 3)).astype(np.int64)
            b = rng.integers(0, p, size=3).astype(np.int64)
            sol = linalg.solve_and_kernel(A, b, p)
            brute = brute_solutions(A, b, p)
            if sol.particular is None:
                assert not brute
            else:
                assert any(np.array_equal(sol.particular, x) for x in brute)
                # solution count = p^(kernel dim)
                assert len(brute) == p ** sol.kernel.shape[1]


class TestBuildingBlocks:
    def test_kernel_basis_spans_null_space(self):
        A = _mat([[1, 1, 0], [0, 1, 1]])
        K = linalg.kernel_basis(A, 2)
        assert not ((A @ K) % 2).any()
        assert K.shape[1] == 3 - linalg.rank(A, 2)

    def test_invert_round_trip(self):
        A = _mat([[1, 1], [0, 1]])
        B = linalg.invert(A, 2)
        assert np.array_equal((A @ B) % 2, linalg.eye(2))

    def test_invert_singular_returns_none(self):
        assert linalg.invert(_mat([[1, 1], [1, 1]]), 2) is None

    def test_extend_to_basis(self):
        B = _mat([[1], [1]])
        full = linalg.extend_to_basis(B, 2)
        assert full.shape == (2, 2)
        assert linalg.invert(full, 2) is not None
        assert np.array_equal(full[:, :1], B)

    def test_solve_matrix_consistency(self):
        A = _mat([[1, 0], [1, 1], [0, 1]])
        X = _mat([[1, 1], [0, 1]])
        B = (A @ X) % 2
        Y = linalg.solve_matrix(A, B, 2)
        assert np.array_equal((A @ Y) % 2, B)

    def test_column_space_basis_rank(self):
        A = _mat([[1, 1, 0], [1, 1, 0]])
        B = linalg.column_space_basis(A, 2)
        assert B.shape[1] == 1
