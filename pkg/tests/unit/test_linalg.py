"""Unit tests for exact linear algebra over F_p."""

import numpy as np
import pytest

from frobenius_checker.core.linalg import (
    MAX_MODULUS,
    MatrixFp,
    block_diagonal,
    check_modulus,
    hstack,
    permutation_like,
    vstack,
)
from frobenius_checker.exceptions import DimensionMismatchError, ModulusError, PreconditionError


class TestModulus:
    @pytest.mark.parametrize("p", [0, 1, 4, 9, MAX_MODULUS])
    def test_rejects(self, p):
        with pytest.raises(ModulusError):
            check_modulus(p)

    def test_accepts_primes(self):
        assert check_modulus(2) == 2
        assert check_modulus(65537) == 65537

    def test_fields_do_not_mix(self):
        with pytest.raises(ModulusError):
            MatrixFp.identity(2, 2) @ MatrixFp.identity(3, 2)


class TestMatrixBasics:
    def test_entries_reduced(self):
        m = MatrixFp.from_rows(5, [[7, -1], [10, 4]])
        assert m.tolist() == [[2, 4], [0, 4]]

    def test_immutable(self):
        m = MatrixFp.identity(3, 2)
        assert not m.data.flags.writeable
        with pytest.raises(ValueError):
            m.data[0, 0] = 2

    def test_arithmetic(self):
        a = MatrixFp.from_rows(3, [[1, 2], [0, 1]])
        b = MatrixFp.from_rows(3, [[2, 0], [1, 1]])
        assert (a @ b).tolist() == [[1, 2], [1, 1]]
        assert (a + b).tolist() == [[0, 2], [1, 2]]
        assert (a - a).is_zero()
        assert (-a).tolist() == [[2, 1], [0, 2]]
        assert a.scale(2).tolist() == [[2, 1], [0, 2]]

    def test_shape_checks(self):
        with pytest.raises(DimensionMismatchError):
            MatrixFp.zeros(2, 2, 3) @ MatrixFp.zeros(2, 2, 3)
        with pytest.raises(DimensionMismatchError):
            MatrixFp.zeros(2, 2, 3) + MatrixFp.zeros(2, 3, 2)

    def test_empty_rows(self):
        m = MatrixFp.from_rows(2, [], cols=3)
        assert m.shape == (0, 3)

    def test_unhashable(self):
        with pytest.raises(TypeError):
            hash(MatrixFp.identity(2, 1))


class TestRowReduction:
    @pytest.fixture
    def singular(self):
        return MatrixFp.from_rows(3, [[1, 2, 0], [2, 1, 0], [0, 0, 1]])

    def test_rref(self, singular):
        result = singular.rref()
        assert result.rank == 2
        assert result.pivots == (0, 2)
        assert result.matrix.tolist() == [[1, 2, 0], [0, 0, 1], [0, 0, 0]]

    def test_nullspace(self, singular):
        kernel = singular.nullspace()
        assert kernel.shape == (3, 1)
        assert (singular @ kernel).is_zero()
        assert not kernel.is_zero()

    def test_image(self, singular):
        assert singular.image().shape == (3, 2)

    def test_solve(self, singular):
        rhs = MatrixFp.from_rows(3, [[1], [2], [1]])
        x = singular.solve(rhs)
        assert x is not None
        assert singular @ x == rhs

    def test_solve_inconsistent(self, singular):
        assert singular.solve(MatrixFp.from_rows(3, [[1], [0], [0]])) is None

    def test_inverse(self):
        a = MatrixFp.from_rows(7, [[2, 3], [1, 4]])
        assert a.is_invertible()
        assert a @ a.inverse() == MatrixFp.identity(7, 2)
        assert a.inverse() @ a == MatrixFp.identity(7, 2)

    def test_inverse_errors(self, singular):
        with pytest.raises(PreconditionError):
            singular.inverse()
        with pytest.raises(DimensionMismatchError):
            MatrixFp.zeros(3, 2, 3).inverse()

    def test_zero_by_zero_is_invertible(self):
        assert MatrixFp.zeros(5, 0, 0).is_invertible()


class TestAssembly:
    def test_stacks(self):
        a = MatrixFp.identity(2, 2)
        assert hstack([a, a]).shape == (2, 4)
        assert vstack([a, a]).shape == (4, 2)

    def test_empty_stacks_need_shape(self):
        with pytest.raises(DimensionMismatchError):
            hstack([])
        assert hstack([], rows=3, p=2).shape == (3, 0)
        assert vstack([], cols=2, p=2).shape == (0, 2)

    def test_block_diagonal(self):
        m = block_diagonal(5, [MatrixFp.scalar(5, 2), MatrixFp.identity(5, 2)])
        assert m.tolist() == [[2, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_permutation_like(self):
        m = permutation_like(2, [1, 1, 0], 2)
        assert m.tolist() == [[0, 0, 1], [1, 1, 0]]

    def test_row_major_vec_identity(self):
        p = 5
        a = MatrixFp.from_rows(p, [[1, 2], [3, 4], [0, 1]])
        x = MatrixFp.from_rows(p, [[2, 1, 0], [1, 3, 4]])
        b = MatrixFp.from_rows(p, [[1, 0], [2, 1], [4, 3]])
        vec = MatrixFp(p, x.data.reshape(-1, 1))
        expected = MatrixFp(p, (a @ x @ b).data.reshape(-1, 1))
        assert a.kron(b.T) @ vec == expected

    def test_submatrix(self):
        m = MatrixFp(7, np.arange(9).reshape(3, 3))
        assert m.submatrix([0, 2], [1]).tolist() == [[1], [0]]
        assert m.row_block(1, 2).tolist() == [[3, 4, 5]]
