"""Dense exact linear algebra over prime fields F_p."""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from ..exceptions import DimensionMismatchError, ModulusError, PreconditionError

# p² · n must stay inside int64 for every product we form
MAX_MODULUS = 1 << 26


def check_modulus(p: int) -> int:
    if p < 2 or not isprime(p):
        raise ModulusError(f"modulus {p} is not prime")
    if p >= MAX_MODULUS:
        raise ModulusError(f"modulus {p} exceeds the supported bound {MAX_MODULUS}")
    return p


@dataclass(frozen=True, eq=False)
class MatrixFp:
    """An immutable matrix over F_p with entries reduced to ``[0, p)``."""

    p: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        check_modulus(self.p)
        array = np.array(self.data, dtype=np.int64)
        if array.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-d array, got {array.ndim} dimension(s)")
        array = array % self.p
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "MatrixFp":
        if not rows:
            return cls.zeros(p, 0, cols or 0)
        return cls(p, np.array(rows, dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "MatrixFp":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "MatrixFp":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, p: int, value: int) -> "MatrixFp":
        return cls(p, np.array([[value]], dtype=np.int64))

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def tolist(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.data]

    def _same_field(self, other: "MatrixFp") -> None:
        if other.p != self.p:
            raise ModulusError(f"cannot combine matrices over F_{self.p} and F_{other.p}")

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        return MatrixFp(self.p, (self.data @ other.data) % self.p)

    def __add__(self, other: "MatrixFp") -> "MatrixFp":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return MatrixFp(self.p, self.data + other.data)

    def __sub__(self, other: "MatrixFp") -> "MatrixFp":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot subtract {other.shape} from {self.shape}")
        return MatrixFp(self.p, self.data - other.data)

    def __neg__(self) -> "MatrixFp":
        return MatrixFp(self.p, -self.data)

    def scale(self, k: int) -> "MatrixFp":
        return MatrixFp(self.p, self.data * (k % self.p))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFp):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None  # type: ignore[assignment]

    def transpose(self) -> "MatrixFp":
        return MatrixFp(self.p, self.data.T)

    @property
    def T(self) -> "MatrixFp":
        return self.transpose()

    def kron(self, other: "MatrixFp") -> "MatrixFp":
        self._same_field(other)
        return MatrixFp(self.p, np.kron(self.data, other.data))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "MatrixFp":
        r, c = list(rows), list(cols)
        return MatrixFp(self.p, self.data[np.ix_(r, c)].reshape(len(r), len(c)))

    def columns(self, cols: Iterable[int]) -> "MatrixFp":
        return self.submatrix(range(self.rows), cols)

    def row_block(self, start: int, stop: int) -> "MatrixFp":
        return self.submatrix(range(start, stop), range(self.cols))

    def is_zero(self) -> bool:
        return not self.data.any()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def rref(self) -> "RowReduceResult":
        """Reduced row-echelon form by Gauss-Jordan elimination mod p."""
        mat = self.data.copy()
        m, n = mat.shape
        pivots = []
        row = 0
        for col in range(n):
            if row == m:
                break
            nonzero = np.nonzero(mat[row:, col])[0]
            if nonzero.size == 0:
                continue
            pivot = row + int(nonzero[0])
            if pivot != row:
                mat[[row, pivot]] = mat[[pivot, row]]
            inverse = pow(int(mat[row, col]), -1, self.p)
            mat[row] = (mat[row] * inverse) % self.p
            factors = mat[:, col].copy()
            factors[row] = 0
            mat = (mat - np.outer(factors, mat[row])) % self.p
            pivots.append(col)
            row += 1
        return RowReduceResult(matrix=MatrixFp(self.p, mat), rank=len(pivots), pivots=tuple(pivots))

    def rank(self) -> int:
        return self.rref().rank

    def nullspace(self) -> "MatrixFp":
        """Basis of ``{x : self·x = 0}`` as the columns of a ``cols × k`` matrix."""
        reduced = self.rref()
        free = [c for c in range(self.cols) if c not in reduced.pivots]
        basis = np.zeros((self.cols, len(free)), dtype=np.int64)
        for k, f in enumerate(free):
            basis[f, k] = 1
            for i, pc in enumerate(reduced.pivots):
                basis[pc, k] = -reduced.matrix.data[i, f]
        return MatrixFp(self.p, basis)

    def image(self) -> "MatrixFp":
        """Basis of the column space: the pivot columns of ``self``."""
        return self.columns(self.rref().pivots)

    def solve(self, rhs: "MatrixFp") -> Optional["MatrixFp"]:
        """
        A solution ``x`` of ``self·x = rhs``, or ``None`` when inconsistent.

        Free variables are set to zero.
        """
        self._same_field(rhs)
        if rhs.rows != self.rows:
            raise DimensionMismatchError(f"right-hand side has {rhs.rows} rows, expected {self.rows}")
        reduced = hstack([self, rhs], rows=self.rows).rref()
        if any(pc >= self.cols for pc in reduced.pivots):
            return None
        x = np.zeros((self.cols, rhs.cols), dtype=np.int64)
        for i, pc in enumerate(reduced.pivots):
            x[pc] = reduced.matrix.data[i, self.cols :]
        return MatrixFp(self.p, x)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> "MatrixFp":
        """
        Raises:
            DimensionMismatchError: for non-square matrices
            PreconditionError: for singular matrices
        """
        if not self.is_square():
            raise DimensionMismatchError(f"cannot invert a {self.rows}×{self.cols} matrix")
        solution = self.solve(MatrixFp.identity(self.p, self.rows))
        if solution is None or self.rank() != self.rows:
            raise PreconditionError("matrix is singular")
        return solution


@dataclass(frozen=True)
class RowReduceResult:
    matrix: MatrixFp
    rank: int
    pivots: Tuple[int, ...]


def hstack(blocks: Sequence[MatrixFp], rows: Optional[int] = None, p: Optional[int] = None) -> MatrixFp:
    """Side by side; ``rows`` and ``p`` are needed only when ``blocks`` is empty."""
    if not blocks:
        if rows is None or p is None:
            raise DimensionMismatchError("empty hstack needs an explicit row count and modulus")
        return MatrixFp.zeros(p, rows, 0)
    if len({b.rows for b in blocks}) != 1:
        raise DimensionMismatchError(f"hstack row counts differ: {[b.rows for b in blocks]}")
    for b in blocks[1:]:
        blocks[0]._same_field(b)
    return MatrixFp(blocks[0].p, np.hstack([b.data for b in blocks]))


def vstack(blocks: Sequence[MatrixFp], cols: Optional[int] = None, p: Optional[int] = None) -> MatrixFp:
    """On top of each other; ``cols`` and ``p`` are needed only when ``blocks`` is empty."""
    if not blocks:
        if cols is None or p is None:
            raise DimensionMismatchError("empty vstack needs an explicit column count and modulus")
        return MatrixFp.zeros(p, 0, cols)
    if len({b.cols for b in blocks}) != 1:
        raise DimensionMismatchError(f"vstack column counts differ: {[b.cols for b in blocks]}")
    for b in blocks[1:]:
        blocks[0]._same_field(b)
    return MatrixFp(blocks[0].p, np.vstack([b.data for b in blocks]))


def block_diagonal(p: int, blocks: Sequence[MatrixFp]) -> MatrixFp:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        data[r : r + b.rows, c : c + b.cols] = b.data
        r += b.rows
        c += b.cols
    return MatrixFp(p, data)


def permutation_like(p: int, table: Sequence[int], cod_size: int) -> MatrixFp:
    """Matrix of the linear extension of a function ``k ↦ table[k]``."""
    data = np.zeros((cod_size, len(table)), dtype=np.int64)
    for k, image in enumerate(table):
        data[image, k] = 1
    return MatrixFp(p, data)
