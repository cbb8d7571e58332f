"""
Exact scalars, integer/rational matrices and integer lattice algorithms.

Rationals are sympy's QQ domain elements (always reduced, positive
denominator). Lattices are stored by a row-style Hermite normal form basis,
so two lattices are equal exactly when their dataclasses compare equal.
"""

import logging
from dataclasses import dataclass
from math import gcd, lcm
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational
from sympy.core.intfunc import igcdex
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import QQ, ZZ

from src.errors import DimensionMismatchError, InputFormatError

_logger = logging.getLogger(__name__)

Rat = Any  # QQ.dtype (PythonMPQ or gmpy2.mpq depending on the ground types)


# --------------------------------------------------------------------------
# Scalars
# --------------------------------------------------------------------------

def to_rat(value) -> Rat:
    """Convert an int, a QQ element or a "p/q" string to a QQ element."""
    if isinstance(value, bool):
        raise InputFormatError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        try:
            parsed = Rational(value.strip())
        except (TypeError, ValueError, SyntaxError) as e:
            raise InputFormatError(f"Not a rational number: {value!r}") from e
        return QQ.from_sympy(parsed)
    try:
        return QQ.convert(value)
    except Exception as e:
        raise InputFormatError(f"Not a rational number: {value!r}") from e


def numerator(x: Rat) -> int:
    return int(QQ.numer(x))


def denominator(x: Rat) -> int:
    return int(QQ.denom(x))


def is_integer(x: Rat) -> bool:
    return denominator(x) == 1


def format_rat(x: Rat) -> str:
    """Exact text form: "3", "-1/2"."""
    p, q = numerator(x), denominator(x)
    return str(p) if q == 1 else f"{p}/{q}"


def denominator_lcm(values: Iterable[Rat]) -> int:
    """Least positive integer clearing every denominator in values."""
    return lcm(1, *(denominator(v) for v in values))


def content(values: Iterable[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    return gcd(0, *values)


def _combine(u: Sequence[int], v: Sequence[int], x: int, y: int) -> List[int]:
    return [x * a + y * b for a, b in zip(u, v)]


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: Tuple[Tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: Optional[int] = None) -> "IntMatrix":
        packed = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not packed:
                raise DimensionMismatchError("Column count is required for a matrix without rows.")
            ncols = len(packed[0])
        for row in packed:
            if len(row) != ncols:
                raise DimensionMismatchError(f"Row of length {len(row)} in a matrix with {ncols} columns.")
        return cls(packed, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols)), self.nrows)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if other.ncols != self.ncols:
            raise DimensionMismatchError(f"Cannot stack {self.shape} on {other.shape}.")
        return IntMatrix(self.rows + other.rows, self.ncols)

    def scaled(self, factor: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(factor * x for x in row) for row in self.rows), self.ncols)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        if len(vector) != self.ncols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} for a matrix with {self.ncols} columns.")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}.")
        cols = other.transpose().rows
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows),
                         other.ncols)

    def to_sympy(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, [x for row in self.rows for x in row])

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise DimensionMismatchError(f"Determinant of a non-square {self.shape} matrix.")
        return int(self.to_sympy().det(method="bareiss"))

    def rank(self) -> int:
        return hnf(self)[0].nrows

    def inverse(self) -> "RatMatrix":
        inv = self.to_sympy().inv()
        return RatMatrix.from_rows([[QQ.from_sympy(inv[i, j]) for j in range(self.ncols)] for i in range(self.nrows)],
                                   self.ncols)

    def tolist(self) -> List[List[int]]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix with QQ entries."""

    rows: Tuple[Tuple[Rat, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]], ncols: Optional[int] = None) -> "RatMatrix":
        packed = tuple(tuple(to_rat(x) for x in row) for row in rows)
        if ncols is None:
            if not packed:
                raise DimensionMismatchError("Column count is required for a matrix without rows.")
            ncols = len(packed[0])
        for row in packed:
            if len(row) != ncols:
                raise DimensionMismatchError(f"Row of length {len(row)} in a matrix with {ncols} columns.")
        return cls(packed, ncols)

    @classmethod
    def from_int(cls, matrix: IntMatrix) -> "RatMatrix":
        return cls.from_rows(matrix.rows, matrix.ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}.")
        cols = [[row[j] for row in other.rows] for j in range(other.ncols)]
        return RatMatrix(tuple(tuple(sum((a * b for a, b in zip(row, col)), QQ.zero) for col in cols)
                               for row in self.rows), other.ncols)

    def apply(self, vector: Sequence[Any]) -> Tuple[Rat, ...]:
        if len(vector) != self.ncols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} for a matrix with {self.ncols} columns.")
        vec = [to_rat(v) for v in vector]
        return tuple(sum((a * b for a, b in zip(row, vec)), QQ.zero) for row in self.rows)

    def is_integral(self) -> bool:
        return all(is_integer(x) for row in self.rows for x in row)

    def scaled_to_integer(self) -> Tuple[IntMatrix, int]:
        """Return (A, d) with self = A / d and d the least common denominator."""
        d = denominator_lcm(x for row in self.rows for x in row)
        return IntMatrix(tuple(tuple(numerator(x * d) for x in row) for row in self.rows), self.ncols), d

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("Matrix has non-integral entries.")
        return IntMatrix(tuple(tuple(numerator(x) for x in row) for row in self.rows), self.ncols)


# --------------------------------------------------------------------------
# Normal forms
# --------------------------------------------------------------------------

def hnf(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with U square unimodular of size matrix.nrows. The first
    H.nrows rows of U satisfy U[:r] @ matrix = H; the remaining rows of U
    span the left kernel of matrix. H has positive pivots moving strictly to
    the right and every entry above a pivot lies in [0, pivot).
    """
    m = matrix.nrows
    a = [list(row) for row in matrix.rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(matrix.ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            x, y, g = map(int, igcdex(a[r][c], a[i][c]))
            p, q = a[r][c] // g, a[i][c] // g
            a[r], a[i] = _combine(a[r], a[i], x, y), _combine(a[r], a[i], -q, p)
            u[r], u[i] = _combine(u[r], u[i], x, y), _combine(u[r], u[i], -q, p)
        pivot = a[r][c]
        if pivot == 0:
            continue
        if pivot < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
            pivot = -pivot
        for i in range(r):
            f = a[i][c] // pivot
            if f:
                a[i] = _combine(a[i], a[r], 1, -f)
                u[i] = _combine(u[i], u[r], 1, -f)
        r += 1
    return IntMatrix(tuple(tuple(row) for row in a[:r]), matrix.ncols), IntMatrix(tuple(tuple(row) for row in u), m)


def snf_rank_and_torsion(matrix: IntMatrix) -> Tuple[int, List[int]]:
    """Rank and elementary divisors (Smith normal form diagonal)."""
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0, []
    snf = smith_normal_form(matrix.to_sympy(), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(matrix.shape))]
    divisors = sorted(d for d in diagonal if d != 0)
    return len(divisors), divisors


# --------------------------------------------------------------------------
# Lattices
# --------------------------------------------------------------------------

def _pivot(row: Sequence[int]) -> int:
    return next(j for j, x in enumerate(row) if x != 0)


@dataclass(frozen=True)
class IntegerLattice:
    """Sublattice of Z^ambient_dim with a canonical HNF row basis."""

    ambient_dim: int
    basis: IntMatrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_dim: int) -> "IntegerLattice":
        h, _ = hnf(IntMatrix.from_rows(vectors, ambient_dim))
        return cls(ambient_dim, h)

    @classmethod
    def full(cls, n: int) -> "IntegerLattice":
        return cls(n, IntMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "IntegerLattice":
        return cls(n, IntMatrix((), n))

    @property
    def rank(self) -> int:
        return self.basis.nrows

    @property
    def is_full(self) -> bool:
        return self.rank == self.ambient_dim and all(self.basis.rows[i][i] == 1 for i in range(self.rank))

    def coordinates(self, vector: Sequence[int]) -> Optional[List[int]]:
        """Coefficients of vector in the basis, or None if it is not a member."""
        if len(vector) != self.ambient_dim:
            raise DimensionMismatchError(f"Vector of length {len(vector)} in Z^{self.ambient_dim}.")
        rest = [int(x) for x in vector]
        coeffs = []
        for row in self.basis.rows:
            c = _pivot(row)
            if rest[c] % row[c]:
                return None
            f = rest[c] // row[c]
            coeffs.append(f)
            if f:
                rest = _combine(rest, row, 1, -f)
        if any(rest):
            return None
        return coeffs

    def contains(self, vector: Sequence[int]) -> bool:
        return self.coordinates(vector) is not None

    def is_sublattice_of(self, other: "IntegerLattice") -> bool:
        return all(other.contains(row) for row in self.basis.rows)

    def index(self) -> int:
        """Index in Z^ambient_dim (full rank lattices only)."""
        if self.rank != self.ambient_dim:
            raise ValueError("Index is only defined for full rank lattices.")
        result = 1
        for i, row in enumerate(self.basis.rows):
            result *= row[i]
        return result

    def intersection(self, other: "IntegerLattice") -> "IntegerLattice":
        return lattice_intersection(self, other)

    def tolist(self) -> List[List[int]]:
        return self.basis.tolist()


def kernel(matrix: IntMatrix) -> IntegerLattice:
    """Integer right kernel {x in Z^ncols : matrix @ x = 0}."""
    h, u = hnf(matrix.transpose())
    return IntegerLattice.span(u.rows[h.nrows:], matrix.ncols)


def lattice_intersection(first: IntegerLattice, second: IntegerLattice) -> IntegerLattice:
    """Intersect two lattices through the left kernel of [B1; -B2]."""
    if first.ambient_dim != second.ambient_dim:
        raise DimensionMismatchError(
            f"Cannot intersect lattices in Z^{first.ambient_dim} and Z^{second.ambient_dim}.")
    n = first.ambient_dim
    if first.rank == 0 or second.rank == 0:
        return IntegerLattice.zero(n)
    h, u = hnf(first.basis.vstack(second.basis.scaled(-1)))
    r1 = first.rank
    b1 = first.basis.transpose()
    vectors = [b1.apply(row[:r1]) for row in u.rows[h.nrows:]]
    return IntegerLattice.span(vectors, n)


def rational_preimage_lattice(matrix: RatMatrix) -> IntegerLattice:
    """{x in Z^ncols : matrix @ x is integral}.

    With matrix = A / d the condition is A x = d y for some integer y, so the
    answer is the x-projection of the kernel of [A | -d I].
    """
    n, big_n = matrix.ncols, matrix.nrows
    a, d = matrix.scaled_to_integer()
    if d == 1 or big_n == 0:
        return IntegerLattice.full(n)
    system = IntMatrix(
        tuple(row + tuple(-d if j == i else 0 for j in range(big_n)) for i, row in enumerate(a.rows)),
        n + big_n,
    )
    _logger.debug("Preimage lattice: %d x %d system, common denominator %d", big_n, n + big_n, d)
    solutions = kernel(system)
    return IntegerLattice.span((row[:n] for row in solutions.basis.rows), n)


def saturation(lattice: IntegerLattice) -> IntegerLattice:
    """Q-span of the lattice intersected with Z^ambient_dim."""
    n = lattice.ambient_dim
    if lattice.rank == 0:
        return IntegerLattice.zero(n)
    normals = kernel(lattice.basis)
    return kernel(IntMatrix(normals.basis.rows, n))
