"""Exact integer and Q(sqrt(d)) matrices, Smith normal form, integer kernels.

Everything here is immutable, decided by exact arithmetic, and desk-scale:
no modular tricks, no LLL, no asymptotics.  The Smith normal form tracks
unimodular transforms (U @ M @ V == D) and its postconditions are verified
on every call, since every later identity in the package leans on them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvariantError, UsageError
from .scalars import Scalar


class IntMatrix:
    """Immutable matrix with arbitrary-precision integer entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise UsageError("matrix needs at least one row and one column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise UsageError("ragged rows in matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)])

    @staticmethod
    def diagonal(values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return IntMatrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_blocks(blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        out = []
        for brow in blocks:
            height = brow[0].rows
            if any(b.rows != height for b in brow):
                raise UsageError("block row heights differ")
            for i in range(height):
                out.append([x for b in brow for x in b.entries[i]])
        return IntMatrix(out)

    @staticmethod
    def column(values: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[v] for v in values])

    # -- structure ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, row0: int, row1: int, col0: int, col1: int) -> "IntMatrix":
        return IntMatrix([row[col0:col1] for row in self.entries[row0:row1]])

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def vec(self) -> tuple[int, ...]:
        """Row-major flattening."""
        return tuple(x for row in self.entries for x in row)

    @staticmethod
    def from_vec(values: Sequence[int], rows: int, cols: int) -> "IntMatrix":
        if len(values) != rows * cols:
            raise UsageError("vector length does not match shape")
        return IntMatrix([list(values[i * cols:(i + 1) * cols]) for i in range(rows)])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.T

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix([[x + y for x, y in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix([[x - y for x, y in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in row] for row in self.entries])

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * x for x in row] for row in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.shape()} by {other.shape()}")
        bt = other.T.entries
        return IntMatrix([[sum(x * y for x, y in zip(row, col)) for col in bt]
                          for row in self.entries])

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise UsageError("vector length does not match column count")
        return tuple(sum(x * v for x, v in zip(row, vector)) for row in self.entries)

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _same_shape(self, other: "IntMatrix"):
        if self.shape() != other.shape():
            raise UsageError(f"shape mismatch {self.shape()} vs {other.shape()}")

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "\n".join("[" + " ".join(str(x) for x in row) + "]" for row in self.entries)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    # -- exact determinant (Bareiss, fraction-free) -----------------------------

    def det(self) -> int:
        if self.rows != self.cols:
            raise UsageError("determinant of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_scalar(self) -> "ScalarMatrix":
        return ScalarMatrix([[Scalar(x) for x in row] for row in self.entries])


class ScalarMatrix:
    """Immutable matrix over Q(sqrt(d)); rational matrices are the d = 1 case."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(Scalar.of(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise UsageError("matrix needs at least one row and one column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise UsageError("ragged rows in matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "ScalarMatrix":
        return ScalarMatrix([[Scalar(1 if i == j else 0) for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "ScalarMatrix":
        return ScalarMatrix([[Scalar(0)] * cols for _ in range(rows)])

    @staticmethod
    def from_blocks(blocks) -> "ScalarMatrix":
        out = []
        for brow in blocks:
            height = brow[0].rows
            if any(b.rows != height for b in brow):
                raise UsageError("block row heights differ")
            for i in range(height):
                out.append([x for b in brow for x in b.entries[i]])
        return ScalarMatrix(out)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def T(self) -> "ScalarMatrix":
        return ScalarMatrix([[self.entries[i][j] for i in range(self.rows)]
                             for j in range(self.cols)])

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _same_shape(self, other):
        if self.shape() != other.shape():
            raise UsageError(f"shape mismatch {self.shape()} vs {other.shape()}")

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        self._same_shape(other)
        return ScalarMatrix([[x + y for x, y in zip(r1, r2)]
                             for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        self._same_shape(other)
        return ScalarMatrix([[x - y for x, y in zip(r1, r2)]
                             for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "ScalarMatrix":
        return ScalarMatrix([[-x for x in row] for row in self.entries])

    def __mul__(self, k) -> "ScalarMatrix":
        k = Scalar.of(k)
        return ScalarMatrix([[k * x for x in row] for row in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.shape()} by {other.shape()}")
        bt = other.T.entries
        zero = Scalar(0)
        return ScalarMatrix([[sum((x * y for x, y in zip(row, col)), zero) for col in bt]
                             for row in self.entries])

    def apply(self, vector) -> tuple[Scalar, ...]:
        if len(vector) != self.cols:
            raise UsageError("vector length does not match column count")
        zero = Scalar(0)
        return tuple(sum((x * Scalar.of(v) for x, v in zip(row, vector)), zero)
                     for row in self.entries)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __eq__(self, other):
        return isinstance(other, ScalarMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "\n".join("[" + " ".join(str(x) for x in row) + "]" for row in self.entries)

    def __repr__(self):
        return f"ScalarMatrix({[[str(x) for x in r] for r in self.entries]})"

    def is_integral(self) -> bool:
        return all(x.is_rational and x.a.denominator == 1 for row in self.entries for x in row)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise UsageError("matrix has non-integer entries")
        return IntMatrix([[int(x.a) for x in row] for row in self.entries])

    # -- field linear algebra ---------------------------------------------------

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise UsageError("determinant of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        out = Scalar(1)
        for k in range(n):
            piv = None
            for i in range(k, n):
                if a[i][k]:
                    piv = i
                    break
            if piv is None:
                return Scalar(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                out = -out
            out = out * a[k][k]
            inv = a[k][k].inverse()
            for i in range(k + 1, n):
                if a[i][k]:
                    factor = a[i][k] * inv
                    a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
        return out

    def rank(self) -> int:
        a = [list(row) for row in self.entries]
        r = 0
        for c in range(self.cols):
            piv = None
            for i in range(r, self.rows):
                if a[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = a[r][c].inverse()
            for i in range(self.rows):
                if i != r and a[i][c]:
                    factor = a[i][c] * inv
                    a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
            r += 1
        return r

    def inverse(self) -> Optional["ScalarMatrix"]:
        """Exact inverse, or None when the matrix is singular."""
        if self.rows != self.cols:
            raise UsageError("inverse of a non-square matrix")
        n = self.rows
        a = [list(row) + [Scalar(1 if i == j else 0) for j in range(n)]
             for i, row in enumerate(self.entries)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if a[i][k]:
                    piv = i
                    break
            if piv is None:
                return None
            a[k], a[piv] = a[piv], a[k]
            inv = a[k][k].inverse()
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    factor = a[i][k]
                    a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
        return ScalarMatrix([row[n:] for row in a])

    def solve(self, rhs) -> Optional[tuple[Scalar, ...]]:
        """One exact solution of self @ x = rhs, or None if inconsistent.

        Free variables are set to zero.  Dimension mismatch is a usage
        error, distinct from inconsistency.
        """
        if len(rhs) != self.rows:
            raise UsageError("right-hand side length does not match row count")
        sol = self.solve_matrix(ScalarMatrix([[Scalar.of(v)] for v in rhs]))
        if sol is None:
            return None
        return tuple(sol.entries[i][0] for i in range(self.cols))

    def solve_matrix(self, rhs: "ScalarMatrix") -> Optional["ScalarMatrix"]:
        """Solve self @ X = rhs column-wise; None if any column is inconsistent."""
        if rhs.rows != self.rows:
            raise UsageError("right-hand side height does not match row count")
        m, n, w = self.rows, self.cols, rhs.cols
        a = [list(self.entries[i]) + list(rhs.entries[i]) for i in range(m)]
        pivots = []
        r = 0
        for c in range(n):
            piv = None
            for i in range(r, m):
                if a[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = a[r][c].inverse()
            a[r] = [x * inv for x in a[r]]
            for i in range(m):
                if i != r and a[i][c]:
                    factor = a[i][c]
                    a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        for i in range(r, m):
            if any(a[i][n + j] for j in range(w)):
                return None
        zero = Scalar(0)
        x = [[zero] * w for _ in range(n)]
        for row, c in enumerate(pivots):
            x[c] = a[row][n:]
        return ScalarMatrix(x)


# -- Smith normal form ----------------------------------------------------------

def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ m @ V == D, U and V unimodular, and D
    diagonal with d_1 | d_2 | ... | d_k >= 0.

    Pivots are chosen as the smallest nonzero absolute value of the trailing
    submatrix, which keeps coefficients small at desk scale.  Postconditions
    are re-verified on every call.
    """
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # move the smallest nonzero |entry| of the trailing block to (t, t)
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear column t below the pivot, then row t right of it
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            residues = [(i, t) for i in range(t + 1, rows) if a[i][t] != 0]
            residues += [(t, j) for j in range(t + 1, cols) if a[t][j] != 0]
            if residues:
                # a remainder smaller than the pivot appeared; promote it
                i, j = min(residues, key=lambda ij: abs(a[ij[0]][ij[1]]))
                swap_rows(t, i) if i != t else swap_cols(t, j)
                continue
            # enforce divisibility: pivot must divide the trailing block
            culprit = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(t, culprit, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    U = IntMatrix(u)
    D = IntMatrix(a)
    V = IntMatrix(v)
    _verify_snf(m, U, D, V)
    return U, D, V


def _verify_snf(m: IntMatrix, U: IntMatrix, D: IntMatrix, V: IntMatrix):
    if U @ m @ V != D:
        raise InvariantError("smith normal form: U @ M @ V != D")
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D.entries[i][j] != 0:
                raise InvariantError("smith normal form: D not diagonal")
    diag = [D.entries[i][i] for i in range(min(D.rows, D.cols))]
    for x, y in zip(diag, diag[1:]):
        if x < 0 or y < 0 or (x == 0 and y != 0) or (x != 0 and y % x != 0):
            raise InvariantError("smith normal form: divisibility chain broken")
    if abs(U.det()) != 1 or abs(V.det()) != 1:
        raise InvariantError("smith normal form: transform not unimodular")


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    _, d, _ = smith_normal_form(m)
    return tuple(d.entries[i][i] for i in range(min(d.rows, d.cols)))


# -- integer kernels --------------------------------------------------------------

def _normalize_sign(vector: tuple[int, ...]) -> tuple[int, ...]:
    for x in vector:
        if x != 0:
            return vector if x > 0 else tuple(-y for y in vector)
    return vector


def integer_kernel(m: ScalarMatrix | IntMatrix) -> list[tuple[int, ...]]:
    """Saturated Z-basis of {x in Z^cols : m @ x = 0}, empty when trivial.

    Each Q(sqrt(d)) entry is split into its rational and surd coordinates,
    giving a stacked rational system; rows are cleared to integers and the
    kernel is read off the Smith normal form.  Basis vectors are sign
    normalized (first nonzero entry positive) and sorted lexicographically.
    """
    if isinstance(m, IntMatrix):
        m = m.to_scalar()
    stacked: list[list[Fraction]] = []
    for row in m.entries:
        stacked.append([x.a for x in row])
        if any(x.b != 0 for x in row):
            stacked.append([x.b for x in row])
    cleared = []
    for row in stacked:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        cleared.append([int(x * lcm) for x in row])
    n = IntMatrix(cleared)
    _, d, v = smith_normal_form(n)
    basis = []
    for j in range(n.cols):
        if j >= n.rows or d.entries[j][j] == 0:
            basis.append(_normalize_sign(tuple(v.entries[i][j] for i in range(n.cols))))
    return sorted(basis)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rat_solve(m: ScalarMatrix, rhs) -> Optional[tuple[Scalar, ...]]:
    """Exact solve over the scalar field; None means inconsistent."""
    return m.solve(rhs)
