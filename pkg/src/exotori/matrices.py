"""Exact dense matrices.

Entries are Python ints, :class:`~fractions.Fraction` or
:class:`~exotori.scalars.QuadScalar` values, or ints reduced modulo a fixed
``modulus``.  Nothing here ever touches floating point.

Text format: rows separated by ``;``, entries by ``,``::

    >>> Matrix.from_text("1,0;2,1").det()
    1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from operator import mul

from .errors import DomainError, FormatError
from .scalars import QuadScalar, format_scalar, parse_scalar

__all__ = [
    "Matrix",
    "Subspace",
    "SNFResult",
    "smith_normal_form",
    "kernel",
    "rref",
    "is_unipotent",
    "rank_one_defect",
    "exterior_power",
    "wedge_basis",
    "matrix_order",
    "solve_homogeneous_mod",
    "primitive_vector",
]


def _field(x):
    return Fraction(x) if isinstance(x, int) else x


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Matrix:
    """Immutable rectangular matrix, indexed from 0."""

    __slots__ = ("rows", "modulus", "_hash")

    def __init__(self, rows, modulus: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DomainError("matrices must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DomainError("ragged rows")
        if modulus is not None:
            if modulus < 2:
                raise DomainError(f"modulus must be at least 2, got {modulus}")
            rows = tuple(tuple(int(x) % modulus for x in r) for r in rows)
        else:
            rows = tuple(
                tuple(x.numerator if type(x) is Fraction and x.denominator == 1 else x for x in r)
                for r in rows
            )
        self.rows = rows
        self.modulus = modulus
        self._hash = None

    # construction

    @classmethod
    def identity(cls, n: int, modulus=None) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], modulus)

    @classmethod
    def zeros(cls, m: int, n: int | None = None, modulus=None) -> Matrix:
        return cls([[0] * (m if n is None else n) for _ in range(m)], modulus)

    @classmethod
    def diagonal(cls, entries) -> Matrix:
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def elementary(cls, d: int, i: int, j: int, t=1) -> Matrix:
        """``E_ij`` with entry ``t`` at 1-based position ``(i, j)``."""
        if i == j or not (1 <= i <= d and 1 <= j <= d):
            raise DomainError(f"no elementary matrix E_{i}{j} in dimension {d}")
        rows = [[int(r == c) for c in range(d)] for r in range(d)]
        rows[i - 1][j - 1] = t
        return cls(rows)

    @classmethod
    def from_columns(cls, columns) -> Matrix:
        columns = [tuple(c) for c in columns]
        return cls(list(zip(*columns)))

    @classmethod
    def from_text(cls, text: str, modulus=None) -> Matrix:
        try:
            rows = [[parse_scalar(x) for x in row.split(",")] for row in text.strip().split(";")]
            return cls(rows, modulus)
        except DomainError as exc:
            raise FormatError(str(exc)) from None

    def to_text(self) -> str:
        return ";".join(",".join(format_scalar(x) for x in r) for r in self.rows)

    # shape and access

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [tuple(c) for c in zip(*self.rows)]

    def entries(self):
        for r in self.rows:
            yield from r

    @property
    def domain(self) -> str:
        """``"Z"``, ``"Q"``, ``"Q(sqrt(D))"`` or ``"Z/n"``."""
        if self.modulus is not None:
            return f"Z/{self.modulus}"
        kind = "Z"
        for x in self.entries():
            if isinstance(x, QuadScalar):
                return f"Q(sqrt({x.D}))"
            if isinstance(x, Fraction):
                kind = "Q"
        return kind

    @property
    def is_integral(self) -> bool:
        return self.domain == "Z"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.modulus == other.modulus and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.modulus))
        return self._hash

    def __repr__(self):
        mod = f", modulus={self.modulus}" if self.modulus else ""
        return f"Matrix.from_text({self.to_text()!r}{mod})"

    def __str__(self):
        cells = [[format_scalar(x) for x in r] for r in self.rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    # arithmetic

    def _check_compatible(self, other: Matrix):
        if self.modulus != other.modulus:
            raise DomainError("cannot combine matrices over different rings")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_compatible(other)
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.modulus
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_compatible(other)
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.modulus
        )

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows], self.modulus)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_compatible(other)
            if self.ncols != other.nrows:
                raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            return Matrix(
                [[sum(map(mul, r, c)) for c in cols] for r in self.rows],
                self.modulus,
            )
        return Matrix([[a * other for a in r] for r in self.rows], self.modulus)

    __matmul__ = __mul__

    def __rmul__(self, scalar):
        return Matrix([[scalar * a for a in r] for r in self.rows], self.modulus)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square:
            raise DomainError("powers of non-square matrices")
        base = self if k >= 0 else self.inverse()
        result = Matrix.identity(self.nrows, self.modulus)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, v) -> tuple:
        return tuple(_normalize(sum(a * b for a, b in zip(r, v))) for r in self.rows)

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self.rows)), self.modulus)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def submatrix(self, rows, cols) -> Matrix:
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.modulus)

    def is_identity(self) -> bool:
        return self.is_square and all(
            x == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    # field linear algebra

    def det(self):
        if not self.is_square:
            raise DomainError("determinant of a non-square matrix")
        if self.modulus is not None:
            return Matrix(self.rows).det() % self.modulus
        if self.is_integral:
            return _bareiss_det([list(r) for r in self.rows])
        a = [[_field(x) for x in r] for r in self.rows]
        n = len(a)
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return 0
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det = det * a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return _normalize(det)

    def rank(self) -> int:
        if self.modulus is not None:
            raise DomainError("rank over Z/n is not defined; use smith_normal_form")
        return len(rref(self)[1])

    def inverse(self) -> Matrix:
        """Exact inverse; integer matrices with unit determinant stay integral."""
        if not self.is_square:
            raise DomainError("inverse of a non-square matrix")
        n = self.nrows
        if self.modulus is not None:
            return _inverse_mod(self)
        if self.is_integral:
            rows = _unimodular_inverse(self.rows)
            if rows is not None:
                return Matrix(rows)
        a = [[_field(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise DomainError("matrix is singular")
            a[c], a[p] = a[p], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return Matrix([r[n:] for r in a])


def _unimodular_inverse(rows):
    """Integer row reduction of ``[A | I]``; ``None`` unless ``det A = +-1``."""
    n = len(rows)
    a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        # Euclid on column c below the diagonal until one nonzero entry remains
        while True:
            live = [r for r in range(c, n) if a[r][c]]
            if not live:
                return None
            p = min(live, key=lambda r: abs(a[r][c]))
            a[c], a[p] = a[p], a[c]
            done = True
            for r in range(c + 1, n):
                if a[r][c]:
                    q = a[r][c] // a[c][c]
                    a[r] = [x - q * y for x, y in zip(a[r], a[c])]
                    if a[r][c]:
                        done = False
            if done:
                break
        if abs(a[c][c]) != 1:
            return None
        if a[c][c] < 0:
            a[c] = [-x for x in a[c]]
    for c in range(n - 1, -1, -1):
        for r in range(c):
            if a[r][c]:
                q = a[r][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


def _bareiss_det(a) -> int:
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _inverse_mod(M: Matrix) -> Matrix:
    n, m = M.nrows, M.modulus
    det = Matrix(M.rows).det()
    if gcd(det, m) != 1:
        raise DomainError(f"matrix is not invertible modulo {m}")
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            minor = Matrix(M.rows).submatrix(rows, cols).det() if n > 1 else 1
            adj[i][j] = (-1) ** (i + j) * minor
    return Matrix(adj, m) * pow(det, -1, m)


def rref(M: Matrix):
    """Reduced row echelon form over the fraction field.

    Returns ``(rows, pivots)`` with the nonzero rows only.
    """
    a = [[_field(x) for x in r] for r in M.rows]
    m, n = len(a), len(a[0])
    pivots = []
    row = 0
    for c in range(n):
        if row == m:
            break
        p = next((r for r in range(row, m) if a[r][c] != 0), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        inv = 1 / a[row][c]
        a[row] = [x * inv for x in a[row]]
        for r in range(m):
            if r != row and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(c)
        row += 1
    rows = [tuple(_normalize(x) for x in r) for r in a[:row]]
    return rows, pivots


class Subspace:
    """Subspace of ``K^n`` stored by its canonical reduced echelon basis.

    Two subspaces are equal exactly when their canonical bases agree.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors=()):
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise DomainError("vector length does not match ambient dimension")
        vectors = [v for v in vectors if any(x != 0 for x in v)]
        self.ambient_dim = ambient_dim
        self.basis = tuple(rref(Matrix(vectors))[0]) if vectors else ()

    @classmethod
    def span(cls, *vectors) -> Subspace:
        return cls(len(vectors[0]), vectors)

    @classmethod
    def coordinate(cls, n: int, indices) -> Subspace:
        """Span of the standard basis vectors ``e_i`` for 1-based ``indices``."""
        return cls(n, [tuple(int(k == i - 1) for k in range(n)) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace({self.ambient_dim}, {[list(map(str, v)) for v in self.basis]})"

    def annihilator(self) -> Subspace:
        """Linear functionals (as vectors) vanishing on this subspace."""
        if not self.basis:
            return Subspace.coordinate(self.ambient_dim, range(1, self.ambient_dim + 1))
        return kernel(Matrix(self.basis))

    def contains(self, v) -> bool:
        v = tuple(v)
        if all(x == 0 for x in v):
            return True
        return Subspace(self.ambient_dim, list(self.basis) + [v]).dim == self.dim

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def intersect(self, *others: Subspace) -> Subspace:
        constraints = list(self.annihilator().basis)
        for o in others:
            constraints.extend(o.annihilator().basis)
        if not constraints:
            return self
        return kernel(Matrix(constraints))

    def image(self, M: Matrix) -> Subspace:
        return Subspace(M.nrows, [M.apply(v) for v in self.basis])


@dataclass(frozen=True)
class SNFResult:
    """``U * M * V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form."""

    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list:
        return [self.S[i, i] for i in range(min(self.S.shape))]


def smith_normal_form(M: Matrix) -> SNFResult:
    """Smith normal form of an integer matrix with transforms.

    Pivot rule: the nonzero entry of least absolute value in the remaining
    block, ties broken by smallest ``(row, col)``.
    """
    if M.modulus is not None or not M.is_integral:
        raise DomainError("smith_normal_form needs an integer matrix")
    m, n = M.shape
    a = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(Matrix(U), Matrix(a), Matrix(V))


def kernel(M: Matrix) -> Subspace:
    """Right null space over the fraction field of the entries."""
    if M.modulus is not None:
        raise DomainError("use solve_homogeneous_mod for matrices over Z/n")
    rows, pivots = rref(M)
    n = M.ncols
    free = [c for c in range(n) if c not in pivots]
    vectors = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        vectors.append(v)
    return Subspace(n, vectors)


def solve_homogeneous_mod(M: Matrix, n: int):
    """Solutions of ``M x = 0`` over ``Z/n``.

    The solution module is a direct sum of cyclic groups.  Returns a list of
    ``(generator, order)`` pairs, one per cyclic summand with order > 1,
    computed from the integer Smith form of ``M``.
    """
    if n < 2:
        raise DomainError(f"modulus must be at least 2, got {n}")
    A = Matrix(M.rows)
    snf = smith_normal_form(A)
    diag = snf.diagonal
    cols = A.ncols
    out = []
    for k in range(cols):
        s = diag[k] if k < len(diag) else 0
        g = gcd(s, n)  # gcd(0, n) == n
        if g == 1:
            continue
        # y_k ranges over multiples of n/g; x = V y
        step = n // g
        gen = tuple((step * snf.V[i, k]) % n for i in range(cols))
        out.append((gen, g))
    return out


def primitive_vector(v) -> tuple:
    """Scale a rational vector to a primitive integer vector whose first
    nonzero entry is positive."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise DomainError("zero vector has no primitive representative")
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def is_unipotent(M: Matrix) -> bool:
    """True iff ``(M - id)^n == 0`` for ``n`` the size of ``M``."""
    if not M.is_square:
        raise DomainError("is_unipotent needs a square matrix")
    N = M - Matrix.identity(M.nrows, M.modulus)
    return (N ** M.nrows).is_zero()


def rank_one_defect(M: Matrix) -> bool:
    """True iff ``M - id`` has rank exactly one."""
    if not M.is_square:
        raise DomainError("rank_one_defect needs a square matrix")
    return (M - Matrix.identity(M.nrows)).rank() == 1


def wedge_basis(d: int, r: int) -> list:
    """Index sets of the standard basis of the r-th exterior power, lexicographic."""
    return [tuple(i + 1 for i in c) for c in combinations(range(d), r)]


def exterior_power(M: Matrix, r: int) -> Matrix:
    """Matrix of the r-th exterior power on the lexicographic wedge basis.

    Entry ``(J, I)`` is the minor of ``M`` with rows ``J`` and columns ``I``.
    """
    if not M.is_square:
        raise DomainError("exterior_power needs a square matrix")
    d = M.nrows
    if not (0 <= r <= d):
        raise DomainError(f"exterior power {r} out of range for dimension {d}")
    if r == 0:
        return Matrix([[1]], M.modulus)
    subsets = list(combinations(range(d), r))
    plain = Matrix(M.rows)
    return Matrix(
        [[plain.submatrix(J, I).det() for I in subsets] for J in subsets], M.modulus
    )


def matrix_order(M: Matrix, cap: int = 1000):
    """Least ``k <= cap`` with ``M^k == id``, or ``None`` if there is none."""
    if not M.is_square:
        raise DomainError("matrix_order needs a square matrix")
    if M.det() == 0:
        raise DomainError("matrix_order of a singular matrix")
    identity = Matrix.identity(M.nrows, M.modulus)
    P = M
    for k in range(1, cap + 1):
        if P == identity:
            return k
        P = P * M
    return None
