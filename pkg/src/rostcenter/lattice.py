"""Exact integer/rational linear algebra and lattice quotients.

Everything here works with Python ints and ``fractions.Fraction``, so there
is no overflow and no rounding.  Matrices are small (rank <= 64), so plain
row-major tuples are fast enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence


class SingularMatrix(ValueError):
    pass


class InfiniteQuotient(ValueError):
    pass


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(x, int) for x in self.entries):
            raise TypeError("IntegerMatrix entries must be int")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows([self.col(j) for j in range(self.cols)], self.rows)

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.col(j) for j in range(other.cols)]
        return IntegerMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)],
            other.cols,
        )

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product; works for int or Fraction vectors."""
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))

    def det(self) -> int:
        if not self.is_square:
            raise ValueError("determinant of non-square matrix")
        return _bareiss_det(self.tolist())

    def minors_gcd(self, k: int) -> int:
        """gcd of all k x k minors (0 if every minor vanishes)."""
        from itertools import combinations

        if k == 0:
            return 1
        g = 0
        a = self.tolist()
        for rs in combinations(range(self.rows), k):
            for cs in combinations(range(self.cols), k):
                g = gcd(g, _bareiss_det([[a[r][c] for c in cs] for r in rs]))
                if g == 1:
                    return 1
        return g

    def __str__(self):
        return "\n".join(" ".join(f"{x:3d}" for x in self.row(i)) for i in range(self.rows))


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [r[:] for r in a]
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
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class RationalVector(tuple):
    """Immutable tuple of Fractions (always reduced, positive denominators)."""

    def __new__(cls, coords: Iterable = ()):
        return super().__new__(cls, (Fraction(c) for c in coords))

    def __add__(self, other):
        return RationalVector(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return RationalVector(a - b for a, b in zip(self, other, strict=True))

    def __mul__(self, k):
        return RationalVector(k * a for a in self)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalVector(-a for a in self)

    @property
    def denominator(self) -> int:
        """lcm of the coordinate denominators."""
        d = 1
        for c in self:
            d = d * c.denominator // gcd(d, c.denominator)
        return d

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self)

    def as_ints(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"{self} is not integral")
        return tuple(int(c) for c in self)

    def __repr__(self):
        return "RationalVector(" + ", ".join(str(c) for c in self) + ")"


def inverse_rational(m: IntegerMatrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q.  Raises SingularMatrix."""
    if not m.is_square:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    a = [[Fraction(x) for x in m.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def solve_rational(m: IntegerMatrix, rhs: Sequence) -> RationalVector:
    """Solve ``m @ x = rhs`` exactly over Q."""
    if not m.is_square:
        raise ValueError("solve_rational needs a square matrix")
    if len(rhs) != m.rows:
        raise ValueError("rhs has wrong length")
    inv = inverse_rational(m)
    rhs = [Fraction(x) for x in rhs]
    return RationalVector(sum(a * b for a, b in zip(row, rhs)) for row in inv)


def unimodular_inverse(m: IntegerMatrix) -> IntegerMatrix:
    inv = inverse_rational(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return IntegerMatrix.from_rows([[int(x) for x in row] for row in inv], m.cols)


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ source @ right == diagonal(diag)`` with unimodular left/right."""

    left: IntegerMatrix
    diag: tuple[int, ...]
    right: IntegerMatrix
    source: IntegerMatrix

    def diagonal_matrix(self) -> IntegerMatrix:
        r, c = self.source.rows, self.source.cols
        out = [[0] * c for _ in range(r)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return IntegerMatrix.from_rows(out, c)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diag if d != 1)


def smith_normal_form(m: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with transforms, by smallest-pivot elimination.

    ``diag`` has length ``min(rows, cols)``; nonnegative, each nonzero entry
    divides the next, zeros last.
    """
    r, c = m.rows, m.cols
    a = m.tolist()
    left = [[int(i == j) for j in range(r)] for i in range(r)]
    right = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row[dst] += k * row[src]
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, k):  # col[dst] += k * col[src]
        for row in a:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    return SmithDecomposition(
        left=IntegerMatrix.from_rows(left, r),
        diag=tuple(a[i][i] for i in range(min(r, c))),
        right=IntegerMatrix.from_rows(right, c),
        source=m,
    )


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant factors plus generator lifts in the ambient lattice."""

    invariant_factors: tuple[int, ...]
    generators: tuple[RationalVector, ...]
    sublattice_basis: IntegerMatrix | None = None

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if self.is_trivial:
            return "trivial"
        return " + ".join(f"Z/{n}" for n in self.invariant_factors)

    def contains_in_sublattice(self, vec: Sequence) -> bool:
        """Whether ``vec`` lies in the sublattice spanned by the basis columns."""
        coeffs = solve_rational(self.sublattice_basis, vec)
        return coeffs.is_integral()


def lattice_quotient(sublattice_basis: IntegerMatrix) -> FiniteAbelianGroup:
    """Z^n modulo the lattice spanned by the columns of ``sublattice_basis``."""
    if not sublattice_basis.is_square:
        raise ValueError("lattice_quotient needs a square basis matrix")
    n = sublattice_basis.rows
    if n == 0:
        return FiniteAbelianGroup((), (), sublattice_basis)
    snf = smith_normal_form(sublattice_basis)
    if 0 in snf.diag:
        raise InfiniteQuotient("sublattice has smaller rank; quotient is infinite")
    # With L B R = D, the columns of L^-1 form a basis adapted to B Z^n.
    linv = unimodular_inverse(snf.left)
    factors, gens = [], []
    for i, d in enumerate(snf.diag):
        if d > 1:
            factors.append(d)
            gens.append(RationalVector(linv.col(i)))
    return FiniteAbelianGroup(tuple(factors), tuple(gens), sublattice_basis)
