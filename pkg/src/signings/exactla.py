"""Exact linear algebra over the rationals and GF(2).

Everything here is decided without floating point: determinants use
fraction-free elimination on integers, PSD decisions use symmetric
elimination on :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterator, Mapping, Sequence

Rational = Fraction


class SingularBlockError(ValueError):
    """Raised when a Schur complement is requested for a singular leading block."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Symmetric matrix with exact rational entries, upper triangle stored sparsely."""

    n: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in self.entries.items():
            if i > j:
                i, j = j, i
            if not (0 <= i and j < self.n):
                raise IndexError(f"entry ({i}, {j}) out of range for n={self.n}")
            v = as_rational(v)
            if v != 0:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymMatrix":
        n = len(rows)
        entries = {}
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix must be square")
            for j in range(i, n):
                a, b = as_rational(rows[i][j]), as_rational(rows[j][i])
                if a != b:
                    raise ValueError(f"not symmetric at ({i}, {j})")
                if a:
                    entries[(i, j)] = a
        return cls(n, entries)

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls(n, {})

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if i > j:
            i, j = j, i
        return self.entries.get((i, j), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, frozenset(self.entries.items())))

    def __repr__(self):
        return f"SymMatrix({self.to_rows()!r})"

    def __neg__(self) -> "SymMatrix":
        return SymMatrix(self.n, {k: -v for k, v in self.entries.items()})

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
            rows[j][i] = v
        return rows

    def items(self) -> Iterator[tuple[int, int, Fraction]]:
        for (i, j) in sorted(self.entries):
            yield i, j, self.entries[(i, j)]

    def principal(self, idx: Sequence[int]) -> "SymMatrix":
        """Principal submatrix on the given index list (in that order)."""
        pos = {v: k for k, v in enumerate(idx)}
        return SymMatrix(
            len(idx),
            {(pos[i], pos[j]): v for (i, j), v in self.entries.items() if i in pos and j in pos},
        )


@dataclass(frozen=True)
class BlockSplit:
    """Split of an n x n matrix into leading p x p block A, p x q block B and trailing C."""

    p: int


# ---------------------------------------------------------------- determinants


def _bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination; ``rows`` is consumed."""
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - a * rk[j]) // prev
        prev = pivot
    return sign * rows[n - 1][n - 1]


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    if not rows:
        return 1
    return _bareiss([list(r) for r in rows])


def det_dense(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix given as nested rows."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scaled = []
    denom = 1
    for r in rows:
        fr = [as_rational(x) for x in r]
        d = lcm(*(x.denominator for x in fr))
        scaled.append([x.numerator * (d // x.denominator) for x in fr])
        denom *= d
    return Fraction(_bareiss(scaled), denom)


def det_exact(M: SymMatrix) -> Fraction:
    return det_dense(M.to_rows())


# ---------------------------------------------------------------- GF(2)


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix; row ``i`` is an int whose bit ``j`` is entry (i, j)."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.rows:
            raise ValueError("bits must have one word per row")
        mask = (1 << self.cols) - 1
        if any(b & ~mask for b in self.bits):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        cols = len(rows[0]) if rows else 0
        bits = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            w = 0
            for j, x in enumerate(r):
                if x % 2:
                    w |= 1 << j
            bits.append(w)
        return cls(len(rows), cols, tuple(bits))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.bits[i] >> j) & 1

    def to_rows(self) -> list[list[int]]:
        return [[(w >> j) & 1 for j in range(self.cols)] for w in self.bits]


def _gf2_reduce(A: Gf2Matrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns). Leftmost pivot first."""
    rows = list(A.bits)
    pivots: list[int] = []
    r = 0
    for c in range(A.cols):
        bit = 1 << c
        for i in range(r, A.rows):
            if rows[i] & bit:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        for k in range(A.rows):
            if k != r and rows[k] & bit:
                rows[k] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == A.rows:
            break
    return rows[:r], pivots


def rank_gf2(A: Gf2Matrix) -> int:
    return len(_gf2_reduce(A)[1])


def det_gf2(A: Gf2Matrix) -> int:
    if A.rows != A.cols:
        raise ValueError(f"determinant needs a square matrix, got {A.rows}x{A.cols}")
    return int(rank_gf2(A) == A.rows)


def nullspace_gf2(A: Gf2Matrix) -> list[tuple[int, ...]]:
    """Basis of {x : Ax = 0} over GF(2), one basis vector per free column."""
    rows, pivots = _gf2_reduce(A)
    pivot_set = set(pivots)
    basis = []
    for f in range(A.cols):
        if f in pivot_set:
            continue
        x = [0] * A.cols
        x[f] = 1
        for row, pc in zip(rows, pivots):
            if (row >> f) & 1:
                x[pc] = 1
        basis.append(tuple(x))
    return basis


def gf2_matvec(A: Gf2Matrix, x: Sequence[int]) -> list[int]:
    w = sum(1 << j for j, b in enumerate(x) if b % 2)
    return [bin(row & w).count("1") & 1 for row in A.bits]


# ---------------------------------------------------------------- Schur / PSD


def _solve(A: list[list[Fraction]], B: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve A X = B by Gauss-Jordan; A must be invertible."""
    p = len(A)
    q = len(B[0]) if B else 0
    aug = [list(A[i]) + list(B[i]) for i in range(p)]
    for c in range(p):
        piv = next((r for r in range(c, p) if aug[r][c] != 0), None)
        if piv is None:
            raise SingularBlockError("leading block is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(p):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[p : p + q] for row in aug]


def schur_complement(D: SymMatrix, split: BlockSplit | int) -> SymMatrix:
    """Return C - B^T A^{-1} B for D = [[A, B], [B^T, C]] with A the leading p x p block."""
    p = split.p if isinstance(split, BlockSplit) else int(split)
    n = D.n
    if not 1 <= p < n:
        raise ValueError(f"split point must satisfy 1 <= p < n, got p={p}, n={n}")
    rows = D.to_rows()
    A = [r[:p] for r in rows[:p]]
    B = [r[p:] for r in rows[:p]]
    C = [r[p:] for r in rows[p:]]
    if det_dense(A) == 0:
        raise SingularBlockError("leading block is singular")
    X = _solve(A, B)  # A^{-1} B, p x q
    q = n - p
    out = {}
    for i in range(q):
        for j in range(i, q):
            v = C[i][j] - sum(B[k][i] * X[k][j] for k in range(p))
            if v:
                out[(i, j)] = v
    return SymMatrix(q, out)


def _psd_dense(a: list[list[Fraction]]) -> bool:
    while a:
        m = len(a)
        diag = [a[i][i] for i in range(m)]
        if any(d < 0 for d in diag):
            return False
        for i in range(m):
            if diag[i] == 0 and any(a[i][j] != 0 for j in range(m)):
                return False
        k = next((i for i in range(m) if diag[i] > 0), None)
        if k is None:
            return True  # all-zero diagonal with zero rows: zero matrix
        piv = a[k][k]
        rest = [i for i in range(m) if i != k]
        a = [[a[i][j] - a[i][k] * a[k][j] / piv for j in rest] for i in rest]
    return True


def is_psd_exact(M: SymMatrix) -> bool:
    """Decide M >= 0 by recursive symmetric elimination on positive pivots."""
    return _psd_dense(M.to_rows())


def is_psd_dense(rows: Sequence[Sequence]) -> bool:
    return _psd_dense([[as_rational(x) for x in r] for r in rows])


def max_eigenvalue_leq(M: SymMatrix, lam) -> bool:
    """True iff every eigenvalue of M is at most ``lam`` (via lam*I - M >= 0)."""
    lam = as_rational(lam)
    rows = M.to_rows()
    shifted = [[(lam if i == j else 0) - rows[i][j] for j in range(M.n)] for i in range(M.n)]
    return _psd_dense(shifted)
