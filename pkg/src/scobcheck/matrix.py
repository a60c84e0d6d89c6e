"""Exact dense matrices.

Entries are Python ints, ``Fraction`` values, or any ring element supporting
``+``, ``-`` and ``*`` (the polynomial entries in :mod:`scobcheck.monodromy`).
Nothing here ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence


class Matrix:
    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(r) for r in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
        else:
            width = cols or 0
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def parse(cls, text: str) -> Matrix:
        """Read ``"-1 1 1; 1 -1 1; 1 1 -1"`` (rows by ``;``, entries by space or comma)."""
        rows = []
        for chunk in text.strip().split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            rows.append([_parse_entry(tok) for tok in re.split(r"[\s,]+", chunk) if tok])
        return cls(rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if isinstance(other, Matrix):
            return self.shape == other.shape and self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.entries]})"

    def __str__(self) -> str:
        return "; ".join(" ".join(str(x) for x in r) for r in self.entries)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __add__(self, other: Matrix) -> Matrix:
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.entries])

    def scale(self, c) -> Matrix:
        return Matrix([[c * a for a in r] for r in self.entries])

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, cols=other.cols)

    def __pow__(self, n: int) -> Matrix:
        self._require_square()
        base = self if n >= 0 else self.inverse()
        result = Matrix.identity(self.rows)
        n = abs(n)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self.entries)), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self.entries == self.transpose().entries

    def is_integral(self) -> bool:
        return all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
                   for r in self.entries for x in r)

    def trace(self):
        self._require_square()
        acc = 0
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def minor(self, i: int, j: int) -> Matrix:
        return Matrix([r[:j] + r[j + 1:] for k, r in enumerate(self.entries) if k != i],
                      cols=self.cols - 1)

    def det_cofactor(self):
        """Laplace expansion along the first row. Works over any commutative ring."""
        self._require_square()
        n = self.rows
        if n == 0:
            return 1
        if n == 1:
            return self.entries[0][0]
        if n == 2:
            (a, b), (c, d) = self.entries
            return a * d - b * c
        acc = 0
        for j, a in enumerate(self.entries[0]):
            if a == 0:
                continue
            term = a * self.minor(0, j).det_cofactor()
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    def det_bareiss(self):
        """Fraction-free Gaussian elimination (exact for ints and rationals)."""
        self._require_square()
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = _exact_div(num, prev)
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    det = det_bareiss

    def inverse(self) -> Matrix:
        """Gauss-Jordan over the rationals. Integral results come back as ints."""
        self._require_square()
        n = self.rows
        aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
               for i, r in enumerate(self.entries)]
        for col in range(n):
            piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col] != 0:
                    f = aug[i][col]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        return Matrix([[_demote(x) for x in r[n:]] for r in aug])

    def map(self, fn) -> Matrix:
        return Matrix([[fn(x) for x in r] for r in self.entries], cols=self.cols)

    def _require_square(self):
        if not self.is_square():
            raise ValueError(f"square matrix required, got {self.shape}")


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _exact_div(num, den):
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        if r:
            raise ArithmeticError("inexact division in Bareiss step")
        return q
    return Fraction(num) / Fraction(den)


def _demote(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _parse_entry(tok: str):
    return int(tok) if re.fullmatch(r"[+-]?\d+", tok) else Fraction(tok)


def mat(rows: Sequence[Sequence]) -> Matrix:
    return Matrix(rows)
