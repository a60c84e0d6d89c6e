"""Smith normal form over the integers and the abelian invariants built on it."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotSquare, NotSymmetric
from .matrix import Matrix
from .presentations import Presentation, relator_matrix


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple[int, ...]       # nonzero invariant factors d_1 | d_2 | ..., then zeros
    left: Matrix
    right: Matrix
    rank: int
    shape: tuple[int, int]

    def diagonal_matrix(self) -> Matrix:
        rows, cols = self.shape
        return Matrix([[self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                        for j in range(cols)] for i in range(rows)], cols=cols)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = ["Z"] * min(self.free_rank, 1)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def smith_normal_form(m: Matrix) -> SNFResult:
    """Return ``left``, ``right`` unimodular with ``left @ m @ right`` diagonal.

    Pivots are the smallest nonzero absolute value in the remaining block,
    ties broken row-major. Diagonal entries are made non-negative.
    """
    rows, cols = m.shape
    a = [list(r) for r in m.entries]
    if any(not isinstance(x, int) for r in a for x in r):
        if not m.is_integral():
            raise ValueError("Smith normal form needs an integer matrix")
        a = [[int(x) for x in r] for r in a]
    left = [[int(i == j) for j in range(rows)] for i in range(rows)]
    right = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in right:
                r[dst] += q * r[src]

    k = 0
    while k < min(rows, cols):
        pivot = None
        for i in range(k, rows):
            for j in range(k, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            dirty = False
            for i in range(k + 1, rows):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // a[k][k]))
                    if a[i][k]:
                        dirty = True
            for j in range(k + 1, cols):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // a[k][k]))
                    if a[k][j]:
                        dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(k + 1, rows) for j in range(k + 1, cols)
                            if a[i][j] % a[k][k]), None)
                if bad is None:
                    break
                add_row(k, bad[0], 1)
                dirty = True
            # move the smallest entry of row k / column k onto the pivot
            best = (k, k)
            for i in range(k, rows):
                if a[i][k] and abs(a[i][k]) < abs(a[best[0]][best[1]]):
                    best = (i, k)
            for j in range(k, cols):
                if a[k][j] and abs(a[k][j]) < abs(a[best[0]][best[1]]):
                    best = (k, j)
            swap_rows(k, best[0])
            swap_cols(k, best[1])
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            left[k] = [-x for x in left[k]]
        k += 1

    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    rank = sum(1 for d in diag if d)
    return SNFResult(diag, Matrix(left, cols=rows), Matrix(right, cols=cols), rank, (rows, cols))


def invariants_from_snf(snf: SNFResult, n_generators: int) -> AbelianInvariants:
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return AbelianInvariants(n_generators - snf.rank, torsion)


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    snf = smith_normal_form(relator_matrix(p))
    return invariants_from_snf(snf, p.n_generators)


def surgery_h1(linking: Matrix) -> AbelianInvariants:
    """First homology of the 3-manifold obtained by integral surgery on a framed link."""
    if not linking.is_square():
        raise NotSquare(f"linking matrix must be square, got {linking.shape}")
    if not linking.is_symmetric():
        raise NotSymmetric("linking matrix must be symmetric")
    return invariants_from_snf(smith_normal_form(linking), linking.cols)


def is_smith_form(diagonal) -> bool:
    nonzero = [d for d in diagonal if d]
    if any(d < 0 for d in diagonal):
        return False
    if list(diagonal[:len(nonzero)]) != nonzero:
        return False
    return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
