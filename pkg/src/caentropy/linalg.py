"""Exact linear algebra over Z_r.

Everything here reduces to one question: how many vectors does a matrix
hit?  Over the principal ideal ring Z_r a matrix can be carried by
invertible row and column operations to a diagonal ``diag(d_1, ..., d_k)``
whose ideals form a chain ``(d_1) > (d_2) > ...``.  The image of the
diagonal map is ``prod r / gcd(d_i, r)`` elements, and so is the image of
the original matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

__all__ = [
    "MatrixZr",
    "DiagonalForm",
    "diagonalize",
    "image_size",
    "kernel_size",
    "log_image_size",
    "log_kernel_size",
    "format_matrix",
]


@dataclass(frozen=True)
class MatrixZr:
    modulus: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        if any(not 0 <= e < self.modulus for e in self.entries):
            raise ValueError("entries must be reduced mod r")

    @classmethod
    def from_rows(cls, r: int, rows: Sequence[Sequence[int]], cols: int | None = None):
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise ValueError("ragged rows")
        return cls(r, len(rows), cols, tuple(e % r for row in rows for e in row))

    @classmethod
    def identity(cls, r: int, n: int) -> "MatrixZr":
        return cls.from_rows(r, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r: int, m: int, n: int) -> "MatrixZr":
        return cls(r, m, n, (0,) * (m * n))

    def to_rows(self) -> list[list[int]]:
        n = self.cols
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def apply(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        r = self.modulus
        return [sum(a * b for a, b in zip(row, x)) % r for row in self.to_rows()]

    def __matmul__(self, other: "MatrixZr") -> "MatrixZr":
        if self.cols != other.rows or self.modulus != other.modulus:
            raise ValueError("incompatible matrices")
        bt = list(zip(*other.to_rows())) if other.rows else [()] * other.cols
        r = self.modulus
        return MatrixZr.from_rows(
            r,
            [[sum(a * b for a, b in zip(row, col)) % r for col in bt] for row in self.to_rows()],
            other.cols,
        )


@dataclass(frozen=True)
class DiagonalForm:
    modulus: int
    diag: tuple[int, ...]
    # Filled only on request: U @ M @ V == diagonal matrix.
    left: MatrixZr | None = field(default=None, compare=False, repr=False)
    right: MatrixZr | None = field(default=None, compare=False, repr=False)

    def image_size(self) -> int:
        r = self.modulus
        size = 1
        for d in self.diag:
            size *= r // gcd(d, r)
        return size


def _unit_for(a: int, r: int) -> int:
    """A unit ``w`` of Z_r with ``a * w == gcd(a, r) (mod r)``."""
    g = gcd(a, r)
    m = r // g
    w = pow(a // g, -1, m) if m > 1 else 1
    # w is only a unit mod r/g; step by r/g until it is a unit mod r.
    while gcd(w, r) != 1:
        w += m
    return w % r


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """Integers ``(d, s, t)`` with ``s*a + t*b == d == gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, rem = divmod(a, b)
        a, b = b, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


class _Work:
    """Mutable elimination state, optionally tracking the transforms."""

    def __init__(self, M: MatrixZr, track: bool):
        self.r = M.modulus
        self.a = M.to_rows()
        self.m, self.n = M.rows, M.cols
        self.track = track
        if track:
            self.u = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
            self.v = [[int(i == j) for j in range(self.n)] for i in range(self.n)]

    # Row ops act on A and U; column ops act on A and V.
    def swap_rows(self, i, j):
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            if self.track:
                self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            if self.track:
                for row in self.v:
                    row[i], row[j] = row[j], row[i]

    def scale_row(self, i, w):
        r = self.r
        self.a[i] = [x * w % r for x in self.a[i]]
        if self.track:
            self.u[i] = [x * w % r for x in self.u[i]]

    def _mix(self, x, y, s, t, p, q):
        r = self.r
        return ([(s * a + t * b) % r for a, b in zip(x, y)],
                [(p * a + q * b) % r for a, b in zip(x, y)])

    def mix_rows(self, i, j, s, t, p, q):
        """row_i, row_j <- s*row_i + t*row_j, p*row_i + q*row_j."""
        self.a[i], self.a[j] = self._mix(self.a[i], self.a[j], s, t, p, q)
        if self.track:
            self.u[i], self.u[j] = self._mix(self.u[i], self.u[j], s, t, p, q)

    def mix_cols(self, i, j, s, t, p, q):
        r = self.r
        for mat in ([self.a, self.v] if self.track else [self.a]):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = (s * x + t * y) % r, (p * x + q * y) % r


def diagonalize(M: MatrixZr, transforms: bool = False) -> DiagonalForm:
    """Divisor-chain diagonal form of ``M`` over Z_r.

    Diagonal entries are normalized to divisors of r (a zero entry stands
    for the ideal (r)).  With ``transforms=True`` the returned form also
    carries invertible ``left``/``right`` matrices with
    ``left @ M @ right`` equal to the diagonal.
    """
    r = M.modulus
    w = _Work(M, transforms)
    a, m, n = w.a, w.m, w.n
    diag = []
    for t in range(min(m, n)):
        while True:
            # Pivot: minimal gcd with r, then lowest row, then lowest column.
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    if row[j]:
                        g = gcd(row[j], r)
                        if best is None or g < best[0]:
                            best = (g, i, j)
                            if g == 1:
                                break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            g, i, j = best
            w.swap_rows(t, i)
            w.swap_cols(t, j)
            w.scale_row(t, _unit_for(a[t][t], r))
            g = a[t][t]
            clean = True
            for i in range(t + 1, m):
                x = a[i][t]
                if not x:
                    continue
                if x % g == 0:
                    w.mix_rows(i, t, 1, r - x // g, 0, 1)
                else:
                    d, s, tt = _bezout(g, x)
                    w.mix_rows(t, i, s, tt, -(x // d), g // d)
                    clean = False
                    break
            if not clean:
                continue
            for j in range(t + 1, n):
                x = a[t][j]
                if not x:
                    continue
                if x % g == 0:
                    w.mix_cols(j, t, 1, r - x // g, 0, 1)
                else:
                    d, s, tt = _bezout(g, x)
                    w.mix_cols(t, j, s, tt, -(x // d), g // d)
                    clean = False
                    break
            if not clean:
                continue
            # Divisor chain: every remaining entry must lie in (g).
            bad = next(
                (i for i in range(t + 1, m) if any(x % g for x in a[i][t + 1:])),
                None,
            )
            if bad is not None:
                w.mix_rows(t, bad, 1, 1, 0, 1)
                continue
            break
        if best is None:
            diag.extend([0] * (min(m, n) - t))
            break
        diag.append(a[t][t])
    left = right = None
    if transforms:
        left = MatrixZr.from_rows(r, w.u, m)
        right = MatrixZr.from_rows(r, w.v, n)
    return DiagonalForm(r, tuple(diag), left, right)


def image_size(M: MatrixZr) -> int:
    """Number of distinct vectors ``M x`` for ``x`` in Z_r^n."""
    return diagonalize(M).image_size()


def kernel_size(M: MatrixZr) -> int:
    return M.modulus ** M.cols // image_size(M)


def log_image_size(M: MatrixZr) -> float:
    return math.log(image_size(M))


def log_kernel_size(M: MatrixZr) -> float:
    return M.cols * math.log(M.modulus) - log_image_size(M)


def format_matrix(M: MatrixZr) -> str:
    """Plain-text grid used by the CLI debug dump."""
    width = len(str(M.modulus - 1))
    lines = [f"# {M.rows}x{M.cols} mod {M.modulus}"]
    for row in M.to_rows():
        lines.append(" ".join(str(x).rjust(width) for x in row))
    return "\n".join(lines)
