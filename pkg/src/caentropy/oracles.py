"""Brute-force counterparts of the counting engine.

These enumerate instead of eliminating and simulate instead of
convolving, so they share no code path with :mod:`caentropy.linalg` or
:func:`caentropy.spacetime.cells_to_matrix`.  Sizes must stay tiny.
"""
from __future__ import annotations

import itertools

import numpy as np

from .linalg import MatrixZr
from .rules import LocalRule
from .spacetime import CellSet, dependence_hull


def _encode(rows: np.ndarray, r: int) -> np.ndarray:
    weights = r ** np.arange(rows.shape[1], dtype=np.int64)
    return rows.astype(np.int64) @ weights


def _grid(r: int, n: int) -> np.ndarray:
    """All of Z_r^n, one configuration per row."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.stack(np.unravel_index(np.arange(r ** n), (r,) * n), axis=1).astype(np.int64)


def _decode(codes: np.ndarray, r: int, m: int) -> np.ndarray:
    out = np.empty((codes.size, m), dtype=np.int64)
    for i in range(m):
        codes, out[:, i] = np.divmod(codes, r)
    return out


def enumerate_image(M: MatrixZr) -> int:
    """|{M x}| by closing {0} under adding multiples of each column."""
    r, m = M.modulus, M.rows
    if m == 0:
        return 1
    A = np.array(M.to_rows(), dtype=np.int64).reshape(m, M.cols)
    codes = np.zeros(1, dtype=np.int64)
    for j in range(M.cols):
        col = A[:, j]
        if not col.any():
            continue
        pts = _decode(codes, r, m)
        acc = codes
        for k in range(1, r):
            step = (k * col) % r
            if not step.any():
                break
            acc = np.union1d(acc, _encode((pts + step) % r, r))
        codes = acc
    return int(codes.size)


def enumerate_image_direct(M: MatrixZr) -> int:
    """|{M x}| by evaluating every x in Z_r^n (tiny n only)."""
    r = M.modulus
    seen = {tuple(M.apply(x)) for x in itertools.product(range(r), repeat=M.cols)}
    return len(seen)


def simulate_all(rule: LocalRule, lo: int, hi: int, steps: int) -> list[tuple[int, np.ndarray]]:
    """Evolve every configuration on ``[lo, hi]`` at once.

    Returns one ``(start_site, values)`` pair per time step, ``values``
    having one row per configuration.
    """
    r, n = rule.modulus, hi - lo + 1
    grid = _grid(r, n)
    out = [(lo, grid)]
    start, cur = lo, grid
    w = rule.width
    for _ in range(steps):
        length = cur.shape[1] - w + 1
        if length <= 0:
            break
        nxt = np.zeros((cur.shape[0], length), dtype=np.int64)
        for i, a in enumerate(rule.coeffs):
            if a:
                nxt += a * cur[:, i:i + length]
        cur = nxt % r
        start -= rule.left
        out.append((start, cur))
    return out


def brute_pattern_count(rule: LocalRule, cells: CellSet) -> int:
    """Distinct patterns on ``cells`` over all initial windows on the hull."""
    if not len(cells):
        return 1
    lo, hi = dependence_hull(rule, cells)
    tmax = max(c.time for c in cells)
    rows = simulate_all(rule, lo, hi, tmax)
    cols = []
    for s, t in cells:
        start, vals = rows[t]
        cols.append(vals[:, s - start])
    patterns = np.stack(cols, axis=1)
    return int(np.unique(patterns, axis=0).shape[0])


def is_permutation_brute(rule: LocalRule, side: str) -> bool:
    """Exhaustively test whether the extreme variable acts as a permutation.

    Works on the effective span: every fixing of the other variables must
    give a bijection of Z_r in the chosen extreme variable.
    """
    nz = [i for i, c in enumerate(rule.coeffs) if c]
    if not nz:
        return False
    coeffs = rule.coeffs[nz[0]:nz[-1] + 1]
    r = rule.modulus
    k = len(coeffs)
    for rest in itertools.product(range(r), repeat=k - 1):
        images = set()
        for x in range(r):
            window = (x,) + rest if side == "left" else rest + (x,)
            images.add(sum(a * z for a, z in zip(coeffs, window)) % r)
        if len(images) != r:
            return False
    return True


def shift_block_growth(r: int, p: int, halfwidth: int, rows: int) -> list[int]:
    """Pattern counts of ``xi(-w, w)`` joined over ``sigma^{p i}``, i < rows+1.

    Enumerates configurations on the union of the shifted windows.
    """
    sites = sorted({s + p * i for i in range(rows + 1) for s in range(-halfwidth, halfwidth + 1)})
    index = {s: j for j, s in enumerate(sites)}
    grid = _grid(r, len(sites))
    counts = []
    for n in range(rows + 1):
        cols = [index[s + p * i] for i in range(n + 1) for s in range(-halfwidth, halfwidth + 1)]
        counts.append(int(np.unique(grid[:, cols], axis=0).shape[0]))
    return counts
