"""Space-time diagrams on dependence cones, and their linearization.

A cell ``(site, time)`` observes ``(T^time x)_site``.  Because T is
additive, every cell value is a fixed Z_r-linear form in the initial
configuration, and a finite set of cells is a matrix over Z_r.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .linalg import MatrixZr
from .rules import LocalRule, apply_local, rule_power

__all__ = [
    "ObservationCell",
    "CellSet",
    "Row",
    "dependence_hull",
    "simulate_cone",
    "simulate_cyclic",
    "cells_to_matrix",
    "format_spacetime",
]


class ObservationCell(NamedTuple):
    site: int
    time: int


class CellSet:
    """Finite set of observation cells, ordered by time then site."""

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[tuple[int, int]] = ()):
        uniq = {ObservationCell(int(s), int(t)) for s, t in cells}
        if any(c.time < 0 for c in uniq):
            raise ValueError("cell times must be >= 0; use CellSet.normalized()")
        self.cells: tuple[ObservationCell, ...] = tuple(
            sorted(uniq, key=lambda c: (c.time, c.site))
        )

    @classmethod
    def normalized(cls, cells: Iterable[tuple[int, int]]) -> tuple["CellSet", int]:
        """Shift all times so the earliest is 0; returns the set and the offset.

        Under a T-invariant measure a uniform time translation leaves every
        joint distribution unchanged.
        """
        cells = [(int(s), int(t)) for s, t in cells]
        if not cells:
            return cls(), 0
        offset = -min(t for _, t in cells)
        return cls((s, t + offset) for s, t in cells), offset

    @classmethod
    def row(cls, time: int, lo: int, hi: int) -> "CellSet":
        return cls((s, time) for s in range(lo, hi + 1))

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return tuple(cell) in set(self.cells)

    def __eq__(self, other):
        return isinstance(other, CellSet) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __or__(self, other: "CellSet") -> "CellSet":
        return CellSet(self.cells + tuple(other))

    def issubset(self, other: "CellSet") -> bool:
        return set(self.cells) <= set(other.cells)

    def shifted(self, ds: int = 0, dt: int = 0) -> "CellSet":
        return CellSet((s + ds, t + dt) for s, t in self.cells)

    def __repr__(self):
        return f"CellSet({list(map(tuple, self.cells))})"


class Row(NamedTuple):
    start: int
    values: tuple[int, ...]

    @property
    def stop(self) -> int:
        return self.start + len(self.values) - 1


def dependence_hull(rule: LocalRule, cells: CellSet) -> tuple[int, int] | None:
    """Initial window ``[A, B]`` that determines every cell, or None if empty."""
    if not len(cells):
        return None
    lo = min(s + t * rule.left for s, t in cells)
    hi = max(s + t * rule.right for s, t in cells)
    return lo, hi


def simulate_cone(rule: LocalRule, initial: Sequence[int], steps: int, start: int = 0) -> list[Row]:
    """Evolve a finite window without wrapping.

    ``initial`` sits on sites ``start .. start+len-1``; row j covers
    ``[A - j*l, B - j*u]``.  Raises if the window is exhausted before
    ``steps`` rows have been produced.
    """
    r = rule.modulus
    if any(not 0 <= x < r for x in initial):
        raise ValueError(f"symbols must lie in [0, {r})")
    rows = [Row(start, tuple(initial))]
    w = rule.width
    for _ in range(steps):
        prev = rows[-1]
        n = len(prev.values) - w + 1
        if n <= 0:
            raise ValueError(f"window exhausted after {len(rows) - 1} steps")
        vals = prev.values
        nxt = tuple(apply_local(rule, vals[i:i + w]) for i in range(n))
        rows.append(Row(prev.start - rule.left, nxt))
    return rows


def simulate_cyclic(rule: LocalRule, config: Sequence[int], steps: int) -> list[tuple[int, ...]]:
    """Evolve on a ring of length N (for demos; never used for entropy)."""
    n = len(config)
    if n < rule.width:
        raise ValueError(f"ring of length {n} is shorter than rule width {rule.width}")
    r = rule.modulus
    rows = [tuple(int(x) % r for x in config)]
    for _ in range(steps):
        prev = rows[-1]
        rows.append(tuple(
            sum(a * prev[(s + rule.left + i) % n] for i, a in enumerate(rule.coeffs)) % r
            for s in range(n)
        ))
    return rows


def cells_to_matrix(rule: LocalRule, cells: CellSet) -> tuple[MatrixZr, tuple[int, int] | None]:
    """Matrix whose row for cell (s, t) is the rule of T^t placed at site s.

    Columns are indexed by the dependence hull ``[A, B]`` (returned with
    the matrix).  ``M @ x`` reproduces the cell values of the initial
    segment ``x`` on that hull.
    """
    r = rule.modulus
    hull = dependence_hull(rule, cells)
    if hull is None:
        return MatrixZr.zeros(r, 0, 0), None
    lo, hi = hull
    powers: dict[int, LocalRule] = {}
    rows = []
    for s, t in cells:
        if t not in powers:
            powers[t] = rule_power(rule, t)
        p = powers[t]
        row = [0] * (hi - lo + 1)
        base = s + p.left - lo
        row[base:base + p.width] = p.coeffs
        rows.append(row)
    return MatrixZr.from_rows(r, rows, hi - lo + 1), hull


_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def format_spacetime(rows: Sequence[Row] | Sequence[Sequence[int]], origin: int | None = None) -> str:
    """Plain-text dump: a header naming the leftmost site, one line per step."""
    if rows and isinstance(rows[0], Row):
        left = min(row.start for row in rows)
        lines = [f"# left={left}"]
        for row in rows:
            pad = " " * (row.start - left)
            lines.append(pad + "".join(_DIGITS[v] for v in row.values))
        return "\n".join(lines)
    lines = [f"# left={origin or 0}"]
    lines += ["".join(_DIGITS[v] for v in row) for row in rows]
    return "\n".join(lines)
