"""Directional entropies h_{p,q} of the action (p, q) -> sigma^p T^q.

For q >= 1 the map sigma^p T^q is itself an additive CA, so h_{p,q} is
its entropy rate.  Along the x-axis h_{p,0} = |p| log r.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .entropy import (
    CONVERGED,
    DEFAULT_MAX_ROWS,
    DEFAULT_TOL,
    EntropyEstimate,
    IntervalSpec,
    default_halfwidth,
    entropy_rate,
    q_transform,
    right_left_entropies,
)
from .rules import LocalRule, compose_direction, permutativity, shift_rule

__all__ = [
    "DirectionVector",
    "DirectionLimitReport",
    "HomogeneityReport",
    "MonotonicityVerdict",
    "directional_entropy",
    "homogeneity_check",
    "continued_fraction",
    "convergents",
    "unit_length_entropy",
    "interval_monotonicity_suite",
]

HOMOGENEITY_TOL = 1e-9


class DirectionVector(NamedTuple):
    p: int
    q: int

    def scaled(self, u: int) -> "DirectionVector":
        return DirectionVector(u * self.p, u * self.q)

    @property
    def norm(self) -> float:
        return math.hypot(self.p, self.q)


def _direction(v) -> DirectionVector:
    v = DirectionVector(*v)
    if v.q < 0:
        raise ValueError(f"time component must be >= 0, got q={v.q}")
    return v


def directional_entropy(
    rule: LocalRule,
    v: DirectionVector | tuple[int, int],
    max_rows: int = DEFAULT_MAX_ROWS,
    tol: float = DEFAULT_TOL,
) -> EntropyEstimate:
    v = _direction(v)
    if v.p == 0 and v.q == 0:
        raise ValueError("direction (0, 0) has no entropy rate")
    r = rule.modulus
    if v.q == 0:
        # Full-shift power: the rate is known exactly, the rows are still reported.
        est = entropy_rate(shift_rule(r, v.p), abs(v.p), max_rows, tol)
        return replace(est, value=abs(v.p) * math.log(r), growth=r ** abs(v.p), status=CONVERGED)
    composed = compose_direction(rule, v.p, v.q)
    return entropy_rate(composed, default_halfwidth(composed), max_rows, tol)


@dataclass(frozen=True)
class HomogeneityReport:
    direction: DirectionVector
    bipermutative: bool
    base: float
    rows: tuple[tuple[int, float, float], ...]  # (u, h_{u v}, h_{u v} / u)
    deviations: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.deviations

    def to_dict(self) -> dict:
        return {
            "direction": {"p": self.direction.p, "q": self.direction.q},
            "bipermutative": self.bipermutative,
            "value_nats": self.base,
            "rows": [{"u": u, "value_nats": h, "ratio": ratio} for u, h, ratio in self.rows],
            "deviations": list(self.deviations),
            "passed": self.passed,
        }


def homogeneity_check(
    rule: LocalRule,
    v: DirectionVector | tuple[int, int],
    u_max: int,
    tol: float = HOMOGENEITY_TOL,
) -> HomogeneityReport:
    """Compare ``h_{u v} / u`` with ``h_v`` for ``u = 1 .. u_max``.

    Any ``u`` whose ratio differs by more than ``tol`` is listed in
    ``deviations``.  Deviations are expected to be empty for bipermutative
    rules; for the rest they are reported without judgement.
    """
    if u_max < 2:
        raise ValueError("u_max must be >= 2")
    v = _direction(v)
    base = directional_entropy(rule, v).value
    rows, bad = [], []
    for u in range(1, u_max + 1):
        h = base if u == 1 else directional_entropy(rule, v.scaled(u)).value
        ratio = h / u
        rows.append((u, h, ratio))
        if abs(ratio - base) > tol:
            bad.append(u)
    return HomogeneityReport(v, permutativity(rule).bipermutative, base, tuple(rows), tuple(bad))


def continued_fraction(x: Fraction | int) -> list[int]:
    x = Fraction(x)
    terms = []
    while True:
        a = math.floor(x)
        terms.append(a)
        x -= a
        if x == 0:
            return terms
        x = 1 / x


def convergents(omega0: Sequence[int] | Fraction | int, count: int) -> list[tuple[int, int]]:
    """First ``count`` convergents ``(m_i, n_i)`` of a continued fraction.

    ``omega0`` is either a term list ``[a0; a1, a2, ...]`` or an exact
    rational; the list stops early once the terms run out.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if isinstance(omega0, (int, Fraction)):
        terms = continued_fraction(omega0)
    else:
        terms = [int(a) for a in omega0]
    if not terms:
        raise ValueError("empty continued fraction")
    if any(a <= 0 for a in terms[1:]):
        raise ValueError("terms after the first must be positive")
    out = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    for a in terms[:count]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append((h1, k1))
    return out


@dataclass(frozen=True)
class DirectionLimitReport:
    omega0_terms: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    c_values: tuple[float, ...]
    # window_gaps[j] = max |c_{i+1} - c_i| over i >= j; nonincreasing in j.
    window_gaps: tuple[float, ...] = field(default=())
    rational: bool = False

    @property
    def cauchy_gap(self) -> float:
        """Largest consecutive gap over the second half of the sequence."""
        if not self.window_gaps:
            return 0.0
        return self.window_gaps[len(self.window_gaps) // 2]

    def to_dict(self) -> dict:
        return {
            "omega0_terms": list(self.omega0_terms),
            "convergents": [list(c) for c in self.convergents],
            "c_values": list(self.c_values),
            "window_gaps": list(self.window_gaps),
            "cauchy_gap": self.cauchy_gap,
        }


def unit_length_entropy(
    rule: LocalRule,
    omega0: Sequence[int] | Fraction | int,
    depth: int,
) -> DirectionLimitReport:
    """Entropy per unit length ``h_{m,n} / sqrt(m^2 + n^2)`` toward slope omega0.

    A rational slope ``p/q`` uses the multiples ``(i p, i q)``; a term list
    uses its convergents.  No limit is asserted; the report carries the
    tail gaps of the computed sequence.
    """
    if depth < 2:
        raise ValueError("depth must be >= 2")
    if isinstance(omega0, (int, Fraction)):
        w = Fraction(omega0)
        terms = continued_fraction(w)
        points = [(i * w.numerator, i * w.denominator) for i in range(1, depth + 1)]
        rational = True
    else:
        terms = [int(a) for a in omega0]
        points = convergents(terms, depth)
        rational = False
    values = [directional_entropy(rule, pt).value / math.hypot(*pt) for pt in points]
    steps = [abs(b - a) for a, b in zip(values, values[1:])]
    gaps = [max(steps[j:]) for j in range(len(steps))]
    return DirectionLimitReport(tuple(terms), tuple(points), tuple(values), tuple(gaps), rational)


@dataclass(frozen=True)
class MonotonicityVerdict:
    comparisons: tuple[tuple[int, float, float], ...]  # (i, H(inner), H(outer))
    violations: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "comparisons": [{"i": i, "inner": a, "outer": b} for i, a, b in self.comparisons],
            "violations": list(self.violations),
            "passed": self.passed,
        }


def _future_width(interval: IntervalSpec, width: int) -> int:
    return width if interval.width is None else min(interval.width, width)


def interval_monotonicity_suite(
    rule: LocalRule,
    outer: IntervalSpec,
    inner: IntervalSpec,
    iterations: int,
    depth: int,
    width: int,
    tol: float = HOMOGENEITY_TOL,
) -> MonotonicityVerdict:
    """Check ``H(Q^i inner) <= H(Q^i outer)`` for ``i = 0 .. iterations``.

    Nesting means the same segment geometry (slope and offset) with the
    inner future ray truncated to no more sites than the outer one.
    """
    if inner.omega != outer.omega:
        raise ValueError("nested segments must share the slope")
    if inner.a != outer.a or _future_width(inner, width) > _future_width(outer, width):
        raise ValueError("inner segment is not contained in the outer one")
    rows, bad = [], []
    for i in range(iterations + 1):
        h_in = right_left_entropies(rule, q_transform(inner, i), depth, width).total
        h_out = right_left_entropies(rule, q_transform(outer, i), depth, width).total
        rows.append((i, h_in, h_out))
        if h_in > h_out + tol:
            bad.append(i)
    return MonotonicityVerdict(tuple(rows), tuple(bad))
