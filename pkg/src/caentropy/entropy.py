"""Exact entropies of space-time partition joins under uniform Bernoulli measure.

The pushforward of the uniform measure through a linear map is uniform on
the image, so the entropy of a join of cells is the log of the number of
attainable patterns, which :mod:`caentropy.linalg` counts exactly.  All
entropies are in nats.  Differences of entropies are logs of integer
ratios and are computed from those ratios, not by subtracting floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .linalg import image_size
from .rules import LocalRule, ZERO_RULE, effective_span, permutativity
from .spacetime import CellSet, cells_to_matrix

__all__ = [
    "CONVERGED",
    "LOWER_BOUND",
    "MAX_DEPTH",
    "EntropyEstimate",
    "IntervalSpec",
    "RightLeftEntropy",
    "pattern_count",
    "joint_entropy",
    "conditional_entropy",
    "default_halfwidth",
    "entropy_rate",
    "closed_form_entropy",
    "interval_cells",
    "right_left_entropies",
    "q_transform",
]

CONVERGED = "converged"
LOWER_BOUND = "lower_bound"
MAX_DEPTH = "max_depth"

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ROWS = 12


@dataclass(frozen=True)
class EntropyEstimate:
    value: float
    status: str
    differences: tuple[float, ...]
    window_halfwidth: int
    # exp(value) as an exact integer: patterns gained per row.
    growth: int = 1
    rows_used: int = 0

    @property
    def value_log2(self) -> float:
        return math.log2(self.growth)

    def to_dict(self) -> dict:
        return {
            "value_nats": self.value,
            "value_log2": self.value_log2,
            "status": self.status,
            "differences": list(self.differences),
            "window": self.window_halfwidth,
        }


@dataclass(frozen=True)
class IntervalSpec:
    """Segment from ``(a, 0)`` to ``(a + 1/omega, 1)``.

    ``width`` optionally truncates the future half-line of this segment to
    fewer sites than the query width; it is how a sub-segment is
    represented once both rays are cut down to finite joins.
    """

    a: Fraction
    omega: Fraction
    width: int | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "omega", Fraction(self.omega))
        if self.omega <= 0:
            raise ValueError(f"slope must be positive, got {self.omega}")
        if self.width is not None and self.width < 0:
            raise ValueError("width must be >= 0")

    @property
    def end(self) -> Fraction:
        return self.a + 1 / self.omega


class RightLeftEntropy(NamedTuple):
    right: float
    left: float

    @property
    def total(self) -> float:
        return self.right + self.left


def pattern_count(rule: LocalRule, cells: CellSet) -> int:
    """Number of symbol patterns attainable on ``cells``."""
    if not len(cells):
        return 1
    matrix, _ = cells_to_matrix(rule, cells)
    return image_size(matrix)


def joint_entropy(rule: LocalRule, cells: CellSet) -> float:
    return math.log(pattern_count(rule, cells))


def _conditional_ratio(rule: LocalRule, alpha: CellSet, beta: CellSet) -> int:
    # Projection of the joint image onto beta is onto, so the ratio is exact.
    joint = pattern_count(rule, alpha | beta)
    given = pattern_count(rule, beta)
    assert joint % given == 0
    return joint // given


def conditional_entropy(rule: LocalRule, alpha: CellSet, beta: CellSet) -> float:
    """``H(alpha | beta) = H(alpha u beta) - H(beta)``."""
    return math.log(_conditional_ratio(rule, alpha, beta))


def default_halfwidth(rule: LocalRule) -> int:
    span = effective_span(rule)
    if span == ZERO_RULE:
        return 0
    return max(abs(span[0]), abs(span[1]))


def _window_generates(rule: LocalRule, halfwidth: int) -> bool:
    rep = permutativity(rule)
    if not rep.bipermutative:
        return False
    lo, hi = rep.effective_span
    return lo <= 0 <= hi and halfwidth >= max(-lo, hi)


def entropy_rate(
    rule: LocalRule,
    window_halfwidth: int | None = None,
    max_rows: int = DEFAULT_MAX_ROWS,
    tol: float = DEFAULT_TOL,
) -> EntropyEstimate:
    """Entropy of T relative to the window partition ``xi(-w, w)``.

    Row m of the space-time diagram is the window at time m; the estimate
    is the increment ``H(rows 0..m) - H(rows 0..m-1)``, which stabilizes
    once it equals the previous increment within ``tol``.  The result is
    flagged as a lower bound when the window partition is not known to
    generate (the rule is not bipermutative on a span containing 0).
    """
    if max_rows < 2:
        raise ValueError("max_rows must be >= 2")
    w = default_halfwidth(rule) if window_halfwidth is None else window_halfwidth
    if w < 0:
        raise ValueError("window_halfwidth must be >= 0")
    cells = CellSet.row(0, -w, w)
    prev = pattern_count(rule, cells)
    ratios = [prev]
    diffs = [math.log(prev)]
    stable = False
    for m in range(1, max_rows + 1):
        cells = cells | CellSet.row(m, -w, w)
        count = pattern_count(rule, cells)
        ratios.append(count // prev)
        diffs.append(math.log(ratios[-1]))
        prev = count
        if m >= 2 and abs(diffs[-1] - diffs[-2]) <= tol:
            stable = True
            break
    if not stable:
        status = MAX_DEPTH
    elif _window_generates(rule, w):
        status = CONVERGED
    else:
        status = LOWER_BOUND
    return EntropyEstimate(
        value=diffs[-1],
        status=status,
        differences=tuple(diffs),
        window_halfwidth=w,
        growth=ratios[-1],
        rows_used=len(diffs) - 1,
    )


def closed_form_entropy(rule: LocalRule, fallback: bool = False) -> float | None:
    """``2k log r`` for bipermutative rules with effective span ``[-k, k]``.

    Other rules have no closed form here and give None; with
    ``fallback=True`` an asymmetric bipermutative rule returns its
    computed entropy rate instead.
    """
    rep = permutativity(rule)
    if not rep.bipermutative:
        return None
    lo, hi = rep.effective_span
    if lo == -hi:
        return 2 * hi * math.log(rule.modulus)
    if fallback:
        return entropy_rate(rule).value
    return None


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def interval_cells(interval: IntervalSpec, depth: int, width: int, past_width: int | None = None):
    """Materialize the four truncated joins behind H_r(I) and H_l(I).

    Returns ``(right_future, right_past, left_future, left_past)`` as lists
    of ``(site, relative_time)``.  Futures sit at time 1 on the sites past
    ``a + 1/omega`` and keep ``width`` sites (fewer if ``interval.width``
    says so).  The past at time ``-q`` (``0 <= q <= depth``) uses the bound
    ``a + q/omega`` and keeps ``past_width`` sites, ``width`` by default.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if past_width is None:
        past_width = width
    if width < 0 or past_width < 0:
        raise ValueError("widths must be >= 0")
    fw = width if interval.width is None else min(interval.width, width)
    a, inv = interval.a, 1 / interval.omega

    def right_ray(bound, n, time):
        lo = _ceil(bound)
        return [(s, time) for s in range(lo, lo + n)]

    def left_ray(bound, n, time):
        hi = _floor(bound)
        return [(s, time) for s in range(hi - n + 1, hi + 1)]

    rf = right_ray(a + inv, fw, 1)
    lf = left_ray(a + inv, fw, 1)
    rp = [c for q in range(depth + 1) for c in right_ray(a + inv * q, past_width, -q)]
    lp = [c for q in range(depth + 1) for c in left_ray(a + inv * q, past_width, -q)]
    return rf, rp, lf, lp


def _normalized_conditional(rule: LocalRule, future, past, offset: int) -> float:
    if not future:
        return 0.0
    alpha = CellSet((s, t + offset) for s, t in future)
    beta = CellSet((s, t + offset) for s, t in past)
    return conditional_entropy(rule, alpha, beta)


def right_left_entropies(
    rule: LocalRule,
    interval: IntervalSpec,
    depth: int,
    width: int,
    past_width: int | None = None,
) -> RightLeftEntropy:
    """Truncated right and left entropies of a segment.

    All cells are translated forward in time by ``depth`` so the deepest
    conditioning layer lands at time 0.  Values grow with ``width`` only
    while ``past_width`` is held fixed: widening the conditioning rays
    too can lower them.
    """
    rf, rp, lf, lp = interval_cells(interval, depth, width, past_width)
    return RightLeftEntropy(
        right=_normalized_conditional(rule, rf, rp, depth),
        left=_normalized_conditional(rule, lf, lp, depth),
    )


def q_transform(interval: IntervalSpec, times: int = 1) -> IntervalSpec:
    """Slide a segment one step along its own slope: ``a -> a + 1/omega``."""
    if times < 0:
        raise ValueError("times must be >= 0")
    return IntervalSpec(interval.a + times / interval.omega, interval.omega, interval.width)
