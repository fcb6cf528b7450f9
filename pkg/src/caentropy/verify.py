"""Randomized verification suites behind ``caentropy verify``.

Every suite is deterministic for a given seed and returns a
:class:`SuiteResult`; a suite fails if any single case does.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .directional import (
    directional_entropy,
    homogeneity_check,
    interval_monotonicity_suite,
)
from .entropy import (
    CONVERGED,
    IntervalSpec,
    closed_form_entropy,
    conditional_entropy,
    entropy_rate,
    pattern_count,
)
from .linalg import MatrixZr, diagonalize, image_size
from .oracles import brute_pattern_count, enumerate_image, shift_block_growth
from .rules import (
    LocalRule,
    apply_local,
    make_rule,
    rule_power,
)
from .spacetime import CellSet, dependence_hull, simulate_cone

DEFAULT_SEED = 20240917
TOL = 1e-9

# Bipermutative rules on [-1, 1]: (modulus, coefficients).
BIPERMUTATIVE_RULES = (
    (2, (1, 0, 1)),
    (2, (1, 1, 1)),
    (3, (1, 0, 1)),
    (3, (2, 1, 2)),
    (5, (1, 1, 1)),
)
DEFAULT_DIRECTIONS = ((0, 1), (1, 1), (-2, 1), (3, 2))


def bipermutative_rules() -> list[LocalRule]:
    return [make_rule(r, -1, 1, c) for r, c in BIPERMUTATIVE_RULES]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str | Callable[[], str]):
        self.cases += 1
        if not ok:
            self.failures.append(message() if callable(message) else message)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
        }


def random_rule(rng: random.Random, r: int, lo: int, hi: int) -> LocalRule:
    return make_rule(r, lo, hi, [rng.randrange(r) for _ in range(hi - lo + 1)])


def lemma21(seed: int = DEFAULT_SEED, windows: int = 100) -> SuiteResult:
    """Power rule versus u-fold direct application on random cone windows."""
    rng = random.Random(seed)
    res = SuiteResult("lemma21")
    for r in (2, 3, 4, 6):
        for k in range(3):
            for u in range(5):
                rule = random_rule(rng, r, -k, k)
                power = rule_power(rule, u)
                for _ in range(windows):
                    x = [rng.randrange(r) for _ in range(2 * k * u + 1)]
                    direct = simulate_cone(rule, x, u)[-1].values
                    res.check(
                        len(direct) == 1 and apply_local(power, x) == direct[0],
                        lambda: f"{rule} u={u} window={x}",
                    )
    return res


def thm33(rules: Sequence[LocalRule] | None = None, u_max: int = 3) -> SuiteResult:
    """h(T^u) = u h(T) for bipermutative rules, plus the 2k log r value."""
    res = SuiteResult("thm33")
    for rule in rules or bipermutative_rules():
        base = entropy_rate(rule)
        res.check(base.status == CONVERGED and base.rows_used <= 3,
                  f"{rule}: status {base.status} after {base.rows_used} rows")
        closed = closed_form_entropy(rule)
        if closed is not None:
            res.check(abs(base.value - closed) <= TOL,
                      f"{rule}: rate {base.value} != closed form {closed}")
        for u in range(1, u_max + 1):
            h = entropy_rate(rule_power(rule, u)).value
            res.check(abs(h - u * base.value) <= TOL,
                      f"{rule}: h(T^{u}) = {h}, expected {u * base.value}")
    return res


def thm34(
    rules: Sequence[LocalRule] | None = None,
    directions: Sequence[tuple[int, int]] = DEFAULT_DIRECTIONS,
    u_max: int = 3,
) -> SuiteResult:
    """Homogeneity h_{u v} = u h_v along lattice directions."""
    res = SuiteResult("thm34")
    for rule in rules or bipermutative_rules():
        for v in directions:
            rep = homogeneity_check(rule, v, u_max, TOL)
            res.check(rep.passed, lambda: f"{rule} v={v}: deviations at u={list(rep.deviations)}")
    return res


def _random_interval(rng: random.Random) -> tuple[Fraction, Fraction]:
    a = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    omega = Fraction(rng.randint(1, 4), rng.randint(1, 4))
    return a, omega


def thm32(seed: int = DEFAULT_SEED, pairs: int = 50, iterations: int = 3) -> SuiteResult:
    """Segment monotonicity on random same-slope nested pairs."""
    rng = random.Random(seed)
    res = SuiteResult("thm32")
    for _ in range(pairs):
        r = rng.randint(2, 6)
        lo = rng.randint(-2, 0)
        rule = random_rule(rng, r, lo, lo + rng.randint(0, 2))
        a, omega = _random_interval(rng)
        depth, width = rng.randint(1, 3), rng.randint(1, 4)
        outer_w = rng.choice([None, rng.randint(0, width)])
        inner_w = rng.randint(0, width if outer_w is None else outer_w)
        outer = IntervalSpec(a, omega, outer_w)
        inner = IntervalSpec(a, omega, inner_w)
        verdict = interval_monotonicity_suite(rule, outer, inner, iterations, depth, width)
        res.check(verdict.passed,
                  lambda: f"{rule} I({a},{omega}) D={depth} W={width}: i={list(verdict.violations)}")
    return res


def _random_cells(rng: random.Random, n: int, sites=(-3, 3), times=(0, 3)) -> CellSet:
    return CellSet((rng.randint(*sites), rng.randint(*times)) for _ in range(n))


def lemma31(seed: int = DEFAULT_SEED, chains: int = 200) -> SuiteResult:
    """H(alpha_i | eta) is nonincreasing along decreasing chains alpha_i."""
    rng = random.Random(seed)
    res = SuiteResult("lemma31")
    for _ in range(chains):
        r = rng.randint(2, 6)
        lo = rng.randint(-2, 0)
        rule = random_rule(rng, r, lo, lo + rng.randint(0, 2))
        eta = _random_cells(rng, rng.randint(0, 6))
        alpha = list(_random_cells(rng, rng.randint(1, 8)))
        prev = math.inf
        while alpha:
            h = conditional_entropy(rule, CellSet(alpha), eta)
            res.check(h <= prev + TOL, lambda: f"{rule} eta={eta}: rose to {h} at {alpha}")
            prev = h
            alpha.pop(rng.randrange(len(alpha)))
    return res


def oracle(seed: int = DEFAULT_SEED, matrices: int = 200, cellsets: int = 300) -> SuiteResult:
    """Elimination counts against exhaustive enumeration."""
    rng = random.Random(seed)
    res = SuiteResult("oracle")
    for _ in range(matrices):
        r = rng.randint(2, 12)
        m, n = rng.randint(0, 6), rng.randint(0, 6)
        M = MatrixZr(r, m, n, tuple(rng.randrange(r) for _ in range(m * n)))
        res.check(image_size(M) == enumerate_image(M), lambda: f"image mismatch for {M}")
        res.check(_is_chain(diagonalize(M).diag, r), lambda: f"broken divisor chain for {M}")
    done = 0
    while done < cellsets:
        r = rng.randint(2, 6)
        lo = rng.randint(-2, 1)
        rule = random_rule(rng, r, lo, lo + rng.randint(0, 2))
        cells = _random_cells(rng, rng.randint(1, 8), sites=(-2, 2), times=(0, 2))
        hull = dependence_hull(rule, cells)
        size = hull[1] - hull[0] + 1
        if size > 8 or r ** size > 400_000:
            continue
        done += 1
        res.check(pattern_count(rule, cells) == brute_pattern_count(rule, cells),
                  lambda: f"pattern count mismatch for {rule} {cells}")
    for r in (2, 3):
        for p in (-3, -2, -1, 1, 2, 3):
            counts = shift_block_growth(r, p, abs(p) // 2, 3)
            oracle_rate = math.log(counts[-1] // counts[-2])
            h = directional_entropy(make_rule(r, 0, 0, [1]), (p, 0)).value
            res.check(abs(h - oracle_rate) <= TOL and abs(h - abs(p) * math.log(r)) <= TOL,
                      f"h_({p},0) mod {r}: {h} vs block count {oracle_rate}")
    return res


def _is_chain(diag: Sequence[int], r: int) -> bool:
    gs = [math.gcd(d, r) for d in diag]
    return all(b % a == 0 for a, b in zip(gs, gs[1:]))


SUITES = {
    "lemma21": lemma21,
    "thm33": thm33,
    "thm34": thm34,
    "thm32": thm32,
    "lemma31": lemma31,
    "oracle": oracle,
}
