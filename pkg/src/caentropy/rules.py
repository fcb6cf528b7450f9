"""Additive automaton rules over Z_r and their algebra.

A rule ``F(z_l, ..., z_u) = sum a_i z_i  (mod r)`` is stored with its
declared span ``[l, u]``.  The declared span is never trimmed; questions
about permutativity look at the *effective* span (outermost nonzero
coefficients) instead.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Sequence

__all__ = [
    "LocalRule",
    "PermutativityReport",
    "ZERO_RULE",
    "make_rule",
    "identity_rule",
    "shift_rule",
    "apply_local",
    "rule_power",
    "rule_shift",
    "compose_direction",
    "effective_span",
    "permutativity",
    "is_surjective",
    "parse_rule",
    "format_rule",
]

# Sentinel returned by effective_span() for the all-zero rule.
ZERO_RULE = "zero rule"


@dataclass(frozen=True)
class LocalRule:
    modulus: int
    left: int
    right: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if self.left > self.right:
            raise ValueError(f"empty span [{self.left}, {self.right}]")
        if len(self.coeffs) != self.right - self.left + 1:
            raise ValueError(
                f"span [{self.left}, {self.right}] needs "
                f"{self.right - self.left + 1} coefficients, got {len(self.coeffs)}"
            )
        if any(not 0 <= c < self.modulus for c in self.coeffs):
            raise ValueError("coefficients must be reduced mod r")

    @property
    def width(self) -> int:
        return self.right - self.left + 1

    def coeff(self, i: int) -> int:
        """Coefficient at relative position ``i`` (zero outside the span)."""
        if self.left <= i <= self.right:
            return self.coeffs[i - self.left]
        return 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return format_rule(self)


@dataclass(frozen=True)
class PermutativityReport:
    left_permutative: bool
    right_permutative: bool
    effective_span: tuple[int, int] | str

    @property
    def bipermutative(self) -> bool:
        return self.left_permutative and self.right_permutative


def make_rule(r: int, l: int, u: int, coeffs: Sequence[int]) -> LocalRule:
    """Build a rule on span ``[l, u]``; coefficients are reduced mod ``r``."""
    if r < 2:
        raise ValueError(f"modulus must be >= 2, got {r}")
    coeffs = list(coeffs)
    if len(coeffs) != u - l + 1:
        raise ValueError(
            f"span {l}..{u} needs {u - l + 1} coefficients, got {len(coeffs)}"
        )
    return LocalRule(r, l, u, tuple(int(c) % r for c in coeffs))


def identity_rule(r: int) -> LocalRule:
    return LocalRule(r, 0, 0, (1,))


def shift_rule(r: int, p: int) -> LocalRule:
    """The rule of ``sigma^p``: a single 1 at position ``p``."""
    return LocalRule(r, p, p, (1,))


def apply_local(rule: LocalRule, window: Sequence[int]) -> int:
    if len(window) != rule.width:
        raise ValueError(f"window length {len(window)} != rule width {rule.width}")
    return sum(a * z for a, z in zip(rule.coeffs, window)) % rule.modulus


def _convolve(a: Sequence[int], b: Sequence[int], r: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % r
    return out


def rule_power(rule: LocalRule, iterations: int) -> LocalRule:
    """Rule of ``T^u``: the u-fold convolution power on span ``[u*l, u*u]``."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    r = rule.modulus
    if iterations == 0:
        return identity_rule(r)
    coeffs = list(rule.coeffs)
    for _ in range(iterations - 1):
        coeffs = _convolve(coeffs, rule.coeffs, r)
    return LocalRule(r, iterations * rule.left, iterations * rule.right, tuple(coeffs))


def rule_shift(rule: LocalRule, i: int) -> LocalRule:
    """Rule generating ``sigma^i o T``: the span moves to ``[l+i, u+i]``."""
    return LocalRule(rule.modulus, rule.left + i, rule.right + i, rule.coeffs)


def compose_direction(rule: LocalRule, p: int, q: int) -> LocalRule:
    """Rule of ``sigma^p T^q`` for a lattice direction with ``q >= 0``."""
    if q < 0:
        raise ValueError(f"time component must be >= 0, got q={q}")
    return rule_shift(rule_power(rule, q), p)


def effective_span(rule: LocalRule) -> tuple[int, int] | str:
    nonzero = [rule.left + i for i, c in enumerate(rule.coeffs) if c]
    if not nonzero:
        return ZERO_RULE
    return nonzero[0], nonzero[-1]


def permutativity(rule: LocalRule) -> PermutativityReport:
    # x -> c*x + const permutes Z_r exactly when c is a unit.
    span = effective_span(rule)
    if span == ZERO_RULE:
        return PermutativityReport(False, False, ZERO_RULE)
    lo, hi = span
    r = rule.modulus
    return PermutativityReport(
        left_permutative=gcd(rule.coeff(lo), r) == 1,
        right_permutative=gcd(rule.coeff(hi), r) == 1,
        effective_span=span,
    )


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_surjective(rule: LocalRule) -> bool:
    """An additive CA is onto iff no prime factor of r kills every coefficient."""
    return all(
        any(c % p for c in rule.coeffs) for p in _prime_factors(rule.modulus)
    )


_SPAN_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def parse_rule(text: str | Sequence[str]) -> LocalRule:
    """Parse a rule literal such as ``r=2 span=-1..1 coeffs=1,0,1``.

    Whitespace around ``=`` and commas is ignored.  A list of tokens is
    accepted as well (the CLI passes argv slices).
    """
    if not isinstance(text, str):
        text = " ".join(text)
    text = re.sub(r"\s*=\s*", "=", text.strip())
    text = re.sub(r"\s*,\s*", ",", text)
    fields: dict[str, str] = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep:
            raise ValueError(f"malformed rule token {token!r}")
        if key in fields:
            raise ValueError(f"duplicate rule key {key!r}")
        fields[key] = value
    missing = {"r", "span", "coeffs"} - fields.keys()
    if missing:
        raise ValueError(f"rule literal missing {', '.join(sorted(missing))}")
    extra = fields.keys() - {"r", "span", "coeffs"}
    if extra:
        raise ValueError(f"unknown rule keys {', '.join(sorted(extra))}")
    m = _SPAN_RE.match(fields["span"])
    if not m:
        raise ValueError(f"span must look like l..u, got {fields['span']!r}")
    try:
        r = int(fields["r"])
        coeffs = [int(c) for c in fields["coeffs"].split(",")]
    except ValueError as exc:
        raise ValueError(f"malformed rule literal: {exc}") from None
    return make_rule(r, int(m.group(1)), int(m.group(2)), coeffs)


def format_rule(rule: LocalRule) -> str:
    coeffs = ",".join(str(c) for c in rule.coeffs)
    return f"r={rule.modulus} span={rule.left}..{rule.right} coeffs={coeffs}"
