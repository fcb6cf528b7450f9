"""Independent oracles shared by the test modules.

``impulse_rank_count`` builds the observation matrix by *simulating* unit
impulses through the automaton (no rule_power, no cells_to_matrix) and
takes a plain Gaussian-elimination rank over a prime field.
"""
import itertools

from hypothesis import strategies as st

from caentropy.rules import LocalRule, make_rule
from caentropy.spacetime import simulate_cone


def _cone_values(rule, x, lo, tmax):
    rows = simulate_cone(rule, x, tmax, start=lo)
    return {(s, t): v for t, row in enumerate(rows) for s, v in zip(range(row.start, row.stop + 1), row.values)}


def simulated_matrix(rule: LocalRule, cells, lo, hi):
    tmax = max(t for _, t in cells)
    n = hi - lo + 1
    cols = []
    for j in range(n):
        x = [0] * n
        x[j] = 1
        vals = _cone_values(rule, x, lo, tmax)
        cols.append([vals[c] for c in cells])
    return [list(row) for row in zip(*cols)]


def rank_mod_p(rows, p):
    a = [list(r) for r in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def impulse_rank_count(rule, cells, prime):
    """Pattern count p^rank for a prime modulus, via simulated impulses."""
    cells = list(cells)
    if not cells:
        return 1
    lo = min(s + t * rule.left for s, t in cells)
    hi = max(s + t * rule.right for s, t in cells)
    return prime ** rank_mod_p(simulated_matrix(rule, cells, lo, hi), prime)


def exhaustive_patterns(rule, cells):
    """Distinct patterns over every initial window, by direct simulation."""
    cells = list(cells)
    lo = min(s + t * rule.left for s, t in cells)
    hi = max(s + t * rule.right for s, t in cells)
    tmax = max(t for _, t in cells)
    seen = set()
    for x in itertools.product(range(rule.modulus), repeat=hi - lo + 1):
        vals = _cone_values(rule, list(x), lo, tmax)
        seen.add(tuple(vals[c] for c in cells))
    return len(seen)


@st.composite
def rules(draw, max_r=6, max_reach=2):
    r = draw(st.integers(2, max_r))
    lo = draw(st.integers(-max_reach, max_reach))
    hi = draw(st.integers(lo, lo + max_reach))
    coeffs = draw(st.lists(st.integers(0, r - 1), min_size=hi - lo + 1, max_size=hi - lo + 1))
    return make_rule(r, lo, hi, coeffs)
