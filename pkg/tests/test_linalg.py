import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caentropy.linalg import (
    MatrixZr,
    diagonalize,
    format_matrix,
    image_size,
    kernel_size,
    log_image_size,
    log_kernel_size,
)
from caentropy.oracles import enumerate_image, enumerate_image_direct

MODULI = [2, 3, 4, 5, 6, 8, 9, 12]


@st.composite
def matrices(draw, max_dim=4, moduli=MODULI):
    r = draw(st.sampled_from(moduli))
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    entries = draw(st.lists(st.integers(0, r - 1), min_size=m * n, max_size=m * n))
    return MatrixZr(r, m, n, tuple(entries))


def _det(rows, r):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0] % r
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor, r)
    return total % r


def test_matrix_validation():
    with pytest.raises(ValueError):
        MatrixZr(1, 0, 0, ())
    with pytest.raises(ValueError):
        MatrixZr(3, 2, 2, (0, 1, 2))
    with pytest.raises(ValueError):
        MatrixZr(3, 1, 1, (3,))


def test_diagonalize_examples():
    assert diagonalize(MatrixZr.from_rows(4, [[2]])).diag == (2,)
    assert diagonalize(MatrixZr.identity(7, 3)).diag == (1, 1, 1)
    assert diagonalize(MatrixZr.from_rows(6, [[2, 0], [0, 3]])).diag == (1, 0)
    assert diagonalize(MatrixZr.zeros(5, 0, 0)).diag == ()


def test_diag_two_three_mod_six_brute_force():
    M = MatrixZr.from_rows(6, [[2, 0], [0, 3]])
    image = {((2 * x) % 6, (3 * y) % 6) for x in range(6) for y in range(6)}
    assert len(image) == 6 == image_size(M)


def test_log_image_examples():
    assert log_image_size(MatrixZr.identity(3, 4)) == pytest.approx(4 * math.log(3), abs=1e-12)
    assert log_image_size(MatrixZr.from_rows(4, [[2]])) == pytest.approx(math.log(2), abs=1e-12)
    assert log_image_size(MatrixZr.zeros(5, 3, 2)) == 0


def test_log_kernel_examples():
    assert log_kernel_size(MatrixZr.identity(5, 3)) == pytest.approx(0, abs=1e-12)
    assert log_kernel_size(MatrixZr.zeros(4, 2, 3)) == pytest.approx(3 * math.log(4), abs=1e-12)
    assert log_kernel_size(MatrixZr.from_rows(4, [[2]])) == pytest.approx(math.log(2), abs=1e-12)
    assert kernel_size(MatrixZr.from_rows(4, [[2]])) == 2


def test_image_matches_enumeration_random():
    rng = random.Random(7)
    for _ in range(200):
        r = rng.choice(MODULI)
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = MatrixZr(r, m, n, tuple(rng.randrange(r) for _ in range(m * n)))
        assert image_size(M) == enumerate_image(M)


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=3))
def test_image_matches_direct_evaluation(M):
    assert image_size(M) == enumerate_image_direct(M)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_transforms_reconstruct_diagonal(M):
    form = diagonalize(M, transforms=True)
    r = M.modulus
    D = form.left @ M @ form.right
    k = len(form.diag)
    assert all(D[i, j] == (form.diag[i] if i == j else 0) for i in range(M.rows) for j in range(M.cols))
    assert k == min(M.rows, M.cols)
    assert math.gcd(_det(form.left.to_rows(), r), r) == 1
    assert math.gcd(_det(form.right.to_rows(), r), r) == 1


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=5))
def test_divisor_chain(M):
    r = M.modulus
    gs = [math.gcd(d, r) for d in diagonalize(M).diag]
    assert all(d == 0 or r % d == 0 for d in diagonalize(M).diag)
    assert all(b % a == 0 for a, b in zip(gs, gs[1:]))


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=5))
def test_rank_nullity(M):
    total = log_image_size(M) + log_kernel_size(M)
    assert total == pytest.approx(M.cols * math.log(M.modulus), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=5), st.randoms(use_true_random=False))
def test_image_invariant_under_permutation_and_units(M, rnd):
    r = M.modulus
    rows = M.to_rows()
    rnd.shuffle(rows)
    perm = list(range(M.cols))
    rnd.shuffle(perm)
    rows = [[row[j] for j in perm] for row in rows]
    units = [u for u in range(1, r) if math.gcd(u, r) == 1]
    if rows:
        i = rnd.randrange(len(rows))
        w = rnd.choice(units)
        rows[i] = [x * w % r for x in rows[i]]
    if M.cols:
        j = rnd.randrange(M.cols)
        w = rnd.choice(units)
        for row in rows:
            row[j] = row[j] * w % r
    N = MatrixZr.from_rows(r, rows, M.cols)
    assert image_size(N) == image_size(M)


def test_format_matrix():
    text = format_matrix(MatrixZr.from_rows(12, [[1, 11], [0, 3]]))
    assert text.splitlines() == ["# 2x2 mod 12", " 1 11", " 0  3"]
