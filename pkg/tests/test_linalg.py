"""Exact linear algebra helpers, checked against slow reference code."""

import itertools
import math
import random
from fractions import Fraction

from hypothesis import given, strategies as st

from polynorm.linalg import det, hyperplane_normal, primitive, rank


def det_by_permutations(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        # count inversions for the signature
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


def rank_by_gauss(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def test_det_small_cases():
    assert det([]) == 1
    assert det([[5]]) == 5
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    assert det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


@given(st.integers(2, 4), st.integers(0, 10**6))
def test_det_matches_permutation_expansion(n, seed):
    rng = random.Random(seed)
    rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
    assert det(rows) == det_by_permutations(rows)


@given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 10**6))
def test_rank_matches_gauss(n, m, seed):
    rng = random.Random(seed)
    rows = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(m)]
    assert rank(rows) == rank_by_gauss(rows)


def test_primitive():
    assert primitive((2, 4, 6)) == (1, 2, 3)
    assert primitive((0, 0, 5)) == (0, 0, 1)
    assert primitive((-3, 6)) == (-1, 2)
    assert primitive((7,)) == (1,)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_primitive_gcd_is_one(v):
    if all(x == 0 for x in v):
        return
    p = primitive(tuple(v))
    assert math.gcd(*p) == 1 if len(p) > 1 else abs(p[0]) == 1
    # same direction: v = g * p for positive integer g
    g = next(abs(a) // abs(b) for a, b in zip(v, p) if b != 0)
    assert tuple(g * x for x in p) == tuple(v)


def test_hyperplane_normal_orthogonality():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    nrm = hyperplane_normal(pts)
    assert nrm is not None
    for p in pts[1:]:
        diff = tuple(a - b for a, b in zip(p, pts[0]))
        assert sum(a * b for a, b in zip(nrm, diff)) == 0


def test_hyperplane_normal_degenerate():
    # affinely dependent points span no hyperplane
    assert hyperplane_normal([(0, 0, 0), (1, 1, 1), (2, 2, 2)]) is None
