"""Normality checking, witnesses, and the bound arithmetic."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from polynorm import (
    InvalidInputError,
    NotFullDimensionalError,
    build_polytope,
    d_of_p,
    default_cap,
    is_normal,
    is_normal_at_level,
    normality_bound,
    reeve_simplex,
    sumset_levels,
    verify_corollary,
    verify_witness,
)


def brute_sumset(points, m):
    return {
        tuple(sum(c) for c in zip(*combo))
        for combo in itertools.combinations_with_replacement(sorted(points), m)
    }


def random_polytope(rng, n, spread=3):
    while True:
        pts = [tuple(rng.randrange(-spread, spread + 1) for _ in range(n))
               for _ in range(n + 2)]
        try:
            return build_polytope(pts)
        except (InvalidInputError, NotFullDimensionalError):
            continue


def test_sumset_segment():
    assert sumset_levels({(0, 0), (1, 0)}, 2) == {(0, 0), (1, 0), (2, 0)}


def test_sumset_unit_square(unit_square):
    pts = unit_square.lattice_points()
    expected = {(x, y) for x in range(3) for y in range(3)}
    assert sumset_levels(pts, 2) == expected


def test_sumset_t2_misses_interior_point(t2):
    s = sumset_levels(t2.lattice_points(), 2)
    assert len(s) == 10
    assert (1, 1, 1) not in s
    assert s == brute_sumset(t2.lattice_points(), 2)


def test_sumset_rejects_bad_m():
    with pytest.raises(InvalidInputError):
        sumset_levels({(0, 0)}, 0)
    with pytest.raises(InvalidInputError):
        sumset_levels(set(), 2)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6), st.integers(2, 3))
def test_sumset_matches_brute_force(n, seed, m):
    rng = random.Random(seed)
    P = random_polytope(rng, n, spread=2)
    pts = P.lattice_points()
    assert sumset_levels(pts, m) == brute_sumset(pts, m)


def test_default_cap():
    assert default_cap(2) == 2
    assert default_cap(3) == 2
    assert default_cap(4) == 3
    assert default_cap(5) == 4


def test_is_normal_at_level_square(unit_square):
    assert is_normal_at_level(unit_square, 2) == (True, None)


def test_is_normal_at_level_t2(t2):
    ok, witness = is_normal_at_level(t2, 2)
    assert not ok
    assert witness == (1, 1, 1)


def test_is_normal_square(unit_square):
    rep = is_normal(unit_square, 4)
    assert rep.verdict == "normal-up-to-cap"
    assert rep.is_normal
    assert rep.cap_used == 4
    assert rep.levels_checked == (2, 3, 4)
    assert rep.witness is None


def test_is_normal_t2_witness(t2):
    rep = is_normal(t2)
    assert rep.verdict == "non-normal"
    assert not rep.is_normal
    assert rep.witness.level == 2
    assert rep.witness.point == (1, 1, 1)


def test_witness_reverification(t2):
    rep = is_normal(t2)
    assert verify_witness(t2, rep.witness.level, rep.witness.point)
    # a decomposable point is not a witness
    assert not verify_witness(t2, 2, (0, 0, 0))
    # a point outside 2*T2 is not a witness either
    assert not verify_witness(t2, 2, (9, 9, 9))


def test_witness_is_lex_smallest_missing(t2):
    _, witness = is_normal_at_level(t2, 2)
    missing = sorted(
        set(t2.dilate(2).lattice_points()) - brute_sumset(t2.lattice_points(), 2)
    )
    assert witness == missing[0]


def test_reeve_family_normality():
    for q in (2, 3, 4, 5):
        T = reeve_simplex(q)
        rep = is_normal(T)
        assert rep.verdict == "non-normal"
        assert rep.witness.level == 2
        assert rep.witness.point == (1, 1, 1)
        # the guaranteed range: 2T and 3T are normal at cap 4
        assert is_normal(T.dilate(2), 4).is_normal
        assert is_normal(T.dilate(3), 4).is_normal


def test_dimension_two_always_normal():
    rng = random.Random(20260815)
    for _ in range(25):
        P = random_polytope(rng, 2, spread=4)
        assert is_normal(P, 4).is_normal


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_cap_does_not_change_dim3_verdicts(seed):
    rng = random.Random(seed)
    P = random_polytope(rng, 3, spread=2)
    assert is_normal(P, 2).is_normal == is_normal(P, 5).is_normal


def test_normality_bound_t2(t2):
    b = normality_bound(t2)
    assert (b.n, b.d) == (3, 1)
    assert b.corollary_bound == 2
    assert b.classical_n0_bound == 2
    assert b.np_bound(0) == b.classical_n0_bound
    assert [b.np_bound(p) for p in range(4)] == [2, 3, 4, 5]


def test_normality_bound_delta3(delta3):
    b = normality_bound(delta3)
    assert (b.n, b.d) == (3, 3)
    assert b.corollary_bound == 1  # max{n - d, 1} clamps at 1


def test_corollary_bound_dim2(unit_square, big_triangle):
    assert normality_bound(unit_square).corollary_bound == 1
    assert normality_bound(big_triangle).corollary_bound == 2


def test_np_bound_rejects_negative_p(t2):
    with pytest.raises(InvalidInputError):
        normality_bound(t2).np_bound(-1)


def test_verify_corollary_t2(t2):
    rec = verify_corollary(t2, extra_levels=2)
    assert rec.n == 3 and rec.d == 1
    assert rec.corollary_bound == 2
    levels = [lv for lv, _ in rec.levels]
    assert levels == [2, 3, 4]
    assert rec.passed
    assert rec.violations == ()


def test_verify_corollary_json_round_trip(unit_square):
    rec = verify_corollary(unit_square, extra_levels=1)
    data = rec.to_jsonable()
    assert data["corollary_bound"] == 1
    assert [lv["ell"] for lv in data["levels"]] == [1, 2]
    assert all(lv["verdict"] == "normal-up-to-cap" for lv in data["levels"])
    assert data["violations"] == []
    assert data["passed"] is True


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_corollary_holds_on_random_polytopes(n, seed):
    # every dilate from max{n-d(P),1} on is normal up to the default cap
    rng = random.Random(seed)
    P = random_polytope(rng, n, spread=2)
    assert verify_corollary(P, extra_levels=1).passed
