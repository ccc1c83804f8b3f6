"""Normality testing with witnesses, plus dilation and N_p bound arithmetic.

A polytope P is normal when every lattice point of mP splits into a sum of
m lattice points of P, for every m >= 1. Checking levels in ascending order
buys a large shortcut: write T_1 = P cap Z^n and T_m = {z in mP cap Z^n :
z - a in T_{m-1} for some a in P cap Z^n}. By induction T_m is exactly the
m-fold sumset of P cap Z^n, and whenever levels 2..m-1 all passed, T_{m-1}
is all of (m-1)P cap Z^n, so the level-m test reduces to facet arithmetic.
The checks below exploit that identity; semantics match the sumset
definition exactly.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass

import numpy as np

from .counting import d_of_p
from .errors import InvalidInputError
from .geometry import (
    LatticePoint,
    Polytope,
    _as_point,
    _np_scan_safe,
    iter_scaled_slabs,
    scaled_points_array,
)


def default_cap(n: int) -> int:
    """Default highest sumset level checked: n-1, but never below 2."""
    return max(n - 1, 2)


def sumset_levels(points, m: int) -> set[LatticePoint]:
    """The m-fold sumset {p_1 + ... + p_m : p_i in points}.

    Direct iterative computation; size grows quickly, intended for small
    inputs and cross-checks. The level checks in is_normal use an
    equivalent formulation that never materializes the sumset.
    """
    m = operator.index(m)
    if m < 1:
        raise InvalidInputError(f"sumset level must be >= 1, got {m}")
    pts = [_as_point(p) for p in points]
    if not pts:
        raise InvalidInputError("need a nonempty point set")
    n = len(pts[0])
    for p in pts:
        if len(p) != n:
            raise InvalidInputError("points have mixed dimensions")
    base = set(pts)
    current = set(base)
    for _ in range(m - 1):
        current = {
            tuple(x + y for x, y in zip(p, q)) for p in current for q in base
        }
    return current


@dataclass(frozen=True)
class NormalityWitness:
    """A lattice point of level*P that is not a sum of `level` points of P."""

    level: int
    point: LatticePoint

    def to_jsonable(self) -> dict:
        return {"level": self.level, "point": list(self.point)}


@dataclass(frozen=True)
class NormalityReport:
    polytope_id: str
    cap_used: int
    levels_checked: tuple[int, ...]
    verdict: str  # "normal-up-to-cap" | "non-normal"
    witness: NormalityWitness | None

    @property
    def is_normal(self) -> bool:
        return self.verdict == "normal-up-to-cap"

    def to_jsonable(self) -> dict:
        return {
            "polytope_id": self.polytope_id,
            "cap_used": self.cap_used,
            "levels_checked": list(self.levels_checked),
            "verdict": self.verdict,
            "witness": self.witness.to_jsonable() if self.witness else None,
        }


# -- level checks -------------------------------------------------------------

def _probe_deltas(n: int):
    """Candidate offsets around z // m, nearest first."""
    near = list(itertools.product((0, 1), repeat=n))
    ring = sorted(
        (d for d in itertools.product((-1, 0, 1, 2), repeat=n)
         if not all(x in (0, 1) for x in d)),
        key=lambda d: (max(abs(x) for x in d), sum(abs(x) for x in d), d),
    )
    return near + ring


def _missing_at_level_np(P: Polytope, m: int, collect_all: bool):
    """Missing points of level m assuming T_{m-1} = (m-1)P cap Z^n.

    Returns a lex-ordered list; with collect_all=False it stops after the
    first slab that contains a missing point (enough for the lex-min).

    z decomposes iff some lattice point a of P has z - a in (m-1)P. The
    facet values of z and of z // m are computed once per slab; each probe
    offset then costs only adds and compares. The rare stragglers get an
    exhaustive scan over all of P cap Z^n.
    """
    A = P._A
    b = P._b
    bp = (m - 1) * b
    A_pts = scaled_points_array(P, 1)
    deltas = np.array(_probe_deltas(P.dim), dtype=np.int64)
    dA = deltas @ A.T
    missing: list[LatticePoint] = []
    for Z in iter_scaled_slabs(P, m, chunk_rows=1 << 18):
        zA = Z @ A.T
        aA = (Z // m) @ A.T
        alive = np.arange(len(Z))
        for t in range(len(dA)):
            cand = aA + dA[t]
            good = ((cand >= b) & (zA - cand >= bp)).all(axis=1)
            if good.any():
                keep = ~good
                alive = alive[keep]
                aA = aA[keep]
                zA = zA[keep]
            if not len(alive):
                break
        for i in alive:
            diffs = Z[i][None, :] - A_pts
            if not (diffs @ A.T >= bp).all(axis=1).any():
                missing.append(tuple(int(x) for x in Z[i]))
        if missing and not collect_all:
            return missing
    return missing


def _contains_scaled(P: Polytope, scale: int, pt) -> bool:
    return all(
        sum(a * x for a, x in zip(h.normal, pt)) >= scale * h.offset
        for h in P.facets
    )


def _missing_at_level_py(P: Polytope, m: int, prev_set, collect_all: bool):
    """Pure Python variant; prev_set None means T_{m-1} is complete."""
    A_list = P.lattice_points()
    deltas = _probe_deltas(P.dim)

    def decomposes(z):
        if prev_set is None:
            for delta in deltas:
                a = tuple(c // m + d for c, d in zip(z, delta))
                if _contains_scaled(P, 1, a) and _contains_scaled(
                        P, m - 1, tuple(x - y for x, y in zip(z, a))):
                    return True
            return any(
                _contains_scaled(P, m - 1, tuple(x - y for x, y in zip(z, a)))
                for a in A_list
            )
        return any(
            tuple(x - y for x, y in zip(z, a)) in prev_set for a in A_list
        )

    missing = []
    for slab in iter_scaled_slabs(P, m):
        for row in slab:
            z = tuple(int(x) for x in row)
            if not decomposes(z):
                missing.append(z)
        if missing and not collect_all:
            return missing
    return missing


def _missing_at_level(P: Polytope, m: int, prev_set=None, collect_all=False):
    if prev_set is None and _np_scan_safe(P, m, False):
        return _missing_at_level_np(P, m, collect_all)
    return _missing_at_level_py(P, m, prev_set, collect_all)


def _tset_step(P: Polytope, k: int, prev_complete: bool, prev_set):
    """Advance the decomposable-set ladder from level k-1 to level k."""
    missing = _missing_at_level(
        P, k, None if prev_complete else prev_set, collect_all=True
    )
    if not missing:
        if prev_complete:
            return True, None
        # T_k may still be a strict subset only via missing points; none
        # are missing, so T_k is all of kP.
        return True, None
    bad = set(missing)
    tset = {
        tuple(int(x) for x in row)
        for slab in iter_scaled_slabs(P, k)
        for row in slab
    } - bad
    return False, tset


def is_normal_at_level(P: Polytope, m: int) -> tuple[bool, LatticePoint | None]:
    """Exact level-m test: lattice_points(mP) inside the m-fold sumset.

    Intermediate level failures are carried through the decomposable-set
    ladder, so the answer matches the sumset definition even when some
    level below m already fails.
    """
    m = operator.index(m)
    if m < 1:
        raise InvalidInputError(f"level must be >= 1, got {m}")
    if m == 1:
        return True, None
    complete, tset = True, None
    for k in range(2, m):
        complete, tset = _tset_step(P, k, complete, tset)
    missing = _missing_at_level(P, m, None if complete else tset)
    if missing:
        return False, missing[0]
    return True, None


def is_normal(P: Polytope, cap: int | None = None) -> NormalityReport:
    """Check levels m = 2..cap in order; stop at the first failure.

    cap defaults to max(dim-1, 2). The verdict is explicitly capped:
    "normal-up-to-cap" never claims normality at uncapped levels.
    """
    if cap is None:
        cap = default_cap(P.dim)
    cap = operator.index(cap)
    if cap < 2:
        raise InvalidInputError(f"normality cap must be >= 2, got {cap}")
    checked = []
    for m in range(2, cap + 1):
        checked.append(m)
        # Levels below m all passed, so the complete-previous fast path applies.
        missing = _missing_at_level(P, m)
        if missing:
            return NormalityReport(
                polytope_id=P.polytope_id,
                cap_used=cap,
                levels_checked=tuple(checked),
                verdict="non-normal",
                witness=NormalityWitness(m, missing[0]),
            )
    return NormalityReport(
        polytope_id=P.polytope_id,
        cap_used=cap,
        levels_checked=tuple(checked),
        verdict="normal-up-to-cap",
        witness=None,
    )


def verify_witness(P: Polytope, level: int, point) -> bool:
    """Independently re-verify a non-normality witness.

    True iff point lies in level*P and is not a sum of `level` lattice
    points of P, decided by exhaustive search with memoization.
    """
    level = operator.index(level)
    if level < 2:
        raise InvalidInputError(f"witness level must be >= 2, got {level}")
    z = _as_point(point, P.dim)
    if not _contains_scaled(P, level, z):
        return False
    A_list = P.lattice_points()
    memo: dict = {}

    def decomposable(w, k):
        if k == 1:
            return _contains_scaled(P, 1, w)
        key = (w, k)
        if key in memo:
            return memo[key]
        res = False
        for a in A_list:
            rest = tuple(x - y for x, y in zip(w, a))
            # sums of k-1 points of P always lie in (k-1)P; prune by that
            if _contains_scaled(P, k - 1, rest) and decomposable(rest, k - 1):
                res = True
                break
        memo[key] = res
        return res

    return not decomposable(z, level)


# -- bound arithmetic ----------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """The dilation thresholds attached to P: d(P)-based and classical."""

    n: int
    d: int
    corollary_bound: int  # max(n - d, 1): every dilate >= this is normal
    classical_n0_bound: int  # n - 1 for n >= 2, else 1

    def np_bound(self, p: int) -> int:
        """Dilation level from which property N_p holds: n - 1 + p."""
        p = operator.index(p)
        if p < 0:
            raise InvalidInputError(f"p must be >= 0, got {p}")
        return self.n - 1 + p

    def to_jsonable(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "corollary_bound": self.corollary_bound,
            "classical_n0_bound": self.classical_n0_bound,
        }


def normality_bound(P: Polytope) -> BoundReport:
    """Compute d(P) and fill in the dilation bound fields."""
    n = P.dim
    d = d_of_p(P).d
    return BoundReport(
        n=n,
        d=d,
        corollary_bound=max(n - d, 1),
        classical_n0_bound=n - 1 if n >= 2 else 1,
    )


@dataclass(frozen=True)
class CorollaryRecord:
    """Outcome of the guaranteed-normality sweep over dilates of P.

    Every dilate ell*P with ell >= corollary_bound = max(n - d(P), 1) must
    be normal; a non-normal verdict in that range signals a bug, not a
    mathematical discovery, and lands in `violations`.
    """

    polytope_id: str
    n: int
    d: int
    corollary_bound: int
    extra_levels: int
    levels: tuple[tuple[int, NormalityReport], ...]
    violations: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_jsonable(self) -> dict:
        return {
            "polytope_id": self.polytope_id,
            "n": self.n,
            "d": self.d,
            "corollary_bound": self.corollary_bound,
            "extra_levels": self.extra_levels,
            "levels": [
                {
                    "ell": ell,
                    "verdict": rep.verdict,
                    "witness": rep.witness.to_jsonable() if rep.witness else None,
                }
                for ell, rep in self.levels
            ],
            "violations": list(self.violations),
            "passed": self.passed,
        }


def verify_corollary(P: Polytope, extra_levels: int = 0,
                     cap: int | None = None) -> CorollaryRecord:
    """Check normality of ell*P for ell = bound .. bound + extra_levels."""
    extra_levels = operator.index(extra_levels)
    if extra_levels < 0:
        raise InvalidInputError(f"extra_levels must be >= 0, got {extra_levels}")
    bounds = normality_bound(P)
    lo = bounds.corollary_bound
    levels = []
    violations = []
    for ell in range(lo, lo + extra_levels + 1):
        rep = is_normal(P.dilate(ell), cap)
        levels.append((ell, rep))
        if not rep.is_normal:
            violations.append(ell)
    return CorollaryRecord(
        polytope_id=P.polytope_id,
        n=bounds.n,
        d=bounds.d,
        corollary_bound=lo,
        extra_levels=extra_levels,
        levels=tuple(levels),
        violations=tuple(violations),
    )


def autoregularity_formula(P: Polytope) -> int:
    """n - 1 - d(P); may be negative and is returned unclamped."""
    return P.dim - 1 - d_of_p(P).d
