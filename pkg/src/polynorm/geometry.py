"""Lattice polytopes in Z^n with exact facet descriptions.

A polytope is built from an explicit list of integer points and is required
to be full-dimensional in its ambient space. Facets are found by exhaustive
hyperplane enumeration over n-point subsets, which is entirely adequate at
the intended scale (dimension <= 4, a few dozen points) and has no numerical
failure modes.

Lattice point enumeration walks a grid over the first n-1 coordinates and
solves the last coordinate range per facet with exact integer ceil/floor
division. The hot path runs on int64 numpy arrays guarded by a computed
overflow bound; inputs too large for that fall back to a pure Python scan,
so results are exact either way.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import json
import operator
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NotFullDimensionalError
from .linalg import hyperplane_normal, rank

LatticePoint = tuple[int, ...]

# int64 is safe while every intermediate stays below this; checked per scan.
_NP_SAFE_LIMIT = 2**61


def _as_point(obj, n: int | None = None) -> LatticePoint:
    if isinstance(obj, (str, bytes)) or not hasattr(obj, "__iter__"):
        raise InvalidInputError(f"not a lattice point: {obj!r}")
    try:
        pt = tuple(operator.index(x) for x in obj)
    except TypeError:
        raise InvalidInputError(f"non-integer coordinate in {obj!r}") from None
    if n is not None and len(pt) != n:
        raise InvalidInputError(
            f"expected a point of dimension {n}, got {len(pt)}: {obj!r}"
        )
    return pt


def _as_points(objs) -> list[LatticePoint]:
    pts = [_as_point(p) for p in objs]
    if not pts:
        raise InvalidInputError("need at least one point")
    n = len(pts[0])
    if n == 0:
        raise InvalidInputError("points must have at least one coordinate")
    for p in pts:
        if len(p) != n:
            raise InvalidInputError("points have mixed dimensions")
    return pts


def affine_dim(points) -> int:
    """Dimension of the affine hull of a nonempty set of integer points."""
    pts = _as_points(points)
    base = pts[0]
    diffs = [[p[j] - base[j] for j in range(len(base))] for p in pts[1:]]
    if not diffs:
        return 0
    return rank(diffs)


@dataclass(frozen=True, order=True)
class HalfSpace:
    """Closed half-space {x : <normal, x> >= offset} with primitive normal."""

    normal: LatticePoint
    offset: int

    def evaluate(self, point) -> int:
        """Slack at the point; >= 0 inside, == 0 on the hyperplane."""
        return sum(a * x for a, x in zip(self.normal, point)) - self.offset


class Polytope:
    """Full-dimensional lattice polytope, immutable once built.

    Use build_polytope(); the constructor trusts its arguments.
    """

    __slots__ = ("dim", "vertices", "facets", "_hash", "_np_ok", "_A", "_b", "_lp_cache")

    def __init__(self, dim: int, vertices: tuple[LatticePoint, ...],
                 facets: tuple[HalfSpace, ...]):
        self.dim = dim
        self.vertices = vertices
        self.facets = facets
        self._hash = hash((dim, vertices))
        biggest = max(
            max(abs(x) for x in h.normal + (h.offset,)) for h in facets
        )
        coord = max(max(abs(x) for x in v) for v in vertices)
        self._np_ok = biggest < _NP_SAFE_LIMIT and coord < _NP_SAFE_LIMIT
        if self._np_ok:
            self._A = np.array([h.normal for h in facets], dtype=np.int64)
            self._b = np.array([h.offset for h in facets], dtype=np.int64)
        else:
            self._A = None
            self._b = None
        self._lp_cache = {}

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)})"

    @property
    def polytope_id(self) -> str:
        """Hex digest of the canonical vertex list; stable across runs."""
        blob = json.dumps([list(v) for v in self.vertices], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def bounding_box(self) -> tuple[LatticePoint, LatticePoint]:
        n = self.dim
        lo = tuple(min(v[j] for v in self.vertices) for j in range(n))
        hi = tuple(max(v[j] for v in self.vertices) for j in range(n))
        return lo, hi

    def contains(self, point, interior: bool = False) -> bool:
        """Exact membership test; interior=True uses strict inequalities."""
        pt = _as_point(point, self.dim)
        if interior:
            return all(h.evaluate(pt) > 0 for h in self.facets)
        return all(h.evaluate(pt) >= 0 for h in self.facets)

    def dilate(self, k: int) -> "Polytope":
        """The dilate kP. Facet normals carry over; offsets scale by k."""
        k = operator.index(k)
        if k < 1:
            raise InvalidInputError(f"dilation factor must be >= 1, got {k}")
        if k == 1:
            return self
        verts = tuple(tuple(k * x for x in v) for v in self.vertices)
        facets = tuple(HalfSpace(h.normal, k * h.offset) for h in self.facets)
        return Polytope(self.dim, verts, facets)

    def lattice_points(self, interior: bool = False) -> list[LatticePoint]:
        """All lattice points of the polytope (or its interior), lex sorted."""
        key = bool(interior)
        if key not in self._lp_cache:
            pts = [tuple(int(x) for x in row)
                   for row in scaled_points_array(self, 1, interior)]
            self._lp_cache[key] = tuple(pts)
        return list(self._lp_cache[key])


def build_polytope(points) -> Polytope:
    """Construct the convex hull of integer points as a Polytope.

    Raises NotFullDimensionalError when the points do not span the ambient
    space, InvalidInputError on malformed input.
    """
    pts = sorted(set(_as_points(points)))
    n = len(pts[0])
    adim = affine_dim(pts)
    if adim != n:
        raise NotFullDimensionalError(adim, n)

    # Every facet hyperplane passes through n affinely independent input
    # points, so scanning all n-subsets finds each of them at least once.
    seen: dict[tuple[LatticePoint, int], None] = {}
    for subset in itertools.combinations(pts, n):
        normal = hyperplane_normal(list(subset))
        if normal is None:
            continue
        offset = sum(a * x for a, x in zip(normal, subset[0]))
        lower = upper = False
        for p in pts:
            val = sum(a * x for a, x in zip(normal, p)) - offset
            if val > 0:
                lower = True
            elif val < 0:
                upper = True
            if lower and upper:
                break
        if lower and upper:
            continue  # points on both sides: not a supporting hyperplane
        if upper:
            normal = tuple(-a for a in normal)
            offset = -offset
        seen[(normal, offset)] = None

    facets = tuple(sorted(HalfSpace(nrm, off) for (nrm, off) in seen),)

    vertices = []
    for p in pts:
        tight = [list(h.normal) for h in facets if h.evaluate(p) == 0]
        if tight and rank(tight) == n:
            vertices.append(p)
    return Polytope(n, tuple(vertices), facets)


# -- lattice point enumeration ------------------------------------------------

def _scan_params(P: Polytope, scale: int, interior: bool):
    """Shared setup: box, facet rows, and effective offsets (strict via +1)."""
    n = P.dim
    lo, hi = P.bounding_box()
    lo = [scale * x for x in lo]
    hi = [scale * x for x in hi]
    rows = [(h.normal, scale * h.offset + (1 if interior else 0)) for h in P.facets]
    return n, lo, hi, rows


def _np_scan_safe(P: Polytope, scale: int, interior: bool) -> bool:
    if not P._np_ok:
        return False
    n, lo, hi, rows = _scan_params(P, scale, interior)
    worst = 0
    for normal, beff in rows:
        reach = sum(abs(a) * max(abs(l), abs(h)) for a, l, h in zip(normal, lo, hi))
        worst = max(worst, reach + abs(beff))
    return 4 * worst < _NP_SAFE_LIMIT


def _prefix_grid(lo, hi, start0, stop0):
    """Lex-ordered integer grid over the box, axis 0 restricted to [start0, stop0)."""
    axes = [np.arange(start0, stop0, dtype=np.int64)]
    axes += [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo[1:], hi[1:])]
    if not axes:
        return np.zeros((1, 0), dtype=np.int64)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, len(axes))


def _np_slabs(P: Polytope, scale: int, interior: bool, chunk_rows: int = 1 << 20):
    """Yield lex-ordered (prefixes, lo_last, counts) triples, feasible rows only."""
    n, lo, hi, rows = _scan_params(P, scale, interior)
    A = np.array([r[0] for r in rows], dtype=np.int64)
    beff = np.array([r[1] for r in rows], dtype=np.int64)
    a_last = A[:, n - 1]
    A_pre = A[:, : n - 1]
    zero_rows = a_last == 0
    pos_rows = a_last > 0
    neg_rows = a_last < 0

    plo, phi = lo[:-1], hi[:-1]
    inner = 1
    for l, h in zip(plo[1:], phi[1:]):
        inner *= h - l + 1
    if n == 1:
        starts = [(0, 1)]
        plo = [0]
        phi = [0]
    else:
        step = max(1, chunk_rows // max(inner, 1))
        starts = []
        a = plo[0] if plo else 0
        while a <= phi[0]:
            b = min(a + step - 1, phi[0])
            starts.append((a, b + 1))
            a = b + 1
        if not starts:
            return

    for s0, s1 in starts:
        if n == 1:
            prefixes = np.zeros((1, 0), dtype=np.int64)
        else:
            prefixes = _prefix_grid(plo, phi, s0, s1)
        r = beff[None, :] - prefixes @ A_pre.T  # required a_last * x >= r
        feas = np.ones(len(prefixes), dtype=bool)
        if zero_rows.any():
            feas &= (r[:, zero_rows] <= 0).all(axis=1)
        lo_last = np.full(len(prefixes), lo[n - 1], dtype=np.int64)
        hi_last = np.full(len(prefixes), hi[n - 1], dtype=np.int64)
        if pos_rows.any():
            a = a_last[pos_rows][None, :]
            cand = (r[:, pos_rows] + a - 1) // a
            lo_last = np.maximum(lo_last, cand.max(axis=1))
        if neg_rows.any():
            a = a_last[neg_rows][None, :]
            cand = r[:, neg_rows] // a  # floor division, a < 0
            hi_last = np.minimum(hi_last, cand.min(axis=1))
        counts = hi_last - lo_last + 1
        feas &= counts > 0
        if not feas.any():
            continue
        yield prefixes[feas], lo_last[feas], counts[feas]


def _py_scan(P: Polytope, scale: int, interior: bool):
    """Pure Python reference scan; exact for arbitrarily large coordinates."""
    n, lo, hi, rows = _scan_params(P, scale, interior)
    prefix_ranges = [range(l, h + 1) for l, h in zip(lo[:-1], hi[:-1])]
    for prefix in itertools.product(*prefix_ranges):
        lo_last, hi_last = lo[n - 1], hi[n - 1]
        ok = True
        for normal, beff in rows:
            a = normal[n - 1]
            r = beff - sum(c * x for c, x in zip(normal[: n - 1], prefix))
            if a == 0:
                if r > 0:
                    ok = False
                    break
            elif a > 0:
                lo_last = max(lo_last, -((-r) // a))  # ceil(r / a)
            else:
                hi_last = min(hi_last, r // a)  # floor(r / a)
        if ok and lo_last <= hi_last:
            yield prefix, lo_last, hi_last - lo_last + 1


@functools.lru_cache(maxsize=65536)
def scaled_count(P: Polytope, scale: int = 1, interior: bool = False) -> int:
    """#(scale * P intersect Z^n), or the interior count. Exact."""
    if scale < 1:
        raise InvalidInputError(f"scale must be >= 1, got {scale}")
    if _np_scan_safe(P, scale, interior):
        total = 0
        for _, _, counts in _np_slabs(P, scale, interior):
            total += int(counts.sum())
        return total
    return sum(cnt for _, _, cnt in _py_scan(P, scale, interior))


def iter_scaled_slabs(P: Polytope, scale: int = 1, interior: bool = False,
                      chunk_rows: int = 1 << 20):
    """Yield lex-ordered int64 arrays of lattice points of scale*P in chunks."""
    if scale < 1:
        raise InvalidInputError(f"scale must be >= 1, got {scale}")
    n = P.dim
    if _np_scan_safe(P, scale, interior):
        for prefixes, lo_last, counts in _np_slabs(P, scale, interior, chunk_rows):
            total = int(counts.sum())
            out = np.empty((total, n), dtype=np.int64)
            out[:, : n - 1] = np.repeat(prefixes, counts, axis=0)
            ends = np.cumsum(counts)
            within = np.arange(total, dtype=np.int64) - np.repeat(ends - counts, counts)
            out[:, n - 1] = np.repeat(lo_last, counts) + within
            yield out
        return
    # Exact fallback; yields small batches to keep a uniform interface.
    batch = []
    for prefix, lo_last, cnt in _py_scan(P, scale, interior):
        for x in range(lo_last, lo_last + cnt):
            batch.append(prefix + (x,))
            if len(batch) >= chunk_rows:
                yield np.array(batch, dtype=object).reshape(len(batch), n)
                batch = []
    if batch:
        yield np.array(batch, dtype=object).reshape(len(batch), n)


def scaled_points_array(P: Polytope, scale: int = 1, interior: bool = False):
    """All lattice points of scale*P as one lex-ordered array."""
    slabs = list(iter_scaled_slabs(P, scale, interior))
    if not slabs:
        return np.empty((0, P.dim), dtype=np.int64)
    return np.concatenate(slabs, axis=0)
