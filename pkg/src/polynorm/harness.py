"""Seeded corpus generation, single-polytope analysis, batch verification.

Corpus generation must be bit-reproducible: it uses random.Random with
randrange only (stable across CPython versions) and consumes draws in a
fixed order, including for rejected samples. Batch reports carry no
timestamps and sort all set-like data, so identical inputs give identical
bytes.
"""

from __future__ import annotations

import operator
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cohomology import autoregularity_from_definition, np_bound_from_regularity
from .counting import (
    EhrhartPolynomial,
    d_of_p,
    ehrhart_polynomial,
    extrapolation_check,
    reciprocity_check,
)
from .errors import CorpusGenerationError, InvalidInputError, NotFullDimensionalError
from .geometry import LatticePoint, Polytope, build_polytope
from .normality import (
    CorollaryRecord,
    NormalityReport,
    default_cap,
    is_normal,
    normality_bound,
    verify_corollary,
    verify_witness,
)
from .syzygy import N1ProbeReport, n1_probe

_RESAMPLE_LIMIT = 1000


@dataclass(frozen=True)
class CorpusSpec:
    """Deterministic recipe for a random polytope corpus."""

    seed: int
    dims: tuple[int, ...]
    coord_bound: int
    count_per_dim: int
    vertex_candidates: int

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError(f"seed must fit in 64 bits, got {self.seed}")
        if not self.dims:
            raise InvalidInputError("dims must be nonempty")
        if any(n not in (1, 2, 3, 4) for n in self.dims):
            raise InvalidInputError(f"dims must lie in 1..4, got {self.dims}")
        if not 1 <= self.coord_bound <= 8:
            raise InvalidInputError(
                f"coord_bound must lie in 1..8, got {self.coord_bound}"
            )
        if self.count_per_dim < 0:
            raise InvalidInputError("count_per_dim must be >= 0")
        if self.vertex_candidates < max(self.dims) + 1:
            raise InvalidInputError(
                f"vertex_candidates must be >= max dim + 1 = {max(self.dims) + 1}"
            )

    @classmethod
    def from_jsonable(cls, obj) -> "CorpusSpec":
        if not isinstance(obj, dict):
            raise InvalidInputError("corpus spec must be a JSON object")
        known = {"seed", "dims", "coord_bound", "count_per_dim", "vertex_candidates"}
        extra = set(obj) - known
        if extra:
            raise InvalidInputError(f"unknown corpus spec fields: {sorted(extra)}")
        missing = known - set(obj)
        if missing:
            raise InvalidInputError(f"corpus spec missing fields: {sorted(missing)}")
        try:
            return cls(
                seed=operator.index(obj["seed"]),
                dims=tuple(operator.index(x) for x in obj["dims"]),
                coord_bound=operator.index(obj["coord_bound"]),
                count_per_dim=operator.index(obj["count_per_dim"]),
                vertex_candidates=operator.index(obj["vertex_candidates"]),
            )
        except TypeError:
            raise InvalidInputError("corpus spec fields must be integers") from None

    def to_jsonable(self) -> dict:
        return {
            "seed": self.seed,
            "dims": list(self.dims),
            "coord_bound": self.coord_bound,
            "count_per_dim": self.count_per_dim,
            "vertex_candidates": self.vertex_candidates,
        }


DEFAULT_CORPUS_SPEC = CorpusSpec(
    seed=271828,
    dims=(2, 3, 4),
    coord_bound=4,
    count_per_dim=100,
    vertex_candidates=6,
)


def generate_corpus(spec: CorpusSpec) -> list[Polytope]:
    """Sampled full-dimensional polytopes, in a fixed deterministic order."""
    rng = random.Random(spec.seed)
    out = []
    for n in spec.dims:
        for _ in range(spec.count_per_dim):
            for _attempt in range(_RESAMPLE_LIMIT):
                pts = [
                    tuple(rng.randrange(spec.coord_bound + 1) for _ in range(n))
                    for _ in range(spec.vertex_candidates)
                ]
                try:
                    out.append(build_polytope(pts))
                except NotFullDimensionalError:
                    continue
                break
            else:
                raise CorpusGenerationError(
                    f"no full-dimensional polytope in {_RESAMPLE_LIMIT} tries "
                    f"(dim {n}, bound {spec.coord_bound}, "
                    f"{spec.vertex_candidates} candidates)"
                )
    return out


REEVE_RANGE = (2, 3, 4, 5)


def reeve_simplex(q: int) -> Polytope:
    """conv{0, e1, e2, (1,1,q)}; non-normal for every q >= 2."""
    q = operator.index(q)
    if q < 1:
        raise InvalidInputError(f"Reeve parameter must be >= 1, got {q}")
    return build_polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, q)])


@dataclass(frozen=True)
class AnalysisRecord:
    """Everything the toolkit knows about one polytope, plus self-checks."""

    polytope_id: str
    vertices: tuple[LatticePoint, ...]
    n: int
    ehrhart: EhrhartPolynomial
    d: int
    codegree: int
    corollary_bound: int
    classical_n0_bound: int
    autoregularity: int
    np_bounds: tuple[tuple[int, int], ...]  # (p, level) for p = 0..3
    normality: NormalityReport
    checks: dict

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def to_jsonable(self) -> dict:
        return {
            "polytope_id": self.polytope_id,
            "vertices": [list(v) for v in self.vertices],
            "n": self.n,
            "ehrhart": self.ehrhart.to_jsonable(),
            "d": self.d,
            "codegree": self.codegree,
            "corollary_bound": self.corollary_bound,
            "classical_n0_bound": self.classical_n0_bound,
            "autoregularity": self.autoregularity,
            "np_bounds": [[p, lvl] for p, lvl in self.np_bounds],
            "normality": self.normality.to_jsonable(),
            "checks": dict(sorted(self.checks.items())),
        }


def analyze(P: Polytope, cap: int | None = None) -> AnalysisRecord:
    """Run counting, normality, and regularity on P and cross-check them."""
    profile = d_of_p(P)
    bounds = normality_bound(P)
    auto_def = autoregularity_from_definition(P)
    report = is_normal(P, cap)
    checks = {
        "codegree_consistent": profile.codegree == profile.d + 1,
        "autoregularity_consistent": auto_def == P.dim - 1 - profile.d,
        "corollary_bound_consistent":
            bounds.corollary_bound == max(P.dim - profile.d, 1),
        "witness_verified":
            verify_witness(P, report.witness.level, report.witness.point)
            if report.witness else True,
    }
    return AnalysisRecord(
        polytope_id=P.polytope_id,
        vertices=P.vertices,
        n=P.dim,
        ehrhart=ehrhart_polynomial(P),
        d=profile.d,
        codegree=profile.codegree,
        corollary_bound=bounds.corollary_bound,
        classical_n0_bound=bounds.classical_n0_bound,
        autoregularity=auto_def,
        np_bounds=tuple((p, np_bound_from_regularity(P, p)) for p in range(4)),
        normality=report,
        checks=checks,
    )


def thread_count(requested: int | None = None) -> int:
    """Resolve the worker count: argument, else POLYNORM_THREADS env, else 1.

    0 means auto (one per CPU, capped at 32).
    """
    if requested is None:
        raw = os.environ.get("POLYNORM_THREADS")
        if raw is None or raw.strip() == "":
            return 1
        try:
            requested = int(raw)
        except ValueError:
            raise InvalidInputError(
                f"POLYNORM_THREADS must be an integer, got {raw!r}"
            ) from None
    if requested < 0:
        raise InvalidInputError(f"thread count must be >= 0, got {requested}")
    if requested == 0:
        return min(32, os.cpu_count() or 1)
    return requested


def run_verification(spec: CorpusSpec, extra_levels: int = 2, n1_cap: int = 4,
                     cap: int | None = None, include_fixtures: bool = True,
                     threads: int | None = None) -> dict:
    """Analyze and verify a whole corpus; returns a JSON-ready report.

    Per polytope: analyze (with its internal consistency checks), the
    guaranteed-normality sweep, Ehrhart reciprocity and extrapolation, and
    for dims <= 3 the quadratic-generation probe at ell = n. Reeve
    simplices ride along as fixtures whenever dimension 3 is requested.
    Violations are report content, never exceptions.
    """
    extra_levels = operator.index(extra_levels)
    if extra_levels < 0:
        raise InvalidInputError(f"extra_levels must be >= 0, got {extra_levels}")
    corpus = generate_corpus(spec)
    items: list[tuple[str, str | None, Polytope]] = [
        ("corpus", None, P) for P in corpus
    ]
    if include_fixtures and 3 in spec.dims:
        for q in REEVE_RANGE:
            items.append(("fixture", f"reeve-{q}", reeve_simplex(q)))

    def check_one(item):
        kind, label, P = item
        record = analyze(P, cap)
        sweep = verify_corollary(P, extra_levels, cap)
        ehrhart_ok = reciprocity_check(P) and extrapolation_check(P)
        probe = n1_probe(P, P.dim, n1_cap) if P.dim <= 3 else None
        return kind, label, P, record, sweep, ehrhart_ok, probe

    workers = thread_count(threads)
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check_one, items))
    else:
        results = [check_one(item) for item in items]

    polytopes = []
    violations = []
    reciprocity_failures = []
    consistency_failures = []
    n1_disconnected = []
    for index, (kind, label, P, record, sweep, ehrhart_ok, probe) in enumerate(results):
        polytopes.append({
            "index": index,
            "kind": kind,
            "label": label,
            "dim": P.dim,
            "analysis": record.to_jsonable(),
            "corollary": sweep.to_jsonable(),
            "ehrhart_ok": ehrhart_ok,
            "n1": probe.to_jsonable() if probe else None,
        })
        if not sweep.passed:
            violations.append(sweep.to_jsonable())
        if not ehrhart_ok:
            reciprocity_failures.append(P.polytope_id)
        if not record.consistent:
            consistency_failures.append(P.polytope_id)
        if probe is not None and not probe.connected:
            n1_disconnected.append(P.polytope_id)

    summary = {
        "polytope_count": len(polytopes),
        "corollary_violations": violations,
        "reciprocity_failures": reciprocity_failures,
        "consistency_failures": consistency_failures,
        "n1_disconnected": n1_disconnected,
        # a disconnection at ell = n contradicts the ell >= n-1+1 guarantee,
        # so it fails the batch just like a sweep violation
        "all_passed": not (violations or reciprocity_failures
                           or consistency_failures or n1_disconnected),
    }
    return {
        "spec": spec.to_jsonable(),
        "parameters": {
            "extra_levels": extra_levels,
            "n1_cap": n1_cap,
            "normality_cap": cap,
            "fixtures_included": bool(include_fixtures and 3 in spec.dims),
        },
        "polytopes": polytopes,
        "summary": summary,
    }
