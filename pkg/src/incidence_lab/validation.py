"""Hypothesis checks on point sets (general position, special flats, special spheres)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exact import (
    HypothesisError,
    PointSet,
    _cross,
    _det3,
    _sub,
    cocircular4_3d,
    collinear3,
)
from .incidence import enumerate_objects

__all__ = [
    "HYPOTHESES",
    "HypothesisResult",
    "ValidationReport",
    "validate",
    "require",
    "max_collinear",
    "max_coplanar",
    "max_cocircular",
    "max_cospherical",
    "find_collinear_triple",
    "find_cocircular_quadruple",
]

HYPOTHESES = (
    "no_3_collinear",
    "no_4_cocircular",
    "not_all_collinear",
    "not_all_coplanar",
    "not_all_cospherical",
    "max_collinear",
    "max_coplanar",
    "max_cocircular",
    "max_cospherical",
)


@dataclass(frozen=True)
class HypothesisResult:
    name: str
    satisfied: bool
    witness: tuple = ()  # point indices
    detail: str = ""

    def to_json(self, S=None):
        out = {"name": self.name, "satisfied": self.satisfied, "witness": list(self.witness)}
        if S is not None and self.witness:
            out["witness_points"] = [[str(c) for c in S[i]] for i in self.witness]
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class ValidationReport:
    n: int
    dim: int
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.satisfied for r in self.results.values())

    def __getitem__(self, name) -> HypothesisResult:
        return self.results[name]

    def violations(self):
        return [r for r in self.results.values() if not r.satisfied]

    def to_json(self, S=None):
        return {
            "n": self.n,
            "dim": self.dim,
            "ok": self.ok,
            "hypotheses": [r.to_json(S) for r in self.results.values()],
        }


def find_collinear_triple(S: PointSet):
    """First collinear triple in lexicographic order, or None."""
    if S.dim == 2:
        enum = enumerate_objects(S, "lines")
        best = None
        for pts in enum.objects.values():
            if len(pts) >= 3:
                trip = tuple(sorted(pts)[:3])
                if best is None or trip < best:
                    best = trip
        return best
    pts = S.int_points
    for i, j, k in combinations(range(len(pts)), 3):
        if not any(_cross(_sub(pts[j], pts[i]), _sub(pts[k], pts[i]))):
            return (i, j, k)
    return None


def find_cocircular_quadruple(S: PointSet):
    if S.dim == 2:
        for pts in enumerate_objects(S, "circles").objects.values():
            if len(pts) >= 4:
                return tuple(sorted(pts)[:4])
        return None
    # in 3D four cocircular points are coplanar; search inside each rich plane
    for pts in enumerate_objects(S, "planes").objects.values():
        if len(pts) < 4:
            continue
        for quad in combinations(sorted(pts), 4):
            if cocircular4_3d(*(S[i] for i in quad)):
                return quad
    return None


def _largest(enum):
    best = ()
    for pts in enum.objects.values():
        if len(pts) > len(best):
            best = tuple(sorted(pts))
    return best


def max_collinear(S: PointSet) -> tuple:
    """(count, indices) for a richest line; a lone point counts as 1."""
    if len(S) < 2:
        return len(S), tuple(range(len(S)))
    if S.dim == 2:
        best = _largest(enumerate_objects(S, "lines"))
        return len(best), best
    pts = S.int_points
    best = (0, 1)
    for i, j in combinations(range(len(pts)), 2):
        d = _sub(pts[j], pts[i])
        on = tuple(
            k for k in range(len(pts))
            if k in (i, j) or not any(_cross(d, _sub(pts[k], pts[i])))
        )
        if len(on) > len(best):
            best = on
    return len(best), best


def _all_coplanar(S):
    pts = S.int_points
    if len(pts) < 4:
        return True
    base = pts[0]
    u = next((_sub(p, base) for p in pts[1:]), None)
    v = None
    for p in pts[2:]:
        w = _sub(p, base)
        if any(_cross(u, w)):
            v = w
            break
    if v is None:
        return True
    return all(_det3(u, v, _sub(p, base)) == 0 for p in pts)


def max_coplanar(S: PointSet) -> tuple:
    if S.dim == 2 or _all_coplanar(S):
        return len(S), tuple(range(len(S)))
    best = _largest(enumerate_objects(S, "planes"))
    return len(best), best


def max_cocircular(S: PointSet) -> tuple:
    if S.dim == 2:
        best = _largest(enumerate_objects(S, "circles"))
        return len(best), best
    best = ()
    for pts in enumerate_objects(S, "planes").objects.values():
        if len(pts) <= max(len(best), 2):
            continue
        sub = S.subset(sorted(pts))
        idx = sorted(pts)
        for a, b, c in combinations(range(len(idx)), 3):
            if collinear3(sub[a], sub[b], sub[c]):
                continue
            on = tuple(
                idx[m] for m in range(len(idx))
                if m in (a, b, c) or cocircular4_3d(sub[a], sub[b], sub[c], sub[m])
            )
            if len(on) > len(best):
                best = on
    return len(best), best


def max_cospherical(S: PointSet, **kw) -> tuple:
    if S.dim != 3:
        raise ValueError("cosphericity needs a 3D point set")
    best = _largest(enumerate_objects(S, "spheres", **kw))
    if len(best) < 4:
        # coplanar sets: a circle through m points lies on a sphere
        count, circ = max_cocircular(S)
        if count > len(best):
            best = circ
    return len(best), best


def validate(S: PointSet, hypotheses, k: int | None = None, **kw) -> ValidationReport:
    """Check each named hypothesis; violations come back as data with a witness.

    The ``max_*`` hypotheses test "at most n - k points on any line / plane /
    circle / sphere" and need ``k``.
    """
    if isinstance(hypotheses, str):
        hypotheses = [hypotheses]
    n = len(S)
    report = ValidationReport(n, S.dim)
    for name in hypotheses:
        if name not in HYPOTHESES:
            raise ValueError(f"unknown hypothesis {name!r}; expected one of {HYPOTHESES}")
        if name.startswith("max_") and k is None:
            raise ValueError(f"hypothesis {name} needs k")
        report.results[name] = _check_one(S, name, k, kw)
    return report


def _check_one(S, name, k, kw):
    n = len(S)
    if name == "no_3_collinear":
        trip = find_collinear_triple(S)
        return HypothesisResult(name, trip is None, trip or ())
    if name == "no_4_cocircular":
        quad = find_cocircular_quadruple(S)
        return HypothesisResult(name, quad is None, quad or ())
    if name == "not_all_collinear":
        count, _ = max_collinear(S)
        return HypothesisResult(name, count < n, tuple(range(n)) if count == n else ())
    if name == "not_all_coplanar":
        flat = S.dim == 2 or _all_coplanar(S)
        return HypothesisResult(name, not flat, tuple(range(n)) if flat else ())
    if name == "not_all_cospherical":
        count, _ = max_cospherical(S, **kw)
        return HypothesisResult(name, count < n, tuple(range(n)) if count == n else ())
    measure = {
        "max_collinear": max_collinear,
        "max_coplanar": max_coplanar,
        "max_cocircular": max_cocircular,
        "max_cospherical": lambda s: max_cospherical(s, **kw),
    }[name]
    count, pts = measure(S)
    ok = count <= n - k
    return HypothesisResult(
        name, ok, () if ok else pts, f"max {count} vs allowed {n - k}"
    )


def require(S: PointSet, hypotheses, k: int | None = None, **kw) -> ValidationReport:
    """Like :func:`validate` but raise HypothesisError on the first violation."""
    report = validate(S, hypotheses, k=k, **kw)
    for r in report.violations():
        pts = ", ".join(str(tuple(str(c) for c in S[i])) for i in r.witness[:6])
        raise HypothesisError(f"hypothesis {r.name} violated; witness {pts}", r.witness)
    return report
