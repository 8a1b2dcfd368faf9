"""Brute-force enumeration of determined lines, circles, planes and spheres.

Pairs, triples or quadruples of points are hashed by the integer coefficient
vector of the object they span; each group's point set gives the multiplicity.
Every run checks the pair/triple counting identities before returning.
"""

from __future__ import annotations

import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .exact import (
    EnumerationLimitError,
    IncidenceError,
    PointSet,
    circle_coeffs,
    key_from_coeffs,
    line_coeffs,
    normalize_int_vector,
    plane_coeffs,
    plane_key_from_coeffs,
    sphere_coeffs,
)

__all__ = [
    "KINDS",
    "DEFAULT_MAX_SPHERE_N",
    "IncidenceProfile",
    "PointDegreeProfile",
    "PairDegreeProfile",
    "ThroughPointProfile",
    "Enumeration",
    "IdentityViolation",
    "IDENTITY_CHECKS",
    "enumerate_objects",
    "enumerate_projective_lines",
    "line_profile",
    "circle_profile",
    "plane_profile",
    "sphere_profile",
    "point_degrees",
    "pair_degrees",
    "profile_through_point",
]

KINDS = {"lines": 2, "circles": 2, "planes": 3, "spheres": 3}
_MIN_POINTS = {"lines": 2, "circles": 3, "planes": 3, "spheres": 4, "projective": 2}
_ALIASES = {"line": "lines", "circle": "circles", "plane": "planes", "sphere": "spheres"}
DEFAULT_MAX_SPHERE_N = 120


class IdentityViolation(AssertionError):
    """A counting identity failed; this is always a bug in enumeration."""


@dataclass(frozen=True)
class IncidenceProfile:
    """Object counts by exact multiplicity (t_k, c_r, m_k or s_r)."""

    kind: str
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, k) -> int:
        return self.counts.get(k, 0)

    def weighted(self, fn) -> int:
        return sum(fn(k) * c for k, c in self.counts.items())

    def to_json(self) -> dict:
        out = {str(k): c for k, c in sorted(self.counts.items())}
        out["total"] = self.total
        return out


@dataclass(frozen=True)
class PointDegreeProfile:
    """r_i: how many points lie on exactly i determined lines."""

    counts: dict

    def __getitem__(self, i) -> int:
        return self.counts.get(i, 0)

    @property
    def incidences(self) -> int:
        return sum(i * r for i, r in self.counts.items())

    def to_json(self) -> dict:
        return {str(k): c for k, c in sorted(self.counts.items())}


@dataclass(frozen=True)
class PairDegreeProfile:
    """P_i: how many point pairs lie on exactly i determined planes."""

    counts: dict

    def __getitem__(self, i) -> int:
        return self.counts.get(i, 0)

    @property
    def incidences(self) -> int:
        return sum(i * c for i, c in self.counts.items())

    def to_json(self) -> dict:
        return {str(k): c for k, c in sorted(self.counts.items())}


@dataclass(frozen=True)
class ThroughPointProfile:
    anchor: int
    kind: str
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, k) -> int:
        return self.counts.get(k, 0)

    def to_json(self) -> dict:
        out = {str(k): c for k, c in sorted(self.counts.items())}
        out["total"] = self.total
        out["anchor"] = self.anchor
        return out


@dataclass
class Enumeration:
    """All determined objects of one kind: canonical key -> incident point indices."""

    kind: str
    n: int
    objects: dict
    skipped: int = 0  # degenerate tuples: collinear triples / coplanar quadruples
    _profile: IncidenceProfile | None = field(default=None, repr=False)

    def profile(self) -> IncidenceProfile:
        if self._profile is None:
            counts = Counter(len(pts) for pts in self.objects.values())
            self._profile = IncidenceProfile(self.kind, dict(sorted(counts.items())))
        return self._profile

    def through(self, anchor: int) -> ThroughPointProfile:
        counts = Counter(len(pts) for pts in self.objects.values() if anchor in pts)
        return ThroughPointProfile(anchor, self.kind, dict(sorted(counts.items())))

    def objects_through(self, anchor: int) -> dict:
        return {key: pts for key, pts in self.objects.items() if anchor in pts}


# --------------------------------------------------------------------------- #
# workers (module level so they pickle)


def _scan(kind, pts, firsts):
    groups = {}
    skipped = 0
    n = len(pts)
    if kind == "lines":
        for i in firsts:
            p = pts[i]
            for j in range(i + 1, n):
                key = normalize_int_vector(line_coeffs(p, pts[j]), 2)
                g = groups.get(key)
                if g is None:
                    groups[key] = g = [set(), 0]
                g[0].update((i, j))
                g[1] += 1
    elif kind == "projective":
        for i in firsts:
            p = pts[i]
            for j in range(i + 1, n):
                q = pts[j]
                normal = (
                    p[1] * q[2] - p[2] * q[1],
                    p[2] * q[0] - p[0] * q[2],
                    p[0] * q[1] - p[1] * q[0],
                )
                key = normalize_int_vector(normal, 3)
                g = groups.get(key)
                if g is None:
                    groups[key] = g = [set(), 0]
                g[0].update((i, j))
                g[1] += 1
    elif kind in ("planes", "circles"):
        coeffs = plane_coeffs if kind == "planes" else circle_coeffs
        lead = 3 if kind == "planes" else 1
        for i in firsts:
            p = pts[i]
            for j in range(i + 1, n):
                q = pts[j]
                for k in range(j + 1, n):
                    c = coeffs(p, q, pts[k])
                    if not any(c[:lead]):
                        skipped += 1
                        continue
                    key = normalize_int_vector(c, lead)
                    g = groups.get(key)
                    if g is None:
                        groups[key] = g = [set(), 0]
                    g[0].update((i, j, k))
                    g[1] += 1
    elif kind == "spheres":
        for i in firsts:
            p = pts[i]
            for j in range(i + 1, n):
                q = pts[j]
                for k in range(j + 1, n):
                    r = pts[k]
                    for m in range(k + 1, n):
                        c = sphere_coeffs(p, q, r, pts[m])
                        if c[0] == 0:
                            skipped += 1
                            continue
                        key = normalize_int_vector(c, 1)
                        g = groups.get(key)
                        if g is None:
                            groups[key] = g = [set(), 0]
                        g[0].update((i, j, k, m))
                        g[1] += 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return groups, skipped


def _run(kind, pts, jobs):
    n = len(pts)
    if jobs <= 1 or n < 8:
        return _scan(kind, pts, range(n))
    # interleave first indices so the heavy low indices spread across workers
    parts = [range(w, n, jobs) for w in range(jobs)]
    merged = {}
    skipped = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for groups, sk in pool.map(_scan, [kind] * jobs, [pts] * jobs, parts):
            skipped += sk
            for key, (members, count) in groups.items():
                g = merged.get(key)
                if g is None:
                    merged[key] = [set(members), count]
                else:
                    g[0] |= members
                    g[1] += count
    return merged, skipped


# --------------------------------------------------------------------------- #


def _max_sphere_n(max_n):
    if max_n is not None:
        return max_n
    env = os.environ.get("INCIDENCE_LAB_MAX_N")
    return int(env) if env else DEFAULT_MAX_SPHERE_N


IDENTITY_CHECKS = Counter()  # kind -> enumerations whose identities were verified


def _check(cond, message):
    if not cond:
        raise IdentityViolation(message)


def _tuple_size(kind):
    return {"lines": 2, "projective": 2, "planes": 3, "circles": 3, "spheres": 4}[kind]


def _verify(kind, n, groups, skipped):
    size = _tuple_size(kind)
    seen = 0
    for members, count in groups.values():
        k = len(members)
        seen += count
        if kind in ("lines", "projective", "circles") or skipped == 0:
            _check(count == comb(k, size), f"{kind}: group of {k} points holds {count} tuples")
        else:
            _check(count <= comb(k, size), f"{kind}: group of {k} points holds {count} tuples")
    _check(seen + skipped == comb(n, size), f"{kind}: {seen}+{skipped} tuples != C({n},{size})")
    IDENTITY_CHECKS[kind] += 1


def enumerate_objects(
    S: PointSet,
    kind: str,
    *,
    jobs: int = 1,
    max_n: int | None = None,
    max_quadruples: int | None = None,
) -> Enumeration:
    """Enumerate every object of ``kind`` determined by ``S``.

    Sphere enumeration refuses sets larger than ``max_n`` (default 120, or the
    ``INCIDENCE_LAB_MAX_N`` environment variable) unless ``max_quadruples`` is
    given and covers C(n, 4).
    """
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    if S.dim != KINDS[kind]:
        raise IncidenceError(f"{kind} need a {KINDS[kind]}D point set, got {S.dim}D")
    n = len(S)
    if kind == "spheres" and n > _max_sphere_n(max_n):
        if max_quadruples is None or comb(n, 4) > max_quadruples:
            raise EnumerationLimitError(
                f"sphere enumeration over n={n} points ({comb(n, 4)} quadruples) exceeds the "
                f"cap n<={_max_sphere_n(max_n)}; pass max_quadruples to override"
            )
    cache = S.__dict__.setdefault("_enumerations", {})
    if kind in cache:
        return cache[kind]
    if n < _MIN_POINTS[kind]:
        result = Enumeration(kind, n, {})
        cache[kind] = result
        return result
    groups, skipped = _run(kind, S.int_points, jobs)
    _verify(kind, n, groups, skipped)
    objects = {}
    for coeffs, (members, _) in groups.items():
        if kind == "planes":
            key = plane_key_from_coeffs(coeffs, S.scale)
        else:
            key = key_from_coeffs(coeffs, S.scale)
        objects[key] = frozenset(members)
    result = Enumeration(kind, n, dict(sorted(objects.items())), skipped)
    _verify_profile(S, result)
    cache[kind] = result
    return result


def _verify_profile(S, result):
    n = len(S)
    prof = result.profile()
    if result.kind == "lines":
        _check(
            prof.weighted(lambda k: comb(k, 2)) == comb(n, 2),
            "pair identity: sum C(k,2) t_k != C(n,2)",
        )
    elif result.kind == "planes":
        # collinear triples lie in no plane, hence the correction term
        _check(
            result.skipped > 0 or prof.weighted(lambda k: comb(k, 3)) == comb(n, 3),
            "triple identity: sum C(k,3) m_k != C(n,3)",
        )
    elif result.kind == "circles":
        lines = enumerate_objects(S, "lines").profile()
        _check(
            lines.weighted(lambda k: comb(k, 3)) + prof.weighted(lambda r: comb(r, 3))
            == comb(n, 3),
            "triple partition: collinear + concyclic triples != C(n,3)",
        )


def enumerate_projective_lines(directions, jobs: int = 1) -> Enumeration:
    """Lines of the projective plane spanned by integer direction vectors.

    Each line is keyed by its normalized normal vector (a point of the dual plane).
    """
    dirs = tuple(tuple(int(c) for c in d) for d in directions)
    if len(set(dirs)) != len(dirs):
        raise IncidenceError("directions must be distinct")
    n = len(dirs)
    if n < 2:
        return Enumeration("projective", n, {})
    groups, skipped = _run("projective", dirs, jobs)
    _verify("projective", n, groups, skipped)
    objects = {key: frozenset(members) for key, (members, _) in groups.items()}
    result = Enumeration("projective", n, dict(sorted(objects.items())))
    _check(
        result.profile().weighted(lambda k: comb(k, 2)) == comb(n, 2),
        "pair identity on projected set",
    )
    return result


def line_profile(S: PointSet, **kw) -> IncidenceProfile:
    return enumerate_objects(S, "lines", **kw).profile()


def circle_profile(S: PointSet, **kw) -> IncidenceProfile:
    return enumerate_objects(S, "circles", **kw).profile()


def plane_profile(S: PointSet, **kw) -> IncidenceProfile:
    return enumerate_objects(S, "planes", **kw).profile()


def sphere_profile(S: PointSet, **kw) -> IncidenceProfile:
    return enumerate_objects(S, "spheres", **kw).profile()


def point_degrees(S: PointSet) -> PointDegreeProfile:
    enum = enumerate_objects(S, "lines")
    degree = Counter()
    for pts in enum.objects.values():
        degree.update(pts)
    counts = Counter(degree[i] for i in range(len(S)))
    prof = PointDegreeProfile(dict(sorted(counts.items())))
    _check(sum(counts.values()) == len(S), "sum r_i != n")
    _check(
        prof.incidences == enum.profile().weighted(lambda k: k),
        "point-line incidences disagree",
    )
    return prof


def pair_degrees(S: PointSet) -> PairDegreeProfile:
    enum = enumerate_objects(S, "planes")
    degree = Counter()
    for pts in enum.objects.values():
        degree.update(combinations(sorted(pts), 2))
    n = len(S)
    counts = Counter(degree[pair] for pair in combinations(range(n), 2))
    prof = PairDegreeProfile(dict(sorted(counts.items())))
    _check(sum(counts.values()) == comb(n, 2), "sum P_i != C(n,2)")
    _check(
        prof.incidences == enum.profile().weighted(lambda k: comb(k, 2)),
        "sum i P_i != sum C(k,2) m_k",
    )
    return prof


def profile_through_point(S: PointSet, p, kind: str, **kw) -> ThroughPointProfile:
    """Per-anchor profile; ``p`` is an index into ``S`` or a point of ``S``."""
    anchor = p if isinstance(p, int) else S.index_of(p)
    if not 0 <= anchor < len(S):
        raise IncidenceError(f"anchor index {anchor} out of range")
    return enumerate_objects(S, kind, **kw).through(anchor)


def anchor_sums(enum: Enumeration) -> dict:
    """sum over anchors p of the through-p counts, by multiplicity (should be k * count_k)."""
    totals = defaultdict(int)
    for i in range(enum.n):
        for k, c in enum.through(i).counts.items():
            totals[k] += c
    return dict(sorted(totals.items()))
