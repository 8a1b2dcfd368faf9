"""Named and extremal configurations with exact rational coordinates.

Each generator returns a :class:`Configuration`: the point set plus a ``claims``
block listing the hypotheses it satisfies and the counts it is built to produce.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .exact import (
    IncidenceError,
    PointSet,
    _cross,
    _det3,
    _dot,
    _sub,
    as_point,
    canon_sphere,
)

__all__ = [
    "GENERATORS",
    "GeneratorSpec",
    "Configuration",
    "InfeasibleError",
    "generate",
    "second_intersection",
    "zero_sum_triples",
]


class InfeasibleError(IncidenceError):
    """Constraints could not be met within the retry budget."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    n: int | None = None
    k: int = 1
    seed: int = 0
    flags: frozenset = frozenset()
    values: tuple | None = None  # cubic_orchard parameters
    dim: int = 2  # random_constrained
    through_planes: int = 0  # cospherical_plus_k: planes of sphere triples forced through the off point
    max_tries: int | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        d = dict(d)
        if "flags" in d:
            d["flags"] = frozenset(d["flags"])
        if d.get("values") is not None:
            d["values"] = tuple(d["values"])
        return cls(**d)

    def to_json(self):
        out = {"name": self.name, "n": self.n, "k": self.k, "seed": self.seed}
        if self.flags:
            out["flags"] = sorted(self.flags)
        if self.values is not None:
            out["values"] = list(self.values)
        if self.name == "random_constrained":
            out["dim"] = self.dim
        if self.through_planes:
            out["through_planes"] = self.through_planes
        return out


@dataclass
class Configuration:
    points: PointSet
    claims: dict = field(default_factory=dict)

    @property
    def hypotheses(self) -> list:
        return list(self.claims.get("hypotheses", []))

    @property
    def expected(self) -> dict:
        return dict(self.claims.get("expected", {}))


def _claims(spec, hypotheses, k=None, **expected):
    out = {"generator": spec.to_json(), "hypotheses": list(hypotheses)}
    if k is not None:
        out["k"] = k
    if expected:
        out["expected"] = expected
    return out


def _need(cond, message):
    if not cond:
        raise InfeasibleError(message)


def _budget(spec, n):
    return spec.max_tries if spec.max_tries is not None else 2000 * max(n, 1)


# --------------------------------------------------------------------------- #
# exact incremental checks on integer or rational points


def _collinear(a, b, c):
    u, v = _sub(b, a), _sub(c, a)
    if len(a) == 2:
        return u[0] * v[1] - u[1] * v[0] == 0
    return not any(_cross(u, v))


def _coplanar(a, b, c, d):
    return _det3(_sub(b, a), _sub(c, a), _sub(d, a)) == 0


def _concyclic2(a, b, c, d):
    """a, b, c not collinear; d on their circle."""
    rows = [_sub(x, d) for x in (a, b, c)]
    lifted = [(x, y, x * x + y * y) for x, y in rows]
    return _det3(*lifted) == 0


def _concyclic3(a, b, c, d):
    """Four points of R^3, a, b, c not collinear: coplanar and d on their circle."""
    if not _coplanar(a, b, c, d):
        return False
    # on the circumcircle iff on the sphere through a, b, c centred in their plane
    u, v = _sub(b, a), _sub(c, a)
    uu, uv, vv = _dot(u, u), _dot(u, v), _dot(v, v)
    gram = uu * vv - uv * uv
    alpha = Fraction(uu * vv - uv * vv, 2 * gram)
    beta = Fraction(uu * vv - uv * uu, 2 * gram)
    center = tuple(a[i] + alpha * u[i] + beta * v[i] for i in range(3))
    da, dd = _sub(a, center), _sub(d, center)
    return _dot(da, da) == _dot(dd, dd)


def _fits(q, chosen, flags):
    """Can ``q`` join ``chosen`` without breaking the general-position flags?"""
    if q in chosen:
        return False
    if "no_3_collinear" in flags:
        for a, b in combinations(chosen, 2):
            if _collinear(a, b, q):
                return False
    if "no_4_cocircular" in flags:
        concyclic = _concyclic2 if len(q) == 2 else _concyclic3
        for a, b, c in combinations(chosen, 3):
            if not _collinear(a, b, c) and concyclic(a, b, c, q):
                return False
    return True


def _sample(rng, n, dim, flags, radius, budget, start=(), accept=None):
    chosen = list(start)
    tries = 0
    while len(chosen) < n:
        tries += 1
        if tries > budget:
            raise InfeasibleError(
                f"placed {len(chosen)} of {n} points within {budget} tries"
            )
        q = tuple(rng.randint(-radius, radius) for _ in range(dim))
        if _fits(q, chosen, flags) and (accept is None or accept(q, chosen)):
            chosen.append(q)
    return chosen


# --------------------------------------------------------------------------- #
# generators


def _near_pencil_line(spec):
    n, k = spec.n, spec.k
    _need(n is not None and 0 <= k and n - k >= 2, "near_pencil_line needs n-k >= 2")
    _need(n - k > k + 1 or k == 0, "near_pencil_line needs n-k > k+1 for the axis to stay richest")
    rng = random.Random(spec.seed)
    line = [(i, 0) for i in range(n - k)]

    def off_axis(q, chosen):
        # any other line holds at most the k off points and one axis point
        return q[1] != 0

    pts = _sample(rng, n, 2, set(), 4 * n, _budget(spec, n), start=line, accept=off_axis)
    hyps = ["max_collinear"] + (["not_all_collinear"] if k else [])
    return Configuration(PointSet(pts), _claims(spec, hyps, k=k, max_collinear=n - k))


def _parabola(m):
    return [(t, t * t, 0) for t in range(m)]


def _off_plane_points(spec, base, k, flags, rng):
    def off(q, chosen):
        return q[2] != 0

    return _sample(
        rng, len(base) + k, 3, flags, 3 * (len(base) + k) + 5, _budget(spec, len(base) + k),
        start=base, accept=off,
    )


def _near_pencil_plane(spec):
    n, k = spec.n, spec.k
    _need(n is not None and k >= 1 and n - k >= 3, "near_pencil_plane needs k >= 1 and n-k >= 3")
    _need(n - k >= k + 2, "near_pencil_plane needs n-k >= k+2 so the base plane stays richest")
    rng = random.Random(spec.seed)
    # a plane through two off points meets z=0 in a line, which meets the parabola twice at most
    pts = _off_plane_points(spec, _parabola(n - k), k, {"no_3_collinear"}, rng)
    expected = {"max_coplanar": n - k}
    if k == 1:
        expected["planes_total"] = 1 + comb(n - 1, 2)
    return Configuration(
        PointSet(pts),
        _claims(spec, ["no_3_collinear", "not_all_coplanar", "max_coplanar"], k=k, **expected),
    )


def _coplanar_plus_k(spec):
    n, k = spec.n, spec.k
    _need(n is not None and k >= 1 and n - k >= 3, "coplanar_plus_k needs k >= 1 and n-k >= 3")
    _need(n - k >= k + 2, "coplanar_plus_k needs n-k >= k+2 so the base plane stays richest")
    rng = random.Random(spec.seed)
    flags = {"no_3_collinear", "no_4_cocircular"}
    base = [q + (0,) for q in _sample(rng, n - k, 2, flags, 3 * n + 5, _budget(spec, n))]
    pts = _off_plane_points(spec, base, k, flags, rng)
    expected = {"max_coplanar": n - k}
    if k == 1:
        expected["spheres_total"] = comb(n - 1, 3)
    return Configuration(
        PointSet(pts),
        _claims(
            spec,
            ["no_3_collinear", "no_4_cocircular", "not_all_coplanar", "max_coplanar"],
            k=k,
            **expected,
        ),
    )


def _two_skew_lines(spec):
    n = spec.n
    _need(n is not None and n >= 6, "two_skew_lines needs n >= 6 (three per line)")
    a = (n + 1) // 2
    b = n - a
    pts = [(i, 0, 0) for i in range(a)] + [(0, j, 1) for j in range(b)]
    # every plane holds one whole line plus one point of the other
    return Configuration(
        PointSet(pts),
        _claims(spec, ["not_all_coplanar"], planes_3=0, planes_total=a + b),
    )


def _desargues(spec):
    # two triangles in perspective from the origin, plus the three side intersections
    o = (0, 0, 0)
    a, b, c = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    a2, b2, c2 = (2, 0, 0), (0, 3, 0), (0, 0, 5)
    x = (4, -3, 0)  # AB meets A'B'
    y = (0, 6, -5)  # BC meets B'C'
    z = (Fraction(8, 3), 0, Fraction(-5, 3))  # CA meets C'A'
    pts = [o, a, b, c, a2, b2, c2, x, y, z]
    return Configuration(
        PointSet(pts),
        _claims(spec, ["not_all_coplanar"], planes_3=0, lines_3=10),
    )


def _cube(spec):
    pts = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    return Configuration(
        PointSet(pts),
        _claims(spec, ["no_3_collinear", "not_all_coplanar"], planes={"3": 8, "4": 12}, planes_total=20),
    )


def zero_sum_triples(values) -> int:
    """Triples of distinct values summing to zero (collinear triples on y = x^3)."""
    return sum(1 for a, b, c in combinations(values, 3) if a + b + c == 0)


def _cubic_orchard(spec):
    if spec.values is not None:
        values = [as_point([v])[0] for v in spec.values]
    else:
        _need(spec.n is not None and spec.n >= 3, "cubic_orchard needs n >= 3 or explicit values")
        lo = -(spec.n // 2)
        values = [Fraction(lo + i) for i in range(spec.n)]
    _need(len(set(values)) == len(values), "cubic_orchard values must be distinct")
    pts = [(t, t**3) for t in values]
    n = len(pts)
    # a line meets the cubic in at most three points
    return Configuration(
        PointSet(pts),
        _claims(spec, ["max_collinear"], k=n - 3, lines_3=zero_sum_triples(values)),
    )


def _circle_point(s):
    if s is None:
        return (Fraction(-1), Fraction(0))
    s = Fraction(s)
    d = 1 + s * s
    return ((1 - s * s) / d, 2 * s / d)


def _circle_rational(spec):
    n = spec.n
    _need(n is not None and n >= 3, "circle_rational needs n >= 3")
    pts = [_circle_point(s) for s in range(n)]
    return Configuration(PointSet(pts), _claims(spec, ["no_3_collinear"], circles_total=1))


def _sphere_point(u, v):
    u, v = Fraction(u), Fraction(v)
    d = u * u + v * v + 1
    return (2 * u / d, 2 * v / d, (u * u + v * v - 1) / d)


def _sphere_points(m, rng, budget, radius):
    chosen = []
    seen = set()
    tries = 0
    while len(chosen) < m:
        tries += 1
        if tries > budget:
            raise InfeasibleError(f"placed {len(chosen)} of {m} sphere points within {budget} tries")
        uv = (rng.randint(-radius, radius), rng.randint(-radius, radius))
        if uv in seen:
            continue
        seen.add(uv)
        q = _sphere_point(*uv)
        # four points of a sphere are cocircular exactly when coplanar
        if any(_coplanar(a, b, c, q) for a, b, c in combinations(chosen, 3)):
            continue
        chosen.append(q)
    return chosen


def _sphere_rational(spec):
    n = spec.n
    _need(n is not None and n >= 4, "sphere_rational needs n >= 4")
    rng = random.Random(spec.seed)
    pts = _sphere_points(n, rng, _budget(spec, n), 2 * n + 3)
    return Configuration(
        PointSet(pts),
        _claims(spec, ["no_3_collinear", "no_4_cocircular"], spheres_total=1),
    )


def second_intersection(center, radius_sq, point, direction):
    """Other point where the line ``point + t*direction`` meets the sphere (or circle).

    ``point`` must lie on it; the result is rational when the inputs are.
    """
    point = as_point(point)
    direction = as_point(direction)
    center = as_point(center)
    w = _sub(point, center)
    dd = _dot(direction, direction)
    if dd == 0:
        raise ValueError("zero direction")
    if _dot(w, w) != Fraction(radius_sq):
        raise ValueError("point is not on the sphere")
    t = -2 * _dot(w, direction) / dd
    return tuple(p + t * d for p, d in zip(point, direction))


def _circle_pool():
    yield _circle_point(0)
    yield _circle_point(None)
    s = 2
    while True:
        for val in (Fraction(s), Fraction(1, s), Fraction(-s), Fraction(-1, s), Fraction(s, s + 1)):
            yield _circle_point(val)
        s += 1


def _elliott_counterexample(spec):
    n = spec.n
    _need(n is not None and n >= 4, "elliott_counterexample needs n >= 4")
    m = n - 1
    p = (Fraction(0), Fraction(1, 2))
    origin = (Fraction(0), Fraction(0))
    chosen = []
    chords = 0
    for q in _circle_pool():
        if len(chosen) == m:
            break
        if q in chosen:
            continue
        partner = second_intersection(origin, 1, q, _sub(p, q))
        if partner in chosen:
            continue
        if len(chosen) + 2 <= m:
            chosen.extend([q, partner])
            chords += 1
        else:
            chosen.append(q)
    pts = chosen + [p]
    total = 1 + comb(m, 2) - chords
    return Configuration(
        PointSet(pts),
        _claims(
            spec,
            ["not_all_collinear", "max_cocircular"],
            k=1,
            circles_total=total,
            lines_3_through_anchor=chords,
            anchor=len(pts) - 1,
        ),
    )


def _plane_through(a, b, c):
    normal = _cross(_sub(b, a), _sub(c, a))
    return normal, _dot(normal, a)


def _solve3(rows, rhs):
    det = _det3(*rows)
    if det == 0:
        return None
    out = []
    for i in range(3):
        m = [list(r) for r in rows]
        for r in range(3):
            m[r][i] = rhs[r]
        out.append(Fraction(_det3(*m)) / det)
    return tuple(out)


def _cospherical_plus_k(spec):
    n, k = spec.n, spec.k
    _need(n is not None and k >= 1 and n - k >= 4, "cospherical_plus_k needs k >= 1 and n-k >= 4")
    _need(0 <= spec.through_planes <= 3, "through_planes must be 0..3")
    rng = random.Random(spec.seed)
    budget = _budget(spec, n)
    sphere = _sphere_points(n - k, rng, budget, 2 * n + 3)
    key = canon_sphere(*sphere[:4])
    flags = {"no_3_collinear", "no_4_cocircular"}
    avoid = "generic" in spec.flags
    chosen = list(sphere)
    tries = 0
    while len(chosen) < n:
        tries += 1
        if tries > budget:
            raise InfeasibleError(f"placed {len(chosen)} of {n} points within {budget} tries")
        if spec.through_planes and len(chosen) == n - k:
            triples = rng.sample(list(combinations(range(n - k), 3)), spec.through_planes)
            planes = [_plane_through(*(sphere[i] for i in t)) for t in triples]
            while len(planes) < 3:
                normal = tuple(rng.randint(-5, 5) for _ in range(3))
                planes.append((normal, Fraction(rng.randint(-20, 20), rng.randint(1, 7))))
            q = _solve3([pl[0] for pl in planes], [pl[1] for pl in planes])
            if q is None:
                continue
        else:
            den = rng.randint(1, 4)
            q = tuple(Fraction(rng.randint(-4 * n, 4 * n), den) for _ in range(3))
        if key.contains(q):
            continue
        if not _fits(q, chosen, flags):
            continue
        if avoid and any(_coplanar(q, *(sphere[i] for i in t)) for t in combinations(range(n - k), 3)):
            continue
        chosen.append(q)
    pts = PointSet(chosen)
    expected = {"max_cospherical": n - k}
    if k == 1:
        anchor = n - 1
        # direct scan, independent of plane enumeration
        through = sum(
            1 for t in combinations(range(n - 1), 3) if _coplanar(chosen[anchor], *(chosen[i] for i in t))
        )
        expected.update(
            anchor=anchor,
            three_point_planes_through_anchor=through,
            spheres_total=1 + comb(n - 1, 3) - through,
        )
    return Configuration(
        pts,
        _claims(spec, ["no_3_collinear", "no_4_cocircular", "max_cospherical"], k=k, **expected),
    )


_RANDOM_FLAGS = {"no_3_collinear", "no_4_cocircular", "not_all_collinear", "not_all_coplanar"}


def _random_constrained(spec):
    n, dim = spec.n, spec.dim
    _need(n is not None and n >= 1, "random_constrained needs n")
    _need(dim in (2, 3), "dim must be 2 or 3")
    unknown = set(spec.flags) - _RANDOM_FLAGS
    _need(not unknown, f"unknown flags {sorted(unknown)}")
    rng = random.Random(spec.seed)
    radius = max(10, 4 * n) if dim == 2 else max(6, 2 * n)
    budget = _budget(spec, n)
    for _ in range(50):
        pts = _sample(rng, n, dim, spec.flags, radius, budget)
        if "not_all_collinear" in spec.flags and n >= 3:
            if all(_collinear(pts[0], pts[1], q) for q in pts[2:]):
                continue
        if "not_all_coplanar" in spec.flags and dim == 3 and n >= 4:
            a = pts[0]
            b = pts[1]
            c = next((q for q in pts[2:] if not _collinear(a, b, q)), None)
            if c is None or all(_coplanar(a, b, c, q) for q in pts):
                continue
        return Configuration(PointSet(pts), _claims(spec, sorted(spec.flags)))
    raise InfeasibleError("could not satisfy the global flags")


GENERATORS = {
    "near_pencil_line": _near_pencil_line,
    "near_pencil_plane": _near_pencil_plane,
    "coplanar_plus_k": _coplanar_plus_k,
    "two_skew_lines": _two_skew_lines,
    "desargues": _desargues,
    "cube": _cube,
    "cubic_orchard": _cubic_orchard,
    "circle_rational": _circle_rational,
    "sphere_rational": _sphere_rational,
    "elliott_counterexample": _elliott_counterexample,
    "cospherical_plus_k": _cospherical_plus_k,
    "random_constrained": _random_constrained,
}


def generate(spec) -> Configuration:
    """Build the configuration named by ``spec`` (a GeneratorSpec, dict, or name)."""
    if isinstance(spec, str):
        spec = GeneratorSpec(spec)
    elif isinstance(spec, dict):
        spec = GeneratorSpec.from_dict(spec)
    try:
        fn = GENERATORS[spec.name]
    except KeyError:
        raise ValueError(f"unknown generator {spec.name!r}; choose from {sorted(GENERATORS)}") from None
    return fn(spec)
