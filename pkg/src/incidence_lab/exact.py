"""Exact rational points, predicates and canonical keys for lines, planes, circles and spheres.

Every coordinate is a :class:`fractions.Fraction`.  Lines and planes are keyed by
coprime integer coefficient vectors; circles and spheres by their exact centre and
squared radius.  Internally all four objects are also carried as coprime integer
coefficient vectors of ``A*|x|^2 + b.x + c = 0`` (``A = 0`` for flats), which is what
the enumeration code hashes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "IncidenceError",
    "DuplicatePointError",
    "DegenerateError",
    "HypothesisError",
    "EnumerationLimitError",
    "PointSet",
    "CanonLine2",
    "CanonPlane3",
    "CanonCircle2",
    "CanonSphere3",
    "as_rational",
    "as_point",
    "collinear3",
    "coplanar4",
    "cocircular4",
    "cocircular4_3d",
    "cospherical5",
    "canon_line",
    "canon_plane",
    "canon_circle",
    "canon_sphere",
    "normalize_int_vector",
]

Rational = Fraction
Point = tuple  # tuple of Fractions, length 2 or 3


class IncidenceError(ValueError):
    """Base class for all errors raised by this package."""


class DuplicatePointError(IncidenceError):
    pass


class DegenerateError(IncidenceError):
    """Defining points do not determine the requested object."""


class HypothesisError(IncidenceError):
    """A configuration violates a required hypothesis; ``witness`` names the culprits."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class EnumerationLimitError(IncidenceError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "__index__"):  # numpy integers
        return Fraction(int(value))
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate: {value!r}")


def as_point(coords) -> Point:
    return tuple(as_rational(c) for c in coords)


def _check_distinct(*pts):
    for a, b in combinations(pts, 2):
        if a == b:
            raise DuplicatePointError(f"duplicate input point {a}")


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _dot(p, q):
    return sum(a * b for a, b in zip(p, q))


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _det3(u, v, w):
    return _dot(u, _cross(v, w))


def _det(rows):
    """Determinant by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, size):
                    m[r][c] -= f * m[col][c]
    return det


def normalize_int_vector(vec: Sequence[int], lead: int) -> tuple:
    """Divide by the gcd and make the first nonzero of ``vec[:lead]`` positive."""
    g = 0
    for x in vec:
        g = math.gcd(g, x)
    if g == 0:
        raise DegenerateError("zero coefficient vector")
    sign = 1
    for x in vec[:lead]:
        if x:
            sign = 1 if x > 0 else -1
            break
    else:
        raise DegenerateError("leading coefficients all zero")
    g *= sign
    return tuple(x // g for x in vec)


def _clear_denominators(vec) -> list:
    den = 1
    for x in vec:
        den = math.lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in vec]


# --------------------------------------------------------------------------- #
# integer coefficient forms; these are what enumeration hashes

def line_coeffs(p, q):
    """(a, b, c) with a*x + b*y + c = 0 through p and q, not normalized."""
    a = p[1] - q[1]
    b = q[0] - p[0]
    return (a, b, -(a * p[0] + b * p[1]))


def plane_coeffs(p, q, r):
    n = _cross(_sub(q, p), _sub(r, p))
    return (n[0], n[1], n[2], -_dot(n, p))


def circle_coeffs(p, q, r):
    """(A, D, E, G) with A*(x^2+y^2) + D*x + E*y + G = 0; A == 0 iff collinear."""
    u = _sub(q, p)
    v = _sub(r, p)
    a = u[0] * v[1] - u[1] * v[0]
    wu = u[0] * u[0] + u[1] * u[1]
    wv = v[0] * v[0] + v[1] * v[1]
    # local frame at p: A|w|^2 + d.w = 0 with d = -adj(U) (wu, wv)
    dx = -(v[1] * wu - u[1] * wv)
    dy = -(-v[0] * wu + u[0] * wv)
    pp = p[0] * p[0] + p[1] * p[1]
    return (
        a,
        dx - 2 * a * p[0],
        dy - 2 * a * p[1],
        a * pp - dx * p[0] - dy * p[1],
    )


def sphere_coeffs(p, q, r, s):
    """(A, D, E, F, G) with A*|x|^2 + (D,E,F).x + G = 0; A == 0 iff coplanar."""
    u = _sub(q, p)
    v = _sub(r, p)
    w = _sub(s, p)
    vw = _cross(v, w)
    wu = _cross(w, u)
    uv = _cross(u, v)
    a = _dot(u, vw)
    nu = _dot(u, u)
    nv = _dot(v, v)
    nw = _dot(w, w)
    # adj(U) has the cross products as columns
    d = tuple(-(vw[i] * nu + wu[i] * nv + uv[i] * nw) for i in range(3))
    return (
        a,
        d[0] - 2 * a * p[0],
        d[1] - 2 * a * p[1],
        d[2] - 2 * a * p[2],
        a * _dot(p, p) - _dot(d, p),
    )


# --------------------------------------------------------------------------- #
# canonical keys


@dataclass(frozen=True, order=True)
class CanonLine2:
    a: int
    b: int
    c: int

    def contains(self, pt) -> bool:
        return self.a * pt[0] + self.b * pt[1] + self.c == 0

    def to_json(self):
        return {"type": "line", "coeffs": [self.a, self.b, self.c]}


@dataclass(frozen=True, order=True)
class CanonPlane3:
    a: int
    b: int
    c: int
    d: int

    def contains(self, pt) -> bool:
        return self.a * pt[0] + self.b * pt[1] + self.c * pt[2] + self.d == 0

    def to_json(self):
        return {"type": "plane", "coeffs": [self.a, self.b, self.c, self.d]}


@dataclass(frozen=True, order=True)
class CanonCircle2:
    center: tuple
    radius_sq: Fraction

    def contains(self, pt) -> bool:
        return _dot(_sub(pt, self.center), _sub(pt, self.center)) == self.radius_sq

    def to_json(self):
        return {
            "type": "circle",
            "center": [str(c) for c in self.center],
            "radius_sq": str(self.radius_sq),
        }


@dataclass(frozen=True, order=True)
class CanonSphere3:
    center: tuple
    radius_sq: Fraction

    def contains(self, pt) -> bool:
        return _dot(_sub(pt, self.center), _sub(pt, self.center)) == self.radius_sq

    def to_json(self):
        return {
            "type": "sphere",
            "center": [str(c) for c in self.center],
            "radius_sq": str(self.radius_sq),
        }


def key_from_coeffs(coeffs: tuple, scale: int = 1):
    """Turn a normalized-or-not integer coefficient vector (in coordinates scaled by
    ``scale``) into the canonical key in original coordinates."""
    size = len(coeffs)
    if size == 3:  # line: a X + b Y + c with X = s x
        a, b, c = coeffs
        return CanonLine2(*normalize_int_vector((a * scale, b * scale, c), 2))
    if size == 4 and coeffs[0] == 0:
        raise DegenerateError("collinear points determine no circle")
    if size == 4:  # circle: A |X|^2 + D.X + G
        big_a, d, e, g = coeffs
        big_a, d, e, g = (big_a * scale * scale, d * scale, e * scale, g)
        return _round_key(big_a, (d, e), g, CanonCircle2)
    if size == 5 and coeffs[0] == 0:
        raise DegenerateError("coplanar points determine no sphere")
    big_a, d, e, f, g = coeffs
    return _round_key(big_a * scale * scale, (d * scale, e * scale, f * scale), g, CanonSphere3)


def plane_key_from_coeffs(coeffs: tuple, scale: int = 1) -> CanonPlane3:
    a, b, c, d = coeffs
    return CanonPlane3(*normalize_int_vector((a * scale, b * scale, c * scale, d), 3))


def _round_key(big_a, lin, g, cls):
    center = tuple(Fraction(-x, 2 * big_a) for x in lin)
    radius_sq = _dot(center, center) - Fraction(g, big_a)
    if radius_sq <= 0:
        raise DegenerateError("non-positive squared radius")
    return cls(center, radius_sq)


def canon_line(p, q) -> CanonLine2:
    p, q = as_point(p), as_point(q)
    _check_distinct(p, q)
    if len(p) != 2:
        raise ValueError("canon_line expects 2D points")
    return CanonLine2(*normalize_int_vector(_clear_denominators(line_coeffs(p, q)), 2))


def canon_plane(p, q, r) -> CanonPlane3:
    p, q, r = as_point(p), as_point(q), as_point(r)
    _check_distinct(p, q, r)
    coeffs = plane_coeffs(p, q, r)
    if not any(coeffs[:3]):
        raise DegenerateError(f"collinear points {p}, {q}, {r} determine no plane")
    return CanonPlane3(*normalize_int_vector(_clear_denominators(coeffs), 3))


def canon_circle(p, q, r) -> CanonCircle2:
    p, q, r = as_point(p), as_point(q), as_point(r)
    _check_distinct(p, q, r)
    coeffs = circle_coeffs(p, q, r)
    if coeffs[0] == 0:
        raise DegenerateError(f"collinear points {p}, {q}, {r} determine no circle")
    return _round_key(coeffs[0], coeffs[1:3], coeffs[3], CanonCircle2)


def canon_sphere(p, q, r, s) -> CanonSphere3:
    p, q, r, s = (as_point(x) for x in (p, q, r, s))
    _check_distinct(p, q, r, s)
    coeffs = sphere_coeffs(p, q, r, s)
    if coeffs[0] == 0:
        raise DegenerateError("coplanar points determine no sphere")
    return _round_key(coeffs[0], coeffs[1:4], coeffs[4], CanonSphere3)


# --------------------------------------------------------------------------- #
# predicates


def collinear3(p, q, r) -> bool:
    p, q, r = as_point(p), as_point(q), as_point(r)
    _check_distinct(p, q, r)
    u, v = _sub(q, p), _sub(r, p)
    if len(p) == 2:
        return u[0] * v[1] - u[1] * v[0] == 0
    return not any(_cross(u, v))


def coplanar4(p, q, r, s) -> bool:
    p, q, r, s = (as_point(x) for x in (p, q, r, s))
    _check_distinct(p, q, r, s)
    return _det3(_sub(q, p), _sub(r, p), _sub(s, p)) == 0


def cocircular4(p, q, r, s) -> bool:
    """Lifted 4x4 determinant test in the plane.

    Raises DegenerateError if any three of the inputs are collinear, since no
    circle is defined through them.
    """
    pts = [as_point(x) for x in (p, q, r, s)]
    _check_distinct(*pts)
    for a, b, c in combinations(pts, 3):
        if collinear3(a, b, c):
            raise DegenerateError(f"collinear points {a}, {b}, {c} in cocircularity test")
    return _det([[x, y, x * x + y * y, 1] for x, y in pts]) == 0


def _circumcenter3(p, q, r):
    u, v = _sub(q, p), _sub(r, p)
    uu, uv, vv = _dot(u, u), _dot(u, v), _dot(v, v)
    gram = uu * vv - uv * uv
    if gram == 0:
        raise DegenerateError("collinear points determine no circle")
    # c = p + alpha u + beta v with (c-p).u = uu/2 and (c-p).v = vv/2
    alpha = Fraction(uu * vv - uv * vv, 2 * gram)
    beta = Fraction(uu * vv - uv * uu, 2 * gram)
    return tuple(p[i] + alpha * u[i] + beta * v[i] for i in range(3))


def cocircular4_3d(p, q, r, s) -> bool:
    """Four points of R^3 on one circle: coplanar, and ``s`` on the circumcircle of p, q, r."""
    p, q, r, s = (as_point(x) for x in (p, q, r, s))
    _check_distinct(p, q, r, s)
    if _det3(_sub(q, p), _sub(r, p), _sub(s, p)) != 0:
        return False
    pts = (p, q, r, s)
    for a, b, c in combinations(pts, 3):
        if not any(_cross(_sub(b, a), _sub(c, a))):
            return False  # a line and a circle share at most two points
    center = _circumcenter3(p, q, r)
    d0 = _sub(p, center)
    d1 = _sub(s, center)
    return _dot(d0, d0) == _dot(d1, d1)


def cospherical5(p, q, r, s, t) -> bool:
    """Lifted 5x5 determinant test.

    Five coplanar points raise DegenerateError: the determinant vanishes for
    them regardless of any sphere.
    """
    pts = [as_point(x) for x in (p, q, r, s, t)]
    _check_distinct(*pts)
    base = pts[0]
    diffs = [_sub(x, base) for x in pts[1:]]
    if all(_det3(*trio) == 0 for trio in combinations(diffs, 3)):
        raise DegenerateError("five coplanar points determine no proper sphere")
    return _det([[x, y, z, x * x + y * y + z * z, 1] for x, y, z in pts]) == 0


# --------------------------------------------------------------------------- #
# point sets


class PointSet:
    """Immutable, dimension-tagged list of distinct rational points."""

    __slots__ = ("dim", "points", "__dict__")

    def __init__(self, points: Iterable, dim: int | None = None):
        pts = tuple(as_point(p) for p in points)
        if dim is None:
            if not pts:
                raise ValueError("cannot infer dimension of an empty point set")
            dim = len(pts[0])
        if dim not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {dim}")
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
        seen = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePointError(
                    f"points {seen[p]} and {i} coincide at {tuple(str(c) for c in p)}"
                )
            seen[p] = i
        self.dim = dim
        self.points = pts

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.dim == other.dim and self.points == other.points

    def __hash__(self):
        return hash((self.dim, self.points))

    def __repr__(self):
        return f"PointSet(dim={self.dim}, n={len(self.points)})"

    @cached_property
    def _index(self):
        return {p: i for i, p in enumerate(self.points)}

    def index_of(self, point) -> int:
        try:
            return self._index[as_point(point)]
        except KeyError:
            raise IncidenceError(f"point {point} is not in the set") from None

    def __contains__(self, point):
        try:
            return as_point(point) in self._index
        except (TypeError, ValueError):
            return False

    @cached_property
    def scale(self) -> int:
        """Least common denominator of all coordinates."""
        den = 1
        for p in self.points:
            for c in p:
                den = math.lcm(den, c.denominator)
        return den

    @cached_property
    def int_points(self) -> tuple:
        """Coordinates multiplied by :attr:`scale`; every incidence predicate is unchanged."""
        s = self.scale
        return tuple(tuple(int(c * s) for c in p) for p in self.points)

    def without(self, i: int) -> "PointSet":
        return PointSet(self.points[:i] + self.points[i + 1:], dim=self.dim)

    def subset(self, indices) -> "PointSet":
        return PointSet([self.points[i] for i in indices], dim=self.dim)
