"""Closed-form lower bounds, thresholds and slacks, evaluated exactly.

Every function returns a Fraction (or int). Threshold-gated bounds return a
:class:`BoundResult` whose ``applicable`` flag says whether ``n`` is past the
threshold; the value is reported either way.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "BoundResult",
    "melchior_slack",
    "elliott_t23",
    "kelly_moser_slack",
    "incidence_t23_lb",
    "ordinary_lines_lb",
    "t23_lb",
    "circles_lb",
    "elliott_circles_lb",
    "plane_melchior_slack",
    "m3_lb",
    "m34_lb",
    "planes3_lb",
    "planes_total_lb",
    "planes_total_lb_floor",
    "planes34_lb",
    "three_point_planes_lb",
    "lemma_total_planes_slack",
    "euler_slack",
    "spheres4_lb",
    "spheres_total_lb",
    "spheres_generic_lb",
    "special_surface_spheres_lb",
    "intersection_cap",
    "orchard_upper",
    "orchard_lower",
    "is_prime_power",
    "pg3q",
    "collinear_class_maxima",
    "BOUND_TABLE",
    "bound_table",
]


@dataclass(frozen=True)
class BoundResult:
    name: str
    value: Fraction
    applicable: bool
    threshold: str

    def to_json(self):
        return {
            "name": self.name,
            "value": str(self.value),
            "applicable": self.applicable,
            "threshold": self.threshold,
        }


def _counts(profile) -> dict:
    return profile.counts if hasattr(profile, "counts") else dict(profile)


def _total(profile) -> int:
    return sum(_counts(profile).values())


# --------------------------------------------------------------------------- #
# lines


def melchior_slack(t_profile) -> Fraction:
    """t2 - 3 - sum_{k>=3} (k-3) t_k; nonnegative unless all points are collinear."""
    t = _counts(t_profile)
    return Fraction(t.get(2, 0) - 3 - sum((k - 3) * c for k, c in t.items() if k >= 3))


def elliott_t23(t_total) -> Fraction:
    """(t + 3) / 2, a lower bound for t2 + t3."""
    return Fraction(t_total + 3, 2)


def kelly_moser_slack(t_profile) -> Fraction:
    """3t - 3 - sum k t_k."""
    t = _counts(t_profile)
    return Fraction(3 * sum(t.values()) - 3 - sum(k * c for k, c in t.items()))


def incidence_t23_lb(point_degrees) -> Fraction:
    """2 + (1/6) sum i r_i, a lower bound for t2 + t3."""
    r = _counts(point_degrees)
    return 2 + Fraction(sum(i * c for i, c in r.items()), 6)


def ordinary_lines_lb(r: int, s: int) -> Fraction:
    """Two-point lines when r points are on a line and s are off it: rs - s(s-1)."""
    return Fraction(r * s - s * (s - 1))


def t23_lb(n: int, k: int) -> BoundResult:
    """k(n-k) - k(k-1) lines with two or three points, once n >= 72k^2 + 2k - 1."""
    threshold = 72 * k * k + 2 * k - 1
    return BoundResult(
        "t23_lb",
        Fraction(k * (n - k) - k * (k - 1)),
        n >= threshold,
        f"n >= 72k^2+2k-1 = {threshold}",
    )


def circles_lb(n: int, k: int) -> BoundResult:
    """(1/8)(2k-1)(n^2 - (2k+1)n) circles, once n >= 72k^2 + 2k and k >= 1."""
    threshold = 72 * k * k + 2 * k
    return BoundResult(
        "circles_lb",
        Fraction((2 * k - 1) * (n * n - (2 * k + 1) * n), 8),
        k >= 1 and n >= threshold,
        f"n >= 72k^2+2k = {threshold}",
    )


ELLIOTT_THRESHOLD = 394


def elliott_circles_lb(n: int) -> BoundResult:
    """1 + C(n-1,2) - floor((n-1)/2): the corrected lower bound on circles."""
    return BoundResult(
        "elliott_circles_lb",
        Fraction(1 + comb(n - 1, 2) - (n - 1) // 2),
        n >= ELLIOTT_THRESHOLD,
        f"n >= {ELLIOTT_THRESHOLD}",
    )


# --------------------------------------------------------------------------- #
# planes


def plane_melchior_slack(n: int, m_profile) -> Fraction:
    """-3n - sum k(k-4) m_k; nonnegative for n points, no three collinear, not all coplanar."""
    m = _counts(m_profile)
    return Fraction(-3 * n - sum(k * (k - 4) * c for k, c in m.items()))


def m3_lb(n: int, m_profile) -> Fraction:
    m = _counts(m_profile)
    return n + Fraction(sum(k * (k - 4) * c for k, c in m.items() if k >= 4), 3)


def m34_lb(n: int, m_total: int) -> Fraction:
    return Fraction(5 * m_total + 3 * n, 8)


def planes3_lb(n: int) -> Fraction:
    return Fraction(4, 13) * comb(n, 2)


def planes_total_lb(n: int, k: int) -> BoundResult:
    """1 + k C(n-k,2) - C(k,2)(n-k)/2 planes, once n >= 54k^2 + 9k/2."""
    threshold = 54 * k * k + Fraction(9 * k, 2)
    return BoundResult(
        "planes_total_lb",
        1 + k * comb(n - k, 2) - Fraction(comb(k, 2) * (n - k), 2),
        n >= threshold,
        f"n >= 54k^2+9k/2 = {threshold}",
    )


def planes_total_lb_floor(n: int, k: int) -> Fraction:
    """Variant with floor((n-k)/2), as used when exactly n-k points are coplanar."""
    return Fraction(1 + k * comb(n - k, 2) - comb(k, 2) * ((n - k) // 2))


def planes34_lb(n: int, k: int) -> BoundResult:
    """k C(n-k,2) - (n-k) C(k,2) planes with three or four points, once n >= (184+8/25)k^2 + 4k."""
    threshold = (184 + Fraction(8, 25)) * k * k + 4 * k
    return BoundResult(
        "planes34_lb",
        Fraction(k * comb(n - k, 2) - (n - k) * comb(k, 2)),
        n >= threshold,
        f"n >= (184+8/25)k^2+4k = {threshold}",
    )


def three_point_planes_lb(r: int, s: int) -> Fraction:
    """s C(r,2) - rs(s-1)/2 three-point planes, r points on a plane and s off it."""
    return s * comb(r, 2) - Fraction(r * s * (s - 1), 2)


def lemma_total_planes_slack(n: int, m_profile) -> Fraction:
    """6m - 3n - sum C(k,2) m_k."""
    m = _counts(m_profile)
    return Fraction(6 * sum(m.values()) - 3 * n - sum(comb(k, 2) * c for k, c in m.items()))


def euler_slack(n: int, m_total: int, t_total: int) -> Fraction:
    """m - t + n - 2."""
    return Fraction(m_total - t_total + n - 2)


# --------------------------------------------------------------------------- #
# spheres and the orchard problem


def spheres4_lb(n: int) -> Fraction:
    return Fraction(9, 208) * comb(n, 3)


def spheres_total_lb(n: int, t3cap: int) -> Fraction:
    """1 + C(n-1,3) - t3cap, where t3cap bounds the orchard number of n-1 points."""
    return Fraction(1 + comb(n - 1, 3) - t3cap)


def spheres_generic_lb(n: int) -> Fraction:
    """(26n^3 - 363n^2 + 1132n)/120: spheres when at most n-4 points share a plane or sphere."""
    return Fraction(26 * n**3 - 363 * n**2 + 1132 * n, 120)


def intersection_cap(n: int, k: int) -> Fraction:
    """(1/3) C(n-k,2): spheres shared by two off-surface points."""
    return Fraction(comb(n - k, 2), 3)


def special_surface_spheres_lb(n: int, k: int, surface: str) -> Fraction:
    """Inclusion-exclusion lower bound on spheres through an off point and three
    points of a surface carrying exactly n-k points.

    ``surface`` is "sphere" (each off point loses at most C(n-k,2)/3 triples to
    planes through it) or "plane" (no loss).
    """
    if surface not in ("sphere", "plane"):
        raise ValueError("surface must be 'sphere' or 'plane'")
    c3 = comb(n - k, 3)
    c2 = comb(n - k, 2)
    per_point = c3 - Fraction(c2, 3) if surface == "sphere" else Fraction(c3)
    return k * per_point - comb(k, 2) * Fraction(c2, 3)


def orchard_upper(n: int) -> int:
    """floor(n^2/6 - 25n/78): pair counting plus t2 >= 6n/13.

    At n = 3 and n = 7 the two-point-line bound behind the formula does not
    hold (three collinear points; the seven-point Kelly-Moser set has t2 = 3),
    so the pair count is redone with t2 >= 0 and t2 >= 3 respectively.
    """
    if n < 3:
        return 0
    if n == 3:
        return 1
    if n == 7:
        return (comb(7, 2) - 3) // 3
    return math.floor(Fraction(n * n, 6) - Fraction(25 * n, 78))


def orchard_lower(n: int) -> int:
    """floor(n^2/6 - n/2 + 1), attained by known constructions."""
    if n < 3:
        return 0
    return math.floor(Fraction(n * n, 6) - Fraction(n, 2) + 1)


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def pg3q(q: int) -> tuple:
    """(points = planes, lines) of PG(3, q). Warns when q is not a prime power."""
    if not is_prime_power(q):
        warnings.warn(f"q={q} is not a prime power; PG(3,q) does not exist", stacklevel=2)
    return (q**3 + q**2 + q + 1, q**4 + q**3 + 2 * q**2 + q + 1)


def collinear_class_maxima(n: int, k: int) -> tuple:
    """Most lines, planes, spheres possible when exactly n-k points are collinear."""
    lines = comb(k, 2) + k * (n - k) + 1
    planes = comb(k, 3) + (n - k) * comb(k, 2) + k
    spheres = comb(k, 4) + (n - k) * comb(k, 3) + comb(k, 2) * comb(n - k, 2)
    return lines, planes, spheres


# --------------------------------------------------------------------------- #
# tabulation


def _wrap(name, value, threshold="", applicable=True):
    return BoundResult(name, Fraction(value), applicable, threshold)


BOUND_TABLE = {
    "t23": lambda n, k: t23_lb(n, k),
    "circles": lambda n, k: circles_lb(n, k),
    "elliott_circles": lambda n, k: elliott_circles_lb(n),
    "planes3": lambda n, k: _wrap("planes3_lb", planes3_lb(n)),
    "planes_total": lambda n, k: planes_total_lb(n, k),
    "planes_total_floor": lambda n, k: _wrap("planes_total_lb_floor", planes_total_lb_floor(n, k)),
    "planes34": lambda n, k: planes34_lb(n, k),
    "spheres4": lambda n, k: _wrap("spheres4_lb", spheres4_lb(n)),
    "spheres_total": lambda n, k: BoundResult(
        "spheres_total_lb", spheres_total_lb(n, orchard_upper(n - 1)), n >= 883, "n >= 883"
    ),
    "orchard_upper": lambda n, k: _wrap("orchard_upper", orchard_upper(n)),
    "orchard_lower": lambda n, k: _wrap("orchard_lower", orchard_lower(n)),
    "lines_max": lambda n, k: _wrap("lines_max", collinear_class_maxima(n, k)[0]),
    "planes_max": lambda n, k: _wrap("planes_max", collinear_class_maxima(n, k)[1]),
    "spheres_max": lambda n, k: _wrap("spheres_max", collinear_class_maxima(n, k)[2]),
}

_GROUPS = {
    "orchard": ("orchard_lower", "orchard_upper"),
    "maxima": ("lines_max", "planes_max", "spheres_max"),
}


def bound_table(names, ns, ks=(1,)) -> list:
    """Rows keyed by (bound name, n, k). ``names`` may include the groups "orchard",
    "maxima" and "all"."""
    expanded = []
    for name in names:
        if name == "all":
            expanded.extend(BOUND_TABLE)
        elif name in _GROUPS:
            expanded.extend(_GROUPS[name])
        elif name in BOUND_TABLE:
            expanded.append(name)
        else:
            raise ValueError(f"unknown bound {name!r}; choose from {sorted(BOUND_TABLE) + sorted(_GROUPS)}")
    rows = []
    for name in expanded:
        for n in ns:
            for k in ks:
                res = BOUND_TABLE[name](n, k)
                rows.append({"bound": name, "n": n, "k": k, **res.to_json()})
    return rows
