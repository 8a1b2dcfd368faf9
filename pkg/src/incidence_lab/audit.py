"""Evaluate every applicable bound against enumerated counts.

An :class:`AuditEntry` compares an enumerated quantity with a bound. Entries
whose hypotheses or thresholds are not met are still evaluated but marked
``informational``; only applicable entries can fail. Margins are exact.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from math import comb

from . import bounds as B
from .exact import HypothesisError, IncidenceError, PointSet, _det3, _sub
from .generators import GeneratorSpec, InfeasibleError, generate
from .incidence import enumerate_objects, pair_degrees, point_degrees
from .transforms import project_from_point
from .validation import max_collinear, max_cocircular, max_coplanar, validate

__all__ = [
    "SCHEMA_VERSION",
    "SPHERE_AUTO_N",
    "AuditEntry",
    "AuditReport",
    "audit_config",
    "sphere_identity_check",
    "intersection_bound_check",
    "inclusion_exclusion_check",
    "SweepResult",
    "sweep",
]

SCHEMA_VERSION = 1
SPHERE_AUTO_N = 40  # spheres are audited automatically up to this n


@dataclass(frozen=True)
class AuditEntry:
    """``relation`` is ">=" (enumerated is at least the bound), "<=" or "==" ."""

    name: str
    statement: str
    applicable: bool
    bound: Fraction
    enumerated: Fraction
    relation: str = ">="

    @property
    def margin(self) -> Fraction:
        if self.relation == "<=":
            return self.bound - self.enumerated
        return self.enumerated - self.bound

    @property
    def holds(self) -> bool:
        if self.relation == "==":
            return self.margin == 0
        return self.margin >= 0

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "informational"
        return "pass" if self.holds else "fail"

    def to_json(self):
        return {
            "name": self.name,
            "statement": self.statement,
            "relation": self.relation,
            "applicable": self.applicable,
            "bound": str(self.bound),
            "enumerated": str(self.enumerated),
            "margin": str(self.margin),
            "verdict": self.verdict,
        }


@dataclass
class AuditReport:
    n: int
    dim: int
    hypotheses: dict
    profiles: dict
    entries: list = field(default_factory=list)

    def __getitem__(self, name) -> AuditEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name):
        return any(e.name == name for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if e.verdict == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "config": {"n": self.n, "dim": self.dim, "hypotheses": self.hypotheses},
            "profiles": self.profiles,
            "entries": [e.to_json() for e in self.entries],
            "ok": self.ok,
        }

    def csv_rows(self):
        return [
            {"n": self.n, "dim": self.dim, **e.to_json()} for e in self.entries
        ]


def _frac(x):
    return Fraction(x)


class _Collector:
    def __init__(self):
        self.entries = []

    def add(self, name, statement, applicable, bound, enumerated, relation=">="):
        self.entries.append(
            AuditEntry(name, statement, bool(applicable), _frac(bound), _frac(enumerated), relation)
        )


# --------------------------------------------------------------------------- #


def audit_config(
    S: PointSet,
    *,
    spheres: bool | None = None,
    claims: dict | None = None,
    jobs: int = 1,
    max_n: int | None = None,
    max_quadruples: int | None = None,
) -> AuditReport:
    """Validate ``S``, enumerate its profiles once and evaluate every bound.

    ``spheres=None`` audits spheres for 3D sets with n <= SPHERE_AUTO_N;
    ``True`` forces it (subject to the enumeration cap).
    """
    col = _Collector()
    if S.dim == 2:
        hyps, profiles = _audit_plane(S, col, jobs)
    else:
        if spheres is None:
            spheres = len(S) <= SPHERE_AUTO_N
        hyps, profiles = _audit_space(S, col, jobs, spheres, max_n, max_quadruples)
    if claims:
        _audit_claims(S, claims, col, spheres=bool(spheres) if S.dim == 3 else False)
    return AuditReport(len(S), S.dim, hyps, profiles, col.entries)


def _audit_plane(S, col, jobs):
    n = len(S)
    lines = enumerate_objects(S, "lines", jobs=jobs)
    t = lines.profile()
    r = point_degrees(S)
    rich, _ = max_collinear(S)
    not_collinear = rich < n
    t23 = t[2] + t[3]

    col.add("pair_identity", "sum C(k,2) t_k = C(n,2)", True,
            comb(n, 2), t.weighted(lambda k: comb(k, 2)), "==")
    col.add("melchior", "t2 >= 3 + sum_{k>=3} (k-3) t_k", not_collinear, 0, B.melchior_slack(t))
    col.add("elliott_t23", "t2 + t3 >= (t + 3)/2", not_collinear, B.elliott_t23(t.total), t23)
    col.add("kelly_moser", "3t - 3 >= sum k t_k", not_collinear,
            t.weighted(lambda k: k), 3 * t.total - 3)
    col.add("incidence_t23", "t2 + t3 >= 2 + (1/6) sum i r_i", not_collinear, B.incidence_t23_lb(r), t23)
    col.add("point_line_incidences", "sum i r_i = sum k t_k", True,
            t.weighted(lambda k: k), r.incidences, "==")
    col.add("ordinary_lines_lb", "t2 >= rs - s(s-1), r on the richest line, s off it", True,
            B.ordinary_lines_lb(rich, n - rich), t[2])
    k = n - rich
    res = B.t23_lb(n, k)
    col.add("t23_lb", f"t2 + t3 >= k(n-k) - k(k-1), k={k}, {res.threshold}",
            res.applicable and k >= 0, res.value, t23)

    hyps = {"not_all_collinear": not_collinear, "max_collinear": rich}
    profiles = {"lines": t.to_json(), "point_degrees": r.to_json()}
    if n >= 3:
        circ = enumerate_objects(S, "circles", jobs=jobs).profile()
        profiles["circles"] = circ.to_json()
        col.add("triple_partition", "sum C(k,3) t_k + sum C(r,3) c_r = C(n,3)", True, comb(n, 3),
                t.weighted(lambda k: comb(k, 3)) + circ.weighted(lambda k: comb(k, 3)), "==")
        round_rich, _ = max_cocircular(S)
        hyps["max_cocircular"] = round_rich
        kk = n - max(rich, round_rich)
        res = B.circles_lb(n, kk)
        col.add("circles_lb", f"circles >= (1/8)(2k-1)(n^2-(2k+1)n), k={kk}, {res.threshold}",
                res.applicable, res.value, circ.total)
        res = B.elliott_circles_lb(n)
        general = not_collinear and round_rich < n
        col.add("elliott_circles_lb", f"circles >= 1 + C(n-1,2) - floor((n-1)/2), {res.threshold}",
                general and res.applicable, res.value, circ.total)
    return hyps, profiles


def _audit_space(S, col, jobs, spheres, max_n, max_quadruples):
    n = len(S)
    report = validate(S, ["no_3_collinear", "not_all_coplanar"])
    no3 = report["no_3_collinear"].satisfied
    spread = report["not_all_coplanar"].satisfied
    base = no3 and spread
    planes = enumerate_objects(S, "planes", jobs=jobs)
    m = planes.profile()
    P = pair_degrees(S)
    flat, _ = max_coplanar(S)
    hyps = {"no_3_collinear": no3, "not_all_coplanar": spread, "max_coplanar": flat}
    profiles = {"planes": m.to_json(), "pair_degrees": P.to_json()}

    col.add("triple_identity", "sum C(k,3) m_k = C(n,3)", no3,
            comb(n, 3), m.weighted(lambda k: comb(k, 3)), "==")
    col.add("pair_degree_identity", "sum i P_i = sum C(k,2) m_k", True,
            m.weighted(lambda k: comb(k, 2)), P.incidences, "==")

    if base:
        agree = 0
        worst = None
        for p in range(n):
            proj = project_from_point(S, p).line_profile(jobs=jobs)
            through = planes.through(p)
            if all(proj[k] == through[k + 1] for k in set(proj.counts) | {j - 1 for j in through.counts}):
                agree += 1
            slack = B.melchior_slack(proj)
            worst = slack if worst is None else min(worst, slack)
        col.add("projection_identity", "t_k(p) = m_{k+1}(p) at every anchor p", True, n, agree, "==")
        col.add("melchior_projections", "Melchior on every central projection (minimum slack)",
                True, 0, worst)

    m3, m4, mt = m[3], m[4], m.total
    col.add("plane_melchior_sum", "-3n >= sum k(k-4) m_k", base, 0, B.plane_melchior_slack(n, m))
    col.add("m3_lb", "m3 >= n + sum_{k>=4} k(k-4)/3 m_k", base, B.m3_lb(n, m), m3)
    col.add("m34_lb", "m3 + m4 >= (5m + 3n)/8", base, B.m34_lb(n, mt), m3 + m4)
    col.add("planes3_lb", "m3 >= (4/13) C(n,2)", base, B.planes3_lb(n), m3)
    col.add("total_planes_lemma", "6m >= 3n + sum C(k,2) m_k", base, 0,
            B.lemma_total_planes_slack(n, m))
    k = n - flat
    col.add("three_point_planes_lb", "m3 >= s C(r,2) - rs(s-1)/2, r on the richest plane",
            base, B.three_point_planes_lb(flat, k), m3)
    lemma = B.planes_total_lb(n, k)
    col.add("planes_lemma_lb", f"m >= 1 + k C(n-k,2) - C(k,2)(n-k)/2, exactly n-k={flat} coplanar",
            base and k >= 1, lemma.value, mt)
    col.add("planes_lemma_lb_floor", "m >= 1 + k C(n-k,2) - C(k,2) floor((n-k)/2)",
            base and k >= 1, B.planes_total_lb_floor(n, k), mt)
    col.add("planes_total_lb", f"m >= 1 + k C(n-k,2) - C(k,2)(n-k)/2, {lemma.threshold}",
            base and k >= 1 and lemma.applicable, lemma.value, mt)
    res = B.planes34_lb(n, k)
    col.add("planes34_lb", f"m3 + m4 >= k C(n-k,2) - (n-k) C(k,2), {res.threshold}",
            base and k >= 1 and res.applicable, res.value, m3 + m4)
    t_lines = comb(n, 2)  # no three collinear
    col.add("euler_planes", "m - t + n >= 2, n >= 59", base and n >= 59, 2, mt - t_lines + n)
    col.add("planes_vs_lines", "m >= t, n >= 225, no n-1 coplanar",
            base and n >= 225 and flat <= n - 2, t_lines, mt)

    if spheres:
        _audit_spheres(S, col, hyps, profiles, base, flat, max_n, max_quadruples)
    return hyps, profiles


def _audit_spheres(S, col, hyps, profiles, base, flat, max_n, max_quadruples):
    n = len(S)
    sph = enumerate_objects(S, "spheres", max_n=max_n, max_quadruples=max_quadruples)
    s = sph.profile()
    profiles["spheres"] = s.to_json()
    report = validate(S, ["no_4_cocircular"])
    no4 = report["no_4_cocircular"].satisfied
    round_rich = max((len(p) for p in sph.objects.values()), default=0)
    hyps.update(no_4_cocircular=no4, max_cospherical=round_rich)
    general = base and no4 and round_rich < n
    col.add("spheres4_lb", "s4 >= (9/208) C(n,3)", general and n >= 5, B.spheres4_lb(n), s[4])
    cap = B.orchard_upper(n - 1)
    col.add("spheres_total_lb", "spheres >= 1 + C(n-1,3) - t3orchard(n-1), n >= 883",
            general and n >= 883, B.spheres_total_lb(n, cap), s.total)
    col.add("spheres_generic_lb", "spheres >= (26n^3 - 363n^2 + 1132n)/120, n >= 883",
            general and n >= 883 and max(round_rich, flat) <= n - 4, B.spheres_generic_lb(n), s.total)
    if not (base and no4):
        return
    if round_rich == n - 1:
        rec = sphere_identity_check(S)
        col.add("sphere_identity", "spheres = 1 + C(n-1,3) - (3-point planes through p)", True,
                rec.expected, rec.spheres_total, "==")
    if flat == n - 1:
        anchor = _off_point(S, enumerate_objects(S, "planes"), n - 1)
        through = sph.through(anchor).total
        col.add("coplanar_one_off", "spheres through p >= C(n-1,3)", True, comb(n - 1, 3), through)
    for k in (2, 3):
        if round_rich == n - k or flat == n - k:
            rec = inclusion_exclusion_check(S)
            col.add(f"inclusion_exclusion_{k}", f"union of sigma_x = inclusion-exclusion, {rec.surface}",
                    True, rec.formula, rec.union, "==")
            col.add(f"special_surface_lb_{k}", f"spheres via off points, exactly n-{k} on a {rec.surface}",
                    True, rec.lower_bound, rec.union)
            break


def _space_line_counts(S):
    """Multiplicity -> number of lines, for a 3D set."""
    from .exact import _cross, normalize_int_vector

    pts = S.int_points
    groups = {}
    for i, j in combinations(range(len(pts)), 2):
        d = normalize_int_vector(_sub(pts[j], pts[i]), 3)
        key = (d, _cross(pts[i], d))
        groups.setdefault(key, set()).update((i, j))
    counts = {}
    for members in groups.values():
        counts[len(members)] = counts.get(len(members), 0) + 1
    return counts


def _audit_claims(S, claims, col, spheres):
    """Generator claims become equality entries: hypotheses hold, counts match."""
    k = claims.get("k")
    for name in claims.get("hypotheses", ()):
        if name == "not_all_cospherical" and not spheres:
            continue
        if name.startswith("max_") and (k is None or (name == "max_cospherical" and not spheres)):
            continue
        ok = validate(S, [name], k=k)[name].satisfied
        col.add(f"claim:{name}", f"generator claims hypothesis {name}", True, 1, int(ok), "==")
    checks = {
        "planes_total": ("planes", None),
        "planes_3": ("planes", 3),
        "circles_total": ("circles", None),
        "spheres_total": ("spheres", None),
        "lines_3": ("lines", 3),
    }
    expected = claims.get("expected", {})
    for name, (kind, mult) in checks.items():
        if name not in expected or (kind == "spheres" and not spheres):
            continue
        if kind == "lines" and S.dim == 3:
            counts = _space_line_counts(S)
            got = counts.get(mult, 0)
        else:
            prof = enumerate_objects(S, kind).profile()
            got = prof.total if mult is None else prof[mult]
        col.add(f"claim:{name}", f"generator claims {name} = {expected[name]}", True, expected[name], got, "==")


# --------------------------------------------------------------------------- #
# special-surface checks


def _off_point(S, enum, size):
    for pts in enum.objects.values():
        if len(pts) == size:
            rest = set(range(len(S))) - set(pts)
            return min(rest)
    raise HypothesisError(f"no object carries exactly {size} points")


@dataclass(frozen=True)
class SphereIdentityRecord:
    n: int
    anchor: int
    spheres_total: int
    planes_through_anchor: int
    expected: int
    direct_coplanar_triples: int

    @property
    def holds(self) -> bool:
        return self.spheres_total == self.expected and self.direct_coplanar_triples == self.planes_through_anchor

    def to_json(self):
        return {**self.__dict__, "holds": self.holds}


def _surface(S, on):
    """Smallest description of the sphere or plane carrying the indices ``on``."""
    pts = sorted(on)
    for quad in combinations(pts, 4):
        a, b, c, d = (S.int_points[i] for i in quad)
        if _det3(_sub(b, a), _sub(c, a), _sub(d, a)) != 0:
            return "sphere"
    return "plane"


def sphere_identity_check(S: PointSet, anchor=None, **kw) -> SphereIdentityRecord:
    """spheres = 1 + C(n-1,3) - (planes through p and three points of the sphere).

    Needs n-1 cospherical points, p off their sphere, no three collinear, no four
    cocircular. The left side comes from sphere enumeration; the subtracted
    term from plane enumeration, cross-checked by a direct triple scan.
    """
    n = len(S)
    report = validate(S, ["no_3_collinear", "no_4_cocircular"])
    for r in report.violations():
        raise HypothesisError(f"{r.name} violated", r.witness)
    sph = enumerate_objects(S, "spheres", **kw)
    big = [pts for pts in sph.objects.values() if len(pts) == n - 1]
    if anchor is not None:
        anchor = anchor if isinstance(anchor, int) else S.index_of(anchor)
        # with n = 5 every four points share a sphere; keep the one avoiding the anchor
        big = [pts for pts in big if anchor not in pts]
    if not big:
        raise HypothesisError("no sphere carries exactly n-1 points avoiding the anchor")
    sigma = big[0]
    off = (set(range(n)) - sigma).pop()
    planes = enumerate_objects(S, "planes").through(off)
    through = planes[4]  # p plus three sphere points; a plane meets the sphere in a circle
    pts = S.int_points
    direct = sum(
        1
        for a, b, c in combinations(sorted(sigma), 3)
        if _det3(_sub(pts[a], pts[off]), _sub(pts[b], pts[off]), _sub(pts[c], pts[off])) == 0
    )
    return SphereIdentityRecord(
        n, off, sph.profile().total, through, 1 + comb(n - 1, 3) - through, direct
    )


@dataclass(frozen=True)
class IntersectionRecord:
    surface: str
    k: int
    p: int
    q: int
    size_p: int
    size_q: int
    shared: int
    cap: Fraction
    direct_p: int  # C(n-k,3) minus surface triples coplanar with p, by direct scan

    @property
    def holds(self) -> bool:
        return self.shared <= self.cap and self.size_p == self.direct_p

    def to_json(self):
        out = dict(self.__dict__)
        out["cap"] = str(self.cap)
        out["holds"] = self.holds
        return out


def _special_surface(S, surface=None, **kw):
    """Indices of the richest sphere or plane and its kind."""
    n = len(S)
    best = ()
    kind = None
    if surface in (None, "sphere"):
        for pts in enumerate_objects(S, "spheres", **kw).objects.values():
            if len(pts) > len(best):
                best, kind = pts, "sphere"
    if surface in (None, "plane"):
        for pts in enumerate_objects(S, "planes").objects.values():
            if len(pts) > len(best):
                best, kind = pts, "plane"
    if len(best) >= n or len(best) < 3:
        raise HypothesisError("no proper special sphere or plane found")
    return frozenset(best), kind


def _sigma(S, spheres, x, surface_pts):
    return {
        key for key, pts in spheres.objects.items()
        if x in pts and len(pts & surface_pts) >= 3
    }


def intersection_bound_check(S: PointSet, p, q, surface: str | None = None, **kw) -> IntersectionRecord:
    """|sigma_p & sigma_q| <= (1/3) C(n-k,2) for two points off a surface with n-k points."""
    n = len(S)
    report = validate(S, ["no_3_collinear", "no_4_cocircular"])
    for r in report.violations():
        raise HypothesisError(f"{r.name} violated", r.witness)
    on, kind = _special_surface(S, surface, **kw)
    k = n - len(on)
    if k < 2:
        raise HypothesisError(f"need at least two points off the special {kind}, found {k}")
    p = p if isinstance(p, int) else S.index_of(p)
    q = q if isinstance(q, int) else S.index_of(q)
    if p in on or q in on or p == q:
        raise HypothesisError("p and q must be distinct points off the special surface", (p, q))
    spheres = enumerate_objects(S, "spheres", **kw)
    sp = _sigma(S, spheres, p, on)
    sq = _sigma(S, spheres, q, on)
    pts = S.int_points
    coplanar_with_p = sum(
        1
        for a, b, c in combinations(sorted(on), 3)
        if _det3(_sub(pts[a], pts[p]), _sub(pts[b], pts[p]), _sub(pts[c], pts[p])) == 0
    )
    return IntersectionRecord(
        kind, k, p, q, len(sp), len(sq), len(sp & sq), B.intersection_cap(n, k),
        comb(len(on), 3) - coplanar_with_p,
    )


@dataclass(frozen=True)
class InclusionExclusionRecord:
    surface: str
    k: int
    sizes: tuple
    pair_shared: tuple
    triple_shared: int
    union: int
    formula: int
    lower_bound: Fraction
    cap: Fraction

    @property
    def holds(self) -> bool:
        return (
            self.union == self.formula
            and self.union >= self.lower_bound
            and all(s <= self.cap for s in self.pair_shared)
        )

    def to_json(self):
        out = dict(self.__dict__)
        out["lower_bound"] = str(self.lower_bound)
        out["cap"] = str(self.cap)
        out["holds"] = self.holds
        return out


def inclusion_exclusion_check(S: PointSet, surface: str | None = None, **kw) -> InclusionExclusionRecord:
    """Spheres through an off point and three surface points, for exactly n-2 or n-3
    points on a sphere or plane: the union over off points, inclusion-exclusion,
    and the case lower bound."""
    n = len(S)
    on, kind = _special_surface(S, surface, **kw)
    k = n - len(on)
    if k not in (2, 3):
        raise HypothesisError(f"inclusion-exclusion cases need k in (2, 3), found k={k}")
    spheres = enumerate_objects(S, "spheres", **kw)
    off = sorted(set(range(n)) - on)
    sets = [_sigma(S, spheres, x, on) for x in off]
    union = set().union(*sets)
    pairs = tuple(len(a & b) for a, b in combinations(sets, 2))
    triple = len(set.intersection(*sets)) if k == 3 else 0
    formula = sum(len(s) for s in sets) - sum(pairs) + triple
    return InclusionExclusionRecord(
        kind, k, tuple(len(s) for s in sets), pairs, triple, len(union), formula,
        B.special_surface_spheres_lb(n, k, kind), B.intersection_cap(n, k),
    )


# --------------------------------------------------------------------------- #
# sweeps


@dataclass
class SweepResult:
    rows: list
    summary: dict

    def to_json(self):
        return {"schema_version": SCHEMA_VERSION, "summary": self.summary, "rows": self.rows}


def _trial(args):
    spec, audit_kw = args
    try:
        config = generate(spec)
    except InfeasibleError as exc:
        return {"spec": spec.to_json(), "status": "infeasible", "error": str(exc)}
    report = audit_config(config.points, claims=config.claims, **audit_kw)
    return {
        "spec": spec.to_json(),
        "status": "ok",
        "n": report.n,
        "entries": [e.to_json() for e in report.entries],
    }


def sweep(
    spec: GeneratorSpec | dict,
    n_range,
    trials: int = 1,
    seed: int = 0,
    *,
    jobs: int = 1,
    ks=None,
    **audit_kw,
) -> SweepResult:
    """Audit ``trials`` generated configurations per n (and per k if given).

    Trial seeds derive from ``seed``; rows come back in a fixed order whatever
    ``jobs`` is.
    """
    if isinstance(spec, dict):
        spec = GeneratorSpec.from_dict(spec)
    rng = random.Random(seed)
    tasks = []
    for n in n_range:
        for k in ks if ks is not None else (spec.k,):
            for _ in range(trials):
                tasks.append((replace(spec, n=n, k=k, seed=rng.randrange(2**31)), audit_kw))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_trial, tasks))
    else:
        rows = [_trial(t) for t in tasks]
    return SweepResult(rows, _summarize(rows))


def _summarize(rows):
    stats = {}
    for row in rows:
        for e in row.get("entries", ()):
            st = stats.setdefault(
                e["name"], {"applicable": 0, "pass": 0, "fail": 0, "informational": 0, "min_margin": None}
            )
            st[e["verdict"]] += 1
            if e["applicable"]:
                st["applicable"] += 1
                margin = Fraction(e["margin"])
                if st["min_margin"] is None or margin < Fraction(st["min_margin"]):
                    st["min_margin"] = str(margin)
    for st in stats.values():
        st["pass_rate"] = str(Fraction(st["pass"], st["applicable"])) if st["applicable"] else None
    return {
        "trials": len(rows),
        "infeasible": sum(1 for r in rows if r["status"] != "ok"),
        "bounds": stats,
    }
