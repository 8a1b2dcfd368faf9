"""Central projection from a point of the set, and circular / spherical inversion."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import (
    CanonPlane3,
    HypothesisError,
    IncidenceError,
    PointSet,
    _clear_denominators,
    as_point,
    normalize_int_vector,
)
from .incidence import Enumeration, IncidenceProfile, enumerate_objects, enumerate_projective_lines

__all__ = [
    "ProjectedSet",
    "CorrespondenceTable",
    "project_from_point",
    "invert",
    "invert_circular",
    "invert_spherical",
    "inversion_correspondence",
]


@dataclass(frozen=True)
class ProjectedSet:
    """The other n-1 points seen from ``anchor``, as primitive integer directions.

    Directions live in the projective plane, so ``d`` and ``-d`` are one point;
    a projective line through several of them is a plane of the original set
    through the anchor.
    """

    anchor: int
    anchor_point: tuple
    points: tuple  # ProjPoint: sign-normalized coprime integer triples
    back_map: tuple  # position in ``points`` -> index in the original set

    def __len__(self):
        return len(self.points)

    def lines(self, jobs: int = 1) -> Enumeration:
        return enumerate_projective_lines(self.points, jobs=jobs)

    def line_profile(self, jobs: int = 1) -> IncidenceProfile:
        return self.lines(jobs).profile()

    def plane_of(self, line_key) -> CanonPlane3:
        """The plane through the anchor whose trace is the projective line ``line_key``."""
        a, b, c = line_key
        p = self.anchor_point
        d = -(a * p[0] + b * p[1] + c * p[2])
        return CanonPlane3(*normalize_int_vector(_clear_denominators((a, b, c, d)), 3))

    def to_json(self):
        return {
            "anchor": self.anchor,
            "anchor_point": [str(c) for c in self.anchor_point],
            "directions": [list(d) for d in self.points],
            "back_map": list(self.back_map),
        }


def _anchor_index(S, p):
    if isinstance(p, int) and not isinstance(p, bool):
        if not 0 <= p < len(S):
            raise IncidenceError(f"anchor index {p} out of range for n={len(S)}")
        return p
    return S.index_of(p)


def project_from_point(S: PointSet, p) -> ProjectedSet:
    """Project S minus ``p`` from ``p``; ``p`` is an index or a point of S.

    Raises HypothesisError if two points share a direction, i.e. lie on a line with p.
    """
    if S.dim != 3:
        raise IncidenceError("projection needs a 3D point set")
    anchor = _anchor_index(S, p)
    pts = S.int_points
    origin = pts[anchor]
    seen = {}
    directions = []
    back = []
    for j, q in enumerate(pts):
        if j == anchor:
            continue
        d = normalize_int_vector(tuple(a - b for a, b in zip(q, origin)), 3)
        if d in seen:
            witness = (anchor, seen[d], j)
            raise HypothesisError(
                f"points {witness} are collinear; the projection from {anchor} is not injective",
                witness,
            )
        seen[d] = j
        directions.append(d)
        back.append(j)
    return ProjectedSet(anchor, S[anchor], tuple(directions), tuple(back))


def invert(S: PointSet, p) -> PointSet:
    """q -> p + (q - p) / |q - p|^2 for every q of S (unit radius, centre p not in S)."""
    center = as_point(p)
    if len(center) != S.dim:
        raise IncidenceError(f"centre has dimension {len(center)}, set has {S.dim}")
    if center in S:
        raise IncidenceError(f"inversion centre {tuple(map(str, center))} belongs to the set")
    out = []
    for q in S:
        d = [a - b for a, b in zip(q, center)]
        norm = sum(x * x for x in d)
        out.append(tuple(c + x / norm for c, x in zip(center, d)))
    return PointSet(out, dim=S.dim)


def invert_circular(S: PointSet, p) -> PointSet:
    if S.dim != 2:
        raise IncidenceError("circular inversion needs a 2D point set")
    return invert(S, p)


def invert_spherical(S: PointSet, p) -> PointSet:
    if S.dim != 3:
        raise IncidenceError("spherical inversion needs a 3D point set")
    return invert(S, p)


@dataclass
class CorrespondenceTable:
    kind: str  # "circle" or "sphere"
    anchor: int
    rows: list  # (object_key, partner_key, (r, r - 1))
    object_profile: dict  # multiplicity -> count, objects of S through the anchor
    partner_profile: dict  # multiplicity -> count, flats of the image missing the anchor
    bijective: bool
    image: PointSet

    def to_json(self):
        return [
            {
                "object_key": obj.to_json(),
                "partner_key": partner.to_json() if partner is not None else None,
                "multiplicities": list(mult),
            }
            for obj, partner, mult in self.rows
        ]


def inversion_correspondence(S: PointSet, p, kind: str | None = None, check_hypotheses: bool = True):
    """Match each circle (sphere) of S through ``p`` with the line (plane) of
    Inv_p(S minus p) that carries the images of its other points.

    Both sides are enumerated independently; ``bijective`` records whether the
    matching is one-to-one, onto the flats missing ``p``, with multiplicity r -> r-1.
    """
    kind = kind or ("circle" if S.dim == 2 else "sphere")
    if (kind, S.dim) not in (("circle", 2), ("sphere", 3)):
        raise IncidenceError(f"{kind} correspondence does not apply to a {S.dim}D set")
    anchor = _anchor_index(S, p)
    if check_hypotheses and S.dim == 3:
        from .validation import require

        require(S, ["no_3_collinear", "no_4_cocircular"])
    center = S[anchor]
    rest = [i for i in range(len(S)) if i != anchor]
    image = invert(S.without(anchor), center)
    to_image = {i: pos for pos, i in enumerate(rest)}

    round_kind, flat_kind = ("circles", "lines") if kind == "circle" else ("spheres", "planes")
    rounds = enumerate_objects(S, round_kind).objects_through(anchor)
    flats = {
        key: pts
        for key, pts in enumerate_objects(image, flat_kind).objects.items()
        if not key.contains(center)
    }
    by_members = {pts: key for key, pts in flats.items()}

    rows = []
    matched = set()
    for key, pts in rounds.items():
        mapped = frozenset(to_image[i] for i in pts if i != anchor)
        partner = by_members.get(mapped)
        if partner is not None:
            matched.add(partner)
        rows.append((key, partner, (len(pts), len(mapped))))

    def _profile(groups):
        counts = {}
        for pts in groups:
            counts[len(pts)] = counts.get(len(pts), 0) + 1
        return dict(sorted(counts.items()))

    bijective = (
        all(partner is not None for _, partner, _ in rows)
        and len(matched) == len(rows) == len(flats)
    )
    return CorrespondenceTable(
        kind,
        anchor,
        rows,
        _profile(rounds.values()),
        _profile(flats.values()),
        bijective,
        image,
    )

