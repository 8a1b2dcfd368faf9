from fractions import Fraction as F
from math import comb

import pytest

from incidence_lab import (
    InfeasibleError,
    PointSet,
    circle_profile,
    enumerate_objects,
    line_profile,
    plane_profile,
    sphere_profile,
    validate,
)
from incidence_lab.generators import (
    GeneratorSpec,
    generate,
    second_intersection,
    zero_sum_triples,
)

SPECS = [
    GeneratorSpec("near_pencil_line", n=n, k=k, seed=s)
    for n, k in [(5, 1), (9, 2), (12, 3)] for s in range(2)
] + [
    GeneratorSpec("near_pencil_plane", n=n, k=k, seed=s)
    for n, k in [(8, 1), (10, 1), (11, 2), (13, 3)] for s in range(2)
] + [
    GeneratorSpec("coplanar_plus_k", n=n, k=k, seed=s)
    for n, k in [(7, 1), (9, 2), (11, 3)] for s in range(2)
] + [
    GeneratorSpec("cospherical_plus_k", n=n, k=k, seed=s, through_planes=tp)
    for n, k, tp in [(8, 1, 0), (9, 1, 2), (10, 1, 3), (9, 2, 0), (10, 3, 0)] for s in range(2)
] + [
    GeneratorSpec("random_constrained", n=n, dim=d, seed=s, flags=frozenset(f))
    for n, d, f in [
        (10, 2, {"no_3_collinear"}),
        (9, 2, {"no_3_collinear", "no_4_cocircular"}),
        (12, 3, {"no_3_collinear", "not_all_coplanar"}),
        (10, 3, {"no_3_collinear", "no_4_cocircular", "not_all_coplanar"}),
    ]
    for s in range(3)
] + [
    GeneratorSpec("two_skew_lines", n=n) for n in (6, 7, 10)
] + [
    GeneratorSpec("desargues"),
    GeneratorSpec("cube"),
    GeneratorSpec("cubic_orchard", n=9),
    GeneratorSpec("circle_rational", n=7),
    GeneratorSpec("sphere_rational", n=8),
] + [GeneratorSpec("elliott_counterexample", n=n) for n in (4, 5, 8, 11)]


def _count(S, kind, mult=None):
    prof = enumerate_objects(S, kind).profile()
    return prof.total if mult is None else prof[mult]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.name}-{s.n}-{s.k}-{s.seed}")
def test_claims_hold(spec):
    config = generate(spec)
    S = config.points
    if spec.n is not None:
        assert len(S) == spec.n
    report = validate(S, config.hypotheses, k=config.claims.get("k"))
    assert report.ok, report.to_json(S)
    exp = config.expected
    kinds = {"planes_total": ("planes", None), "planes_3": ("planes", 3),
             "circles_total": ("circles", None), "spheres_total": ("spheres", None)}
    for name, (kind, mult) in kinds.items():
        if name in exp:
            assert _count(S, kind, mult) == exp[name], name
    if "lines_3" in exp and S.dim == 2:
        assert line_profile(S)[3] == exp["lines_3"]


def test_generation_is_deterministic():
    for spec in SPECS[:20]:
        assert generate(spec).points == generate(spec).points


def test_dict_and_name_forms():
    assert generate({"name": "cube"}).points == generate("cube").points
    spec = GeneratorSpec.from_dict({"name": "random_constrained", "n": 5, "flags": ["no_3_collinear"]})
    assert spec.flags == frozenset({"no_3_collinear"})
    assert GeneratorSpec.from_dict(spec.to_json()) == spec


def test_cubic_orchard():
    config = generate(GeneratorSpec("cubic_orchard", values=tuple(range(-4, 5))))
    assert len(config.points) == 9
    assert zero_sum_triples(range(-4, 5)) == 8
    assert line_profile(config.points)[3] == 8


def test_elliott_five():
    S = generate(GeneratorSpec("elliott_counterexample", n=5)).points
    expected = {(1, 0), (-1, 0), (F(3, 5), F(4, 5)), (F(-3, 5), F(4, 5)), (0, F(1, 2))}
    assert set(S) == expected
    assert circle_profile(S).total == 1 + comb(4, 2) - 2 == 5


def test_elliott_chords():
    for n in range(4, 16):
        config = generate(GeneratorSpec("elliott_counterexample", n=n))
        S = config.points
        anchor = config.claims["expected"]["anchor"]
        chords = enumerate_objects(S, "lines").through(anchor)[3]
        assert chords == (n - 1) // 2
        assert circle_profile(S).total == 1 + comb(n - 1, 2) - chords


def test_cospherical_generic_total():
    config = generate(GeneratorSpec("cospherical_plus_k", n=9, k=1, flags=frozenset({"generic"})))
    assert sphere_profile(config.points).total == 1 + comb(8, 3)


def test_near_pencil_plane_equality():
    assert plane_profile(generate(GeneratorSpec("near_pencil_plane", n=10, k=1)).points).total == 37


def test_second_intersection():
    q = second_intersection((0, 0), 1, (1, 0), (-1, F(1, 2)))
    assert q == (F(-3, 5), F(4, 5))


def test_infeasible():
    with pytest.raises(InfeasibleError):
        generate(GeneratorSpec("near_pencil_plane", n=4, k=2))
    with pytest.raises(InfeasibleError):
        generate(GeneratorSpec("random_constrained", n=40, dim=2, flags=frozenset({"no_3_collinear"}), max_tries=3))
    with pytest.raises(ValueError):
        generate(GeneratorSpec("nonexistent"))
