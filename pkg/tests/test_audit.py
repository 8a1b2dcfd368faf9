import json
from fractions import Fraction as F
from math import comb

import pytest

from incidence_lab import (
    HypothesisError,
    PointSet,
    SCHEMA_VERSION,
    audit_config,
    canon_sphere,
    inclusion_exclusion_check,
    intersection_bound_check,
    sphere_identity_check,
    sweep,
    validate,
)
from incidence_lab.audit import AuditEntry
from incidence_lab.generators import GeneratorSpec, generate, second_intersection

UNIT4 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0)]


class TestEntry:
    def test_verdicts(self):
        assert AuditEntry("a", "", True, F(3), F(5)).verdict == "pass"
        assert AuditEntry("a", "", True, F(3), F(2)).verdict == "fail"
        assert AuditEntry("a", "", False, F(3), F(2)).verdict == "informational"
        assert AuditEntry("a", "", True, F(3), F(4), "==").verdict == "fail"
        assert AuditEntry("a", "", True, F(3), F(2), "<=").margin == 1

    def test_margin_exact(self):
        assert AuditEntry("a", "", True, F(112, 13), F(8)).margin == F(-8, 13)


class TestPlanar:
    def test_grid(self, grid3):
        r = audit_config(grid3)
        assert r["melchior"].verdict == "pass"
        assert r["elliott_t23"].bound == F(23, 2) and r["elliott_t23"].enumerated == 20
        assert r["incidence_t23"].bound == 10 and r["incidence_t23"].verdict == "pass"
        assert r.ok

    def test_elliott_five(self):
        config = generate(GeneratorSpec("elliott_counterexample", n=5))
        r = audit_config(config.points, claims=config.claims)
        assert r["claim:circles_total"].enumerated == 5 == 1 + comb(4, 2) - 2
        assert r["elliott_circles_lb"].verdict == "informational"
        assert r.ok

    def test_below_threshold_is_informational(self):
        config = generate(GeneratorSpec("near_pencil_line", n=12, k=1))
        r = audit_config(config.points)
        assert not r["t23_lb"].applicable and r["t23_lb"].verdict == "informational"


class TestSpace:
    def test_cube(self, cube):
        r = audit_config(cube)
        assert r["plane_melchior_sum"].margin == 0
        assert r["m3_lb"].margin == 0 and r["m3_lb"].verdict == "pass"
        assert r["total_planes_lemma"].margin == 0
        assert r["projection_identity"].verdict == "pass"

    def test_cube_three_point_planes_below_four_thirteenths(self, cube):
        # 8 three-point planes against (4/13) C(8,2) = 112/13: the seven projected
        # points from a vertex form the configuration with only three ordinary lines
        e = audit_config(cube)["planes3_lb"]
        assert e.bound == F(112, 13) and e.enumerated == 8
        assert e.verdict == "fail"

    def test_near_pencil(self):
        config = generate(GeneratorSpec("near_pencil_plane", n=10, k=1))
        r = audit_config(config.points, claims=config.claims)
        assert r["planes_lemma_lb"].enumerated == 37 and r["planes_lemma_lb"].margin == 0
        assert r.ok

    def test_json_schema(self, cube):
        doc = json.loads(json.dumps(audit_config(cube).to_json()))
        assert doc["schema_version"] == SCHEMA_VERSION
        for e in doc["entries"]:
            assert set(e) >= {"name", "statement", "applicable", "bound", "enumerated", "margin", "verdict"}
            F(e["margin"])

    def test_deterministic(self):
        a = generate(GeneratorSpec("random_constrained", n=10, dim=3, seed=4, flags=frozenset({"no_3_collinear"})))
        b = generate(GeneratorSpec("random_constrained", n=10, dim=3, seed=4, flags=frozenset({"no_3_collinear"})))
        assert audit_config(a.points).to_json() == audit_config(b.points).to_json()


class TestSphereIdentity:
    def test_generic_anchor(self):
        S = PointSet(UNIT4 + [(2, 3, 5)])
        rec = sphere_identity_check(S, anchor=4)
        assert rec.spheres_total == 5 == 1 + 4 - 0 and rec.holds

    def test_anchor_on_a_triple_plane(self):
        S = PointSet(UNIT4 + [(2, 3, -4)])  # on x + y + z = 1
        rec = sphere_identity_check(S, anchor=4)
        assert rec.planes_through_anchor == 1
        assert rec.spheres_total == 4 and rec.holds

    def test_coplanar_analog(self):
        S = PointSet([(0, 0, 0), (1, 0, 0), (0, 1, 0), (3, 2, 0), (1, 1, 5)])
        r = audit_config(S)
        assert r["coplanar_one_off"].enumerated == 4 == comb(4, 3)

    def test_anchor_on_sphere_rejected(self):
        config = generate(GeneratorSpec("cospherical_plus_k", n=8, k=1, seed=0))
        with pytest.raises(HypothesisError):
            sphere_identity_check(config.points, anchor=0)

    @pytest.mark.parametrize("seed", range(4))
    def test_generated(self, seed):
        config = generate(GeneratorSpec("cospherical_plus_k", n=11, k=1, seed=seed, through_planes=seed % 4))
        rec = sphere_identity_check(config.points)
        assert rec.holds and rec.spheres_total == config.expected["spheres_total"]


class TestIntersections:
    def test_generic(self):
        config = generate(GeneratorSpec("cospherical_plus_k", n=8, k=2, seed=0, flags=frozenset({"generic"})))
        rec = intersection_bound_check(config.points, 6, 7)
        assert rec.shared == 0 and rec.cap == 5 and rec.holds

    def test_constructed_shared_sphere(self):
        surface = list(generate(GeneratorSpec("sphere_rational", n=6)).points)
        p = (F(1, 3), F(2, 7), F(5, 2))
        a, b, c = surface[:3]
        sigma = canon_sphere(p, a, b, c)
        for direction in [(1, 2, 3), (2, -1, 1), (3, 1, -2), (1, -3, 2)]:
            q = second_intersection(sigma.center, sigma.radius_sq, p, direction)
            S = PointSet(surface + [p, q])
            if validate(S, ["no_3_collinear", "no_4_cocircular"]).ok:
                break
        else:
            pytest.fail("no valid q found")
        rec = intersection_bound_check(S, 6, 7, surface="sphere")
        assert rec.shared == 1 and rec.holds

    def test_coplanar_variant(self):
        config = generate(GeneratorSpec("coplanar_plus_k", n=9, k=2, seed=3))
        rec = intersection_bound_check(config.points, 7, 8, surface="plane")
        assert rec.surface == "plane" and rec.shared <= rec.cap and rec.holds

    def test_requires_off_points(self):
        config = generate(GeneratorSpec("cospherical_plus_k", n=8, k=2, seed=0))
        with pytest.raises(HypothesisError):
            intersection_bound_check(config.points, 0, 7)


@pytest.mark.parametrize("name, k", [("cospherical_plus_k", 2), ("cospherical_plus_k", 3),
                                     ("coplanar_plus_k", 2), ("coplanar_plus_k", 3)])
def test_inclusion_exclusion(name, k):
    for seed in range(2):
        config = generate(GeneratorSpec(name, n=10 + k, k=k, seed=seed))
        rec = inclusion_exclusion_check(config.points)
        assert rec.k == k and rec.holds


class TestSweep:
    def test_random_2d_melchior(self):
        spec = GeneratorSpec("random_constrained", dim=2, flags=frozenset({"not_all_collinear"}))
        res = sweep(spec, range(5, 31, 5), trials=3, seed=1)
        st = res.summary["bounds"]["melchior"]
        assert st["applicable"] == 18 and st["pass_rate"] == "1"

    def test_random_3d_projection_identity(self):
        spec = GeneratorSpec("random_constrained", dim=3, flags=frozenset({"no_3_collinear", "not_all_coplanar"}))
        res = sweep(spec, range(6, 21, 2), trials=1, seed=2, spheres=False)
        assert res.summary["bounds"]["projection_identity"]["pass_rate"] == "1"

    def test_deterministic_and_parallel(self):
        spec = GeneratorSpec("random_constrained", dim=2, flags=frozenset({"no_3_collinear"}))
        a = sweep(spec, [6, 9], trials=2, seed=9)
        b = sweep(spec, [6, 9], trials=2, seed=9, jobs=2)
        assert a.to_json() == b.to_json()

    def test_infeasible_rows(self):
        spec = GeneratorSpec("near_pencil_plane", k=3)
        res = sweep(spec, [5, 12], trials=1, seed=0, spheres=False)
        assert [r["status"] for r in res.rows] == ["infeasible", "ok"]
        assert res.summary["infeasible"] == 1

    def test_near_pencil_threshold_k1(self):
        res = sweep(GeneratorSpec("near_pencil_plane", k=1), [59], seed=0, spheres=False, jobs=2)
        st = res.summary["bounds"]["planes_total_lb"]
        assert st["applicable"] == 1 and st["pass"] == 1 and st["min_margin"] == "0"

    @pytest.mark.slow
    def test_near_pencil_threshold_k2(self):
        res = sweep(GeneratorSpec("near_pencil_plane", k=2), [225], seed=0, spheres=False, jobs=4)
        st = res.summary["bounds"]["planes_total_lb"]
        assert st["applicable"] == 1 and st["pass"] == 1
