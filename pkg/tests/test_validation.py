import pytest

from incidence_lab import HypothesisError, PointSet, require, validate
from incidence_lab.validation import max_collinear, max_coplanar, max_cospherical


def test_grid_collinear_witness(grid3):
    r = validate(grid3, ["no_3_collinear"])["no_3_collinear"]
    assert not r.satisfied
    assert [grid3[i] for i in r.witness] == [(0, 0), (0, 1), (0, 2)] or len(r.witness) == 3
    pts = {grid3[i] for i in r.witness}
    assert len(pts) == 3


def test_grid_witness_is_lexicographic_first():
    S = PointSet([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)])
    r = validate(S, ["no_3_collinear"])["no_3_collinear"]
    assert [S[i] for i in r.witness] == [(0, 0), (1, 0), (2, 0)]


def test_square_cocircular(square):
    r = validate(square, ["no_4_cocircular"])["no_4_cocircular"]
    assert not r.satisfied and sorted(r.witness) == [0, 1, 2, 3]


def test_tetrahedron_not_coplanar(tetra):
    assert validate(tetra, ["not_all_coplanar", "no_3_collinear", "no_4_cocircular"]).ok


def test_max_hypotheses_need_k(grid3):
    with pytest.raises(ValueError):
        validate(grid3, ["max_collinear"])
    report = validate(grid3, ["max_collinear"], k=6)
    assert report.ok
    assert not validate(grid3, ["max_collinear"], k=7).ok


def test_require_raises_with_witness(grid3):
    with pytest.raises(HypothesisError) as info:
        require(grid3, ["no_3_collinear"])
    assert len(info.value.witness) == 3


def test_measures(cube):
    assert max_coplanar(cube)[0] == 4
    assert max_collinear(cube)[0] == 2
    assert max_cospherical(cube)[0] == 8


def test_report_json(grid3):
    doc = validate(grid3, ["no_3_collinear", "not_all_collinear"]).to_json(grid3)
    assert doc["ok"] is False
    bad = next(h for h in doc["hypotheses"] if h["name"] == "no_3_collinear")
    assert all(isinstance(c, str) for p in bad["witness_points"] for c in p)


def test_unknown_hypothesis(grid3):
    with pytest.raises(ValueError):
        validate(grid3, ["no_5_coconic"])
