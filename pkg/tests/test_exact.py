from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from incidence_lab import (
    DegenerateError,
    DuplicatePointError,
    PointSet,
    as_rational,
    canon_circle,
    canon_line,
    canon_plane,
    canon_sphere,
    cocircular4,
    collinear3,
    coplanar4,
    cospherical5,
)
from incidence_lab.exact import CanonCircle2, CanonSphere3

F = Fraction


class TestCoercion:
    def test_strings_and_ints(self):
        assert as_rational("-1/2") == F(-1, 2)
        assert as_rational(3) == 3
        assert as_rational(np.int64(7)) == 7

    @pytest.mark.parametrize("bad", [0.5, True, None, [1]])
    def test_rejects_inexact(self, bad):
        with pytest.raises(TypeError):
            as_rational(bad)


@pytest.mark.parametrize(
    "pts, expected",
    [
        (((0, 0), (1, 1), (2, 2)), True),
        (((0, 0), (1, 0), (0, 1)), False),
        (((0, 0), (1, 2), (2, 4)), True),
    ],
)
def test_collinear3(pts, expected):
    assert collinear3(*pts) is expected


@pytest.mark.parametrize(
    "pts, expected",
    [
        (((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)), True),
        (((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)), False),
        (((0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 3, 0)), True),
    ],
)
def test_coplanar4(pts, expected):
    assert coplanar4(*pts) is expected


@pytest.mark.parametrize(
    "pts, expected",
    [
        (((1, 0), (0, 1), (-1, 0), (0, -1)), True),
        (((0, 0), (1, 0), (1, 1), (0, 1)), True),
        (((0, 0), (1, 0), (0, 1), (2, 2)), False),
    ],
)
def test_cocircular4(pts, expected):
    assert cocircular4(*pts) is expected


def test_cocircular4_rejects_collinear_triple():
    with pytest.raises(DegenerateError):
        cocircular4((0, 0), (1, 1), (2, 2), (0, 1))


def test_duplicates_rejected():
    with pytest.raises(DuplicatePointError):
        collinear3((0, 0), (0, 0), (1, 1))
    with pytest.raises(DuplicatePointError):
        PointSet([(0, 0), (1, 1), ("0/3", 0)])


class TestCospherical:
    def test_unit_sphere(self):
        assert cospherical5((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1))

    def test_cocircular_four_plus_pole(self):
        assert cospherical5((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, -1))

    def test_raised_apex_still_on_a_sphere(self):
        # centre (0,0,3/4), radius^2 25/16 passes through all five
        pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 2)]
        assert cospherical5(*pts)
        S = canon_sphere(*pts[:3], pts[4])
        assert S == CanonSphere3((0, 0, F(3, 4)), F(25, 16))
        assert all(S.contains(p) for p in pts)

    def test_off_sphere(self):
        assert not cospherical5((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))

    def test_coplanar_five_degenerate(self):
        with pytest.raises(DegenerateError):
            cospherical5((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (2, 5, 0))


class TestCanonicalKeys:
    def test_line(self):
        assert (canon_line((0, 0), (2, 2)).a, canon_line((0, 0), (2, 2)).b, canon_line((0, 0), (2, 2)).c) == (1, -1, 0)

    def test_circle(self):
        assert canon_circle((1, 0), (0, 1), (-1, 0)) == CanonCircle2((0, 0), 1)

    def test_sphere(self):
        assert canon_sphere((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)) == CanonSphere3((0, 0, 0), 1)

    def test_degenerate(self):
        with pytest.raises(DegenerateError):
            canon_plane((0, 0, 0), (1, 1, 1), (2, 2, 2))
        with pytest.raises(DegenerateError):
            canon_circle((0, 0), (1, 1), (3, 3))
        with pytest.raises(DegenerateError):
            canon_sphere((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))

    def test_rational_circle(self):
        key = canon_circle((F(1, 2), 0), (0, F(1, 2)), (F(-1, 2), 0))
        assert key == CanonCircle2((0, 0), F(1, 4))

    def test_sphere_permutations(self):
        pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (F(3, 5), F(4, 5), 0)]
        keys = {canon_sphere(*perm) for perm in permutations(pts)}
        assert len(keys) == 1


small = st.integers(-6, 6)
frac = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5))


@given(st.tuples(frac, frac), st.tuples(frac, frac), st.integers(-4, 4), st.integers(-4, 4))
def test_line_key_same_for_any_pair_on_line(p, q, s, t):
    if p == q or s == t:
        return
    a = tuple(pi + s * (qi - pi) for pi, qi in zip(p, q))
    b = tuple(pi + t * (qi - pi) for pi, qi in zip(p, q))
    assert canon_line(p, q) == canon_line(a, b) == canon_line(b, a)


@given(st.lists(st.tuples(small, small), min_size=4, max_size=4, unique=True))
def test_circle_key_permutation_invariant(pts):
    if any(collinear3(*trio) for trio in [pts[:3]]):
        return
    key = canon_circle(*pts[:3])
    assert all(key.contains(p) for p in pts[:3])
    assert {canon_circle(*perm) for perm in permutations(pts[:3])} == {key}


@given(st.lists(st.tuples(small, small, small), min_size=4, max_size=4, unique=True))
def test_sphere_key_contains_its_points(pts):
    if coplanar4(*pts):
        return
    key = canon_sphere(*pts)
    assert all(key.contains(p) for p in pts)
    assert canon_sphere(*reversed(pts)) == key


class TestPointSet:
    def test_scaled_integers(self):
        S = PointSet([(F(1, 2), 0), (0, F(1, 3))])
        assert S.scale == 6
        assert S.int_points == ((3, 0), (0, 2))

    def test_index_and_membership(self):
        S = PointSet([(0, 0), (1, 2)])
        assert S.index_of(("1", "2")) == 1
        assert (0, 0) in S and (5, 5) not in S

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            PointSet([(0, 0), (1, 2, 3)])
