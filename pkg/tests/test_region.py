import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plpareto import build_polygon, contains, envelope, key_points, polygonize_ellipse, x_vertices
from plpareto.errors import NegativeCoordinate, NotPSD, OutOfDomain

coord = st.floats(0.0, 50.0, allow_nan=False, allow_infinity=False)
points = st.lists(st.tuples(coord, coord), min_size=1, max_size=20)


def test_negative_coordinate_rejected():
    with pytest.raises(NegativeCoordinate):
        build_polygon([(1.0, -2.0)])


def test_single_point_is_degenerate():
    reg = build_polygon([(3.0, 4.0)])
    assert reg.degenerate
    assert reg.vertices == ((3.0, 4.0),)
    assert envelope(reg, 3.0, "lower") == 4.0 == envelope(reg, 3.0, "upper")


def test_collinear_points_become_segment():
    reg = build_polygon([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)])
    assert reg.degenerate
    assert set(reg.vertices) == {(0.0, 0.0), (2.0, 2.0)}


def test_duplicate_points_collapse():
    reg = build_polygon([(1, 1)] * 5 + [(2, 2)] * 3)
    assert reg.degenerate
    assert set(reg.vertices) == {(1.0, 1.0), (2.0, 2.0)}


def test_square_hull_ccw_and_envelopes():
    reg = build_polygon([(0, 0), (2, 0), (1, 1), (2, 2), (0, 2), (1, 0.5)])
    assert set(reg.vertices) == {(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)}
    assert envelope(reg, 1.0, "lower") == 0.0
    assert envelope(reg, 1.0, "upper") == 2.0
    with pytest.raises(OutOfDomain):
        envelope(reg, 3.0, "lower")


def test_envelope_cap():
    reg = build_polygon([(0, 0), (2, 0), (2, 30), (0, 30)])
    assert envelope(reg, 1.0, "upper", cap=20.0) == 20.0


@given(points)
@settings(max_examples=200, deadline=None)
def test_hull_contains_all_inputs(pts):
    reg = build_polygon(pts)
    for x, y in pts:
        assert contains(reg, x, y, tol=1e-6)


@given(points)
@settings(max_examples=100, deadline=None)
def test_envelope_order(pts):
    reg = build_polygon(pts)
    for t in np.linspace(reg.x_lo, reg.x_hi, 17):
        assert envelope(reg, float(t), "lower") <= envelope(reg, float(t), "upper") + 1e-9


def test_key_points_sum_region(sum_region):
    kp = key_points(sum_region, 20.0)
    assert kp.L == (16.0, 4.0)
    assert kp.H == (9.0, 16.0)
    # the whole lower edge from (4,16) to (16,4) lies on x + y = 20
    assert [p[0] for p in kp.r0] == [4.0, 16.0]
    assert x_vertices(sum_region, 20.0) == (4.0, 9.0, 16.0)


def test_key_points_diff_region(diff_region):
    kp = key_points(diff_region, 20.0)
    assert kp.L == (4.0, 4.0)
    assert kp.H == (16.0, 16.0)
    assert len(kp.r0) == 1 and abs(kp.r0[0][0] - 10.0) < 1e-9
    assert x_vertices(diff_region, 20.0) == (4.0, 10.0, 11.0, 16.0)


def test_key_points_high_region_caps_h():
    # upper envelope exceeds m; H sits where the envelope still reaches m
    reg = build_polygon([(0, 0), (10, 0), (10, 30), (0, 30)])
    kp = key_points(reg, 20.0)
    assert kp.H == (10.0, 20.0)


def test_polygonize_ellipse_circle():
    reg = polygonize_ellipse((10.0, 10.0), [[2.0, 0.0], [0.0, 2.0]], segments=64)
    assert not reg.degenerate
    for x, y in reg.vertices:
        assert abs(math.hypot(x - 10, y - 10) - 2.0) < 1e-9


def test_polygonize_ellipse_clips_quadrant():
    reg = polygonize_ellipse((1.0, 1.0), [[3.0, 0.0], [0.0, 3.0]], segments=64)
    assert all(x >= -1e-12 and y >= -1e-12 for x, y in reg.vertices)


def test_polygonize_ellipse_zero_shape_is_point():
    reg = polygonize_ellipse((5.0, 6.0), [[0.0, 0.0], [0.0, 0.0]])
    assert reg.degenerate and reg.vertices == ((5.0, 6.0),)


def test_polygonize_ellipse_rejects_bad_shape():
    with pytest.raises(NotPSD):
        polygonize_ellipse((5.0, 5.0), [[1.0, 0.5], [0.4, 1.0]])
    with pytest.raises(NotPSD):
        polygonize_ellipse((5.0, 5.0), [[1.0, 2.0], [2.0, 1.0]])


def test_contains_boundary_and_outside():
    reg = build_polygon([(0, 0), (4, 0), (4, 4), (0, 4)])
    assert contains(reg, 2.0, 0.0)
    assert contains(reg, 4.0, 4.0)
    assert not contains(reg, 4.1, 4.1)
