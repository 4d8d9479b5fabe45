"""Lens/shutter geometry: separation limits, angles and pixel mapping."""

import math

import numpy as np
import pytest

from shuttervlc.geometry import (EmitterPlacement, InvalidSetupError,
                                 OpticalSetup, default_placement,
                                 map_emitters_to_pixels, min_angle,
                                 min_separation)

PROTO = dict(d=0.036, S1=0.155, S2=0.082, BFL=0.0375, grid_rows=1, grid_cols=2)


def test_prototype_separation_and_angle():
    setup = OpticalSetup(**PROTO)
    assert min_separation(setup) * 100 == pytest.approx(14.88, abs=0.005)
    assert min_angle(setup) == pytest.approx(51.2, abs=0.1)


def test_separation_matches_image_scale_oracle():
    # independent check: two emitters separated by exactly h must image
    # exactly one pixel pitch apart (similar-triangles magnification)
    rng = np.random.default_rng(42)
    for _ in range(100):
        d = rng.uniform(0.001, 0.1)
        bfl = rng.uniform(0.01, 0.2)
        s1 = bfl * rng.uniform(1.5, 20.0)
        setup = OpticalSetup(d=d, S1=s1, S2=s1 / 2, BFL=bfl)
        h = min_separation(setup)
        image_gap = h * setup.BFL / setup.S1
        assert image_gap == pytest.approx(d, rel=1e-12)
        # and the angle subtended at the lens by that separation
        expected_angle = math.degrees(2 * math.atan(h / (2 * s1)))
        assert min_angle(setup) == pytest.approx(expected_angle, rel=1e-12)


def test_separation_boundary_feasibility_oracle():
    # emitters exactly h apart (centered per pixel) map to distinct pixels;
    # shrinking the separation below h collapses them onto one pixel
    setup = OpticalSetup(**PROTO)
    h = min_separation(setup)
    good = default_placement(setup, 2)
    x0, x1 = good.positions[0][0], good.positions[1][0]
    assert x1 - x0 == pytest.approx(h, rel=1e-12)
    assert map_emitters_to_pixels(setup, good).feasible

    squeezed = EmitterPlacement(((x0 + 0.6 * h, good.positions[0][1]),
                                 (x1, good.positions[1][1])))
    result = map_emitters_to_pixels(setup, squeezed)
    assert not result.feasible
    assert "same pixel" in result.reason


def test_default_placement_maps_to_consecutive_pixels():
    setup = OpticalSetup(d=0.01, S1=0.2, S2=0.05, BFL=0.05,
                         grid_rows=1, grid_cols=4)
    placement = default_placement(setup, 4)
    result = map_emitters_to_pixels(setup, placement)
    assert result.feasible
    assert result.mapping == (0, 1, 2, 3)


def test_mapping_half_open_boundary():
    # an image landing exactly on a cell edge belongs to the higher pixel
    setup = OpticalSetup(d=0.01, S1=0.1, S2=0.05, BFL=0.05,
                         grid_rows=1, grid_cols=2)
    scale = setup.BFL / setup.S1
    # image x = width/2 -> boundary between col 0 and col 1 is at image 0.01
    boundary_emitter_x = 0.0  # images to grid center, i.e. the col boundary
    placement = EmitterPlacement(((boundary_emitter_x, -0.004 / scale),))
    result = map_emitters_to_pixels(setup, placement)
    assert result.feasible
    assert result.mapping == (1,)


def test_mapping_off_grid_infeasible():
    setup = OpticalSetup(**PROTO)
    far = EmitterPlacement(((10.0, 0.0),))
    result = map_emitters_to_pixels(setup, far)
    assert not result.feasible
    assert "outside" in result.reason


def test_invalid_setups_rejected():
    with pytest.raises(InvalidSetupError):
        OpticalSetup(d=-0.01, S1=0.1, S2=0.05, BFL=0.05)
    with pytest.raises(InvalidSetupError):
        OpticalSetup(d=0.01, S1=0.04, S2=0.05, BFL=0.05)   # S1 <= BFL
    with pytest.raises(InvalidSetupError):
        OpticalSetup(d=0.01, S1=0.1, S2=0.05, BFL=0.05, grid_cols=0)
    with pytest.raises(InvalidSetupError):
        EmitterPlacement(((0.0, 0.0), (0.0, 0.0)))
    with pytest.raises(InvalidSetupError):
        default_placement(OpticalSetup(**PROTO), 3)   # only 2 columns


def test_grid_pixel_count():
    setup = OpticalSetup(d=0.01, S1=0.1, S2=0.05, BFL=0.05,
                         grid_rows=3, grid_cols=5)
    assert setup.n_pixels == 15
