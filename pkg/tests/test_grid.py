"""Panel grid: cell numbering, point ownership, ray intersection."""

import math
import random

import pytest

from shelfgaze.errors import IndexOutOfRangeError, NoIntersectionError, OutOfPanelError
from shelfgaze.geometry import ShelfConfig
from shelfgaze.grid import (
    GazeRay,
    GridSpec,
    PlanePoint,
    cell_center,
    from_camera_coords,
    point_cell_json,
    point_to_cell,
    ray_to_cell,
    to_camera_coords,
)

GRID = GridSpec.from_shelf(ShelfConfig())


def test_spec_from_shelf():
    assert GRID.cell_w_cm == 17.0
    assert GRID.cell_h_cm == 23.0
    assert GRID.cell_count == 36
    assert GRID.camera_point == (51.0, 55.5)


def test_spec_requires_exact_tiling():
    with pytest.raises(ValueError):
        GridSpec(
            panel_width_cm=102.0,
            panel_height_cm=138.0,
            rows=6,
            cols=6,
            cell_w_cm=16.0,
            cell_h_cm=23.0,
            camera_point=(51.0, 55.5),
        )


def test_cell_center_frozen_corners():
    assert cell_center(GRID, 1) == PlanePoint(8.5, 11.5)
    assert cell_center(GRID, 6) == PlanePoint(93.5, 11.5)
    assert cell_center(GRID, 19) == PlanePoint(8.5, 80.5)
    assert cell_center(GRID, 36) == PlanePoint(93.5, 126.5)


def test_cell_center_index_bounds():
    with pytest.raises(IndexOutOfRangeError):
        cell_center(GRID, 0)
    with pytest.raises(IndexOutOfRangeError):
        cell_center(GRID, 37)


def test_center_roundtrip_all_cells():
    for index in range(1, 37):
        assert point_to_cell(GRID, cell_center(GRID, index)) == index


def test_point_ownership_at_edges():
    assert point_to_cell(GRID, PlanePoint(0.0, 0.0)) == 1
    # Interior grid lines belong to the cell on their right/below.
    assert point_to_cell(GRID, PlanePoint(17.0, 0.0)) == 2
    assert point_to_cell(GRID, PlanePoint(0.0, 23.0)) == 7
    # The panel's outer right/bottom edges close the last column and row.
    assert point_to_cell(GRID, PlanePoint(102.0, 0.0)) == 6
    assert point_to_cell(GRID, PlanePoint(0.0, 138.0)) == 31
    assert point_to_cell(GRID, PlanePoint(102.0, 138.0)) == 36


def test_point_outside_panel_rejected():
    for x, y in ((-0.001, 10.0), (102.001, 10.0), (10.0, -0.001), (10.0, 138.001)):
        with pytest.raises(OutOfPanelError):
            point_to_cell(GRID, PlanePoint(x, y))


def test_millimeter_lattice_partitions_exactly():
    # Cell ownership factorizes into independent column(x) and row(y) maps,
    # so counting each axis on a 1 mm lattice proves the full 2D tiling has
    # no gaps or overlaps.
    cols = [point_to_cell(GRID, PlanePoint(i / 10.0, 0.0)) - 1 for i in range(1021)]
    rows = [(point_to_cell(GRID, PlanePoint(0.0, j / 10.0)) - 1) // 6 for j in range(1381)]
    col_counts = [cols.count(c) for c in range(6)]
    row_counts = [rows.count(r) for r in range(6)]
    assert col_counts == [170, 170, 170, 170, 170, 171]
    assert row_counts == [230, 230, 230, 230, 230, 231]
    assert sum(col_counts) * sum(row_counts) == 1021 * 1381

    # Spot-check that 2D lookups really are the product of the axis maps.
    rng = random.Random(99)
    for _ in range(2000):
        i = rng.randrange(1021)
        j = rng.randrange(1381)
        cell = point_to_cell(GRID, PlanePoint(i / 10.0, j / 10.0))
        assert cell == rows[j] * 6 + cols[i] + 1


def test_camera_coordinate_conversion():
    assert to_camera_coords(GRID, cell_center(GRID, 16)) == PlanePoint(8.5, 2.0)
    assert to_camera_coords(GRID, cell_center(GRID, 1)) == PlanePoint(-42.5, -44.0)
    for index in range(1, 37):
        center = cell_center(GRID, index)
        assert from_camera_coords(GRID, to_camera_coords(GRID, center)) == center


def test_gaze_ray_validation():
    with pytest.raises(ValueError):
        GazeRay((51.0, 55.5, 100.0), (0.0, 0.0, -0.5))  # not unit length
    with pytest.raises(ValueError):
        GazeRay((51.0, 55.5, 0.0), (0.0, 0.0, -1.0))  # eye on the panel plane
    ray = GazeRay.aimed_at((51.0, 55.5, 100.0), PlanePoint(8.5, 80.5))
    assert math.isclose(sum(c * c for c in ray.direction), 1.0, rel_tol=1e-12)


def test_ray_to_cell_straight_ahead():
    ray = GazeRay((8.5, 80.5, 120.0), (0.0, 0.0, -1.0))
    hit, cell = ray_to_cell(GRID, ray)
    assert cell == 19
    assert hit == PlanePoint(8.5, 80.5)


def test_ray_missing_plane():
    with pytest.raises(NoIntersectionError):
        ray_to_cell(GRID, GazeRay((51.0, 55.5, 100.0), (0.0, 1.0, 0.0)))  # parallel
    with pytest.raises(NoIntersectionError):
        ray_to_cell(GRID, GazeRay((51.0, 55.5, 100.0), (0.0, 0.0, 1.0)))  # away


def test_ray_hit_outside_panel():
    with pytest.raises(OutOfPanelError):
        ray_to_cell(GRID, GazeRay.aimed_at((51.0, 55.5, 100.0), PlanePoint(-30.0, 69.0)))


def test_aimed_rays_agree_with_point_lookup():
    # Aiming at a known interior point must land in that point's cell.
    rng = random.Random(4242)
    for _ in range(300):
        col = rng.randrange(6)
        row = rng.randrange(6)
        target = PlanePoint(
            (col + rng.uniform(0.05, 0.95)) * 17.0,
            (row + rng.uniform(0.05, 0.95)) * 23.0,
        )
        eye = (rng.uniform(-50.0, 150.0), rng.uniform(-50.0, 200.0), rng.uniform(10.0, 300.0))
        hit, cell = ray_to_cell(GRID, GazeRay.aimed_at(eye, target))
        assert cell == row * 6 + col + 1
        assert math.isclose(hit.x_cm, target.x_cm, abs_tol=1e-9)
        assert math.isclose(hit.y_cm, target.y_cm, abs_tol=1e-9)


def test_point_cell_json_bytes():
    assert point_cell_json(PlanePoint(8.5, 80.5), 19) == '{"x_cm":8.5,"y_cm":80.5,"cell":19}'
