import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amtmesh import (
    ObjParseError,
    ParseReport,
    QuantizationSpec,
    RawMesh,
    canonicalize,
    parse_obj,
    quantize,
    write_obj,
)

MINIMAL_OBJ = b"""
v 0 0 0
v 1 0 0
v 0 1 0
f 1 2 3
"""


def scalar_quantize(value, lo, hi, bins):
    # Independent reference: floor of the affine map, clamped to the top bin.
    extent = hi - lo
    if extent == 0:
        return 0
    b = int(np.floor((value - lo) / extent * bins))
    return min(max(b, 0), bins - 1)


class TestParse:
    def test_minimal_mesh(self):
        mesh = parse_obj(MINIMAL_OBJ)
        assert mesh.n_vertices == 3
        assert mesh.faces.tolist() == [[0, 1, 2]]

    def test_quad_fan_triangulation(self):
        mesh = parse_obj(b"v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n")
        assert mesh.faces.tolist() == [[0, 1, 2], [0, 2, 3]]

    def test_index_out_of_range(self):
        with pytest.raises(ObjParseError, match="out of range"):
            parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n")

    def test_slash_formats_read_vertex_slot_only(self):
        mesh = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/7 2//9 3/7/9\n")
        assert mesh.faces.tolist() == [[0, 1, 2]]

    def test_negative_relative_indices(self):
        mesh = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\n")
        assert mesh.faces.tolist() == [[0, 1, 2]]

    def test_ignored_records_counted(self):
        report = ParseReport()
        parse_obj(b"vn 0 0 1\nvt 0 0\nvn 1 0 0\n" + MINIMAL_OBJ, report=report)
        assert report.ignored_records == {"vn": 2, "vt": 1}

    def test_degenerate_face_dropped_and_counted(self):
        report = ParseReport()
        mesh = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 1 2\nf 1 2 3\n", report=report)
        assert mesh.n_faces == 1
        assert report.dropped_degenerate_faces == 1

    def test_empty_input_rejected(self):
        with pytest.raises(ObjParseError):
            parse_obj(b"# nothing here\n")

    def test_malformed_vertex_reports_line(self):
        with pytest.raises(ObjParseError, match="line 2"):
            parse_obj(b"v 0 0 0\nv nope 0 0\n")


class TestWrite:
    def test_parse_write_round_trip(self):
        mesh = parse_obj(MINIMAL_OBJ)
        again = parse_obj(write_obj(mesh))
        assert again == mesh

    def test_no_faces_writes_vertices_only(self):
        mesh = RawMesh(np.zeros((3, 3)), np.zeros((0, 3), dtype=np.int64))
        text = write_obj(mesh).decode()
        assert text.count("\nv ") == 3
        assert "\nf " not in text

    def test_deterministic_output(self):
        mesh = parse_obj(b"v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3\nf 1 3 4\n")
        assert write_obj(mesh) == write_obj(mesh)

    def test_float_coordinates_survive_exactly(self):
        mesh = RawMesh(np.array([[0.1, -2.5e-8, 1 / 3]] * 3), np.array([[0, 1, 2]]))
        assert parse_obj(write_obj(mesh)) == mesh

    def test_canonical_round_trip_through_obj(self, square):
        text = write_obj(square, up_axis="y")
        reparsed = canonicalize(parse_obj(text), "y")
        assert reparsed == square

    @given(
        st.lists(
            st.tuples(*[st.floats(allow_nan=False, allow_infinity=False, width=64)] * 3),
            min_size=1,
            max_size=20,
        )
    )
    @settings(max_examples=100, deadline=None)
    def test_write_parse_identity_on_any_float_mesh(self, coords):
        mesh = RawMesh(np.array(coords, dtype=np.float64), np.zeros((0, 3), int))
        assert parse_obj(write_obj(mesh)) == mesh


class TestQuantize:
    def test_bbox_corners_hit_first_and_last_bin(self):
        spec = QuantizationSpec(bins=128, bbox=[[-0.5, -0.5, -0.5], [0.5, 0.5, 0.5]])
        mesh = RawMesh(np.array([[-0.5, -0.5, -0.5], [0.5, 0.5, 0.5]]), np.zeros((0, 3), int))
        q = quantize(mesh, spec)
        assert q.vertices.tolist() == [[0, 0, 0], [127, 127, 127]]

    def test_affine_map_matches_scalar_reference(self):
        spec = QuantizationSpec(bins=4, bbox=[[0, 0, 0], [1, 1, 1]])
        mesh = RawMesh(np.array([[0.49, 0.51, 1.0]]), np.zeros((0, 3), int))
        expected = [scalar_quantize(c, 0.0, 1.0, 4) for c in (0.49, 0.51, 1.0)]
        assert expected == [1, 2, 3]
        assert quantize(mesh, spec).vertices.tolist() == [expected]

    def test_zero_extent_axis_collapses_to_bin_zero(self):
        mesh = RawMesh(np.array([[3.0, 1.0, 7.0], [3.0, 2.0, 9.0]]), np.zeros((0, 3), int))
        q = quantize(mesh, QuantizationSpec(bins=8))
        assert q.vertices[:, 0].tolist() == [0, 0]

    @given(
        st.lists(
            st.tuples(*[st.floats(-10, 10, allow_nan=False) for _ in range(3)]),
            min_size=1,
            max_size=30,
        ),
        st.integers(2, 256),
    )
    @settings(max_examples=100, deadline=None)
    def test_bins_always_in_range_and_match_reference(self, coords, bins):
        mesh = RawMesh(np.array(coords, dtype=np.float64), np.zeros((0, 3), int))
        spec = QuantizationSpec(bins=bins)
        bbox = spec.resolve_bbox(mesh.vertices)
        q = quantize(mesh, spec)
        assert q.vertices.min() >= 0 and q.vertices.max() <= bins - 1
        for row, qrow in zip(coords, q.vertices.tolist()):
            expected = [
                scalar_quantize(row[a], bbox[0][a], bbox[1][a], bins) for a in range(3)
            ]
            assert qrow == expected

    @given(st.integers(2, 200), st.integers(2, 40))
    @settings(max_examples=60, deadline=None)
    def test_idempotent_on_its_own_grid(self, bins, n):
        rng = np.random.default_rng(n)
        grid = rng.integers(0, bins, size=(n, 3)).astype(np.float64)
        grid[0] = 0
        grid[-1] = bins - 1  # pin the tight bbox to [0, bins-1]
        mesh = RawMesh(grid, np.zeros((0, 3), int))
        q = quantize(mesh, QuantizationSpec(bins=bins))
        assert np.array_equal(q.vertices, grid.astype(np.int64))
