"""Triangle mesh I/O and coordinate quantization.

Meshes enter as ASCII Wavefront OBJ (``v`` and ``f`` records only) and are
quantized onto an integer grid before canonicalization.  Quantization runs
first on purpose: deduplication downstream then merges vertices that collide
on the grid, which is what makes the canonical form of a float mesh unique.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ObjParseError

BBOX_MODES = ("per_mesh_tight", "unit_cube_centered")


@dataclass
class RawMesh:
    """Vertices and triangle faces as parsed from disk.

    ``vertices`` is (N, 3) in model axis order (x, y, z); float before
    quantization, integer bins after.  ``faces`` is (M, 3) zero-based.
    """

    vertices: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices)
        self.faces = np.asarray(self.faces, dtype=np.int64)
        if self.vertices.size == 0:
            self.vertices = self.vertices.reshape(0, 3)
        if self.faces.size == 0:
            self.faces = self.faces.reshape(0, 3)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 3:
            raise ValueError(f"vertices must be (N, 3), got {self.vertices.shape}")
        if self.faces.ndim != 2 or self.faces.shape[1] != 3:
            raise ValueError(f"faces must be (M, 3), got {self.faces.shape}")
        if len(self.faces) and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ValueError("face index out of range")

    def __eq__(self, other):
        if not isinstance(other, RawMesh):
            return NotImplemented
        return np.array_equal(self.vertices, other.vertices) and np.array_equal(
            self.faces, other.faces
        )

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)


@dataclass
class QuantizationSpec:
    """Per-axis binning resolution and the bounding box it applies to.

    ``bbox_mode``:
      * ``per_mesh_tight``: the mesh's own axis-aligned bounds (default).
      * ``unit_cube_centered``: fixed [-0.5, 0.5] on every axis.

    ``bbox`` pins an explicit (min, max) pair per axis and overrides the mode.
    """

    bins: int = 128
    bbox_mode: str = "per_mesh_tight"
    bbox: np.ndarray | None = None  # (2, 3): row 0 mins, row 1 maxs

    def __post_init__(self):
        if self.bins < 2:
            raise ValueError(f"bins must be >= 2, got {self.bins}")
        if self.bbox_mode not in BBOX_MODES:
            raise ValueError(f"bbox_mode must be one of {BBOX_MODES}, got {self.bbox_mode!r}")
        if self.bbox is not None:
            self.bbox = np.asarray(self.bbox, dtype=np.float64).reshape(2, 3)
            if np.any(self.bbox[1] < self.bbox[0]):
                raise ValueError("bbox max < min")

    def resolve_bbox(self, vertices: np.ndarray) -> np.ndarray:
        """Bounding box actually applied to ``vertices``."""
        if self.bbox is not None:
            return self.bbox
        if self.bbox_mode == "unit_cube_centered":
            return np.array([[-0.5, -0.5, -0.5], [0.5, 0.5, 0.5]])
        if len(vertices) == 0:
            return np.zeros((2, 3))
        v = np.asarray(vertices, dtype=np.float64)
        return np.stack([v.min(axis=0), v.max(axis=0)])


@dataclass
class ParseReport:
    """Side channel for parser statistics."""

    ignored_records: dict[str, int] = field(default_factory=dict)
    dropped_degenerate_faces: int = 0
    comment_lines: int = 0


def parse_obj(data: bytes | str | io.IOBase, *, report: ParseReport | None = None) -> RawMesh:
    """Parse ASCII OBJ into a RawMesh.

    Consumes ``v`` and ``f`` records; ``f`` entries may be ``v``, ``v/vt``,
    ``v//vn`` or ``v/vt/vn`` (only the vertex slot is read).  Polygons are
    fan-triangulated.  Negative (relative) indices resolve against the
    vertices seen so far.  Faces with repeated indices are dropped and
    counted.  Every other record type is ignored with a per-type counter.
    """
    if isinstance(data, bytes):
        text = data.decode("ascii", errors="replace")
    elif isinstance(data, str):
        text = data
    else:
        raw = data.read()
        text = raw.decode("ascii", errors="replace") if isinstance(raw, bytes) else raw
    if report is None:
        report = ParseReport()

    vertices: list[tuple[float, float, float]] = []
    faces: list[tuple[int, int, int]] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            report.comment_lines += 1
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "v":
            if len(parts) < 4:
                raise ObjParseError("vertex record needs 3 coordinates", lineno)
            try:
                vertices.append((float(parts[1]), float(parts[2]), float(parts[3])))
            except ValueError as exc:
                raise ObjParseError(f"bad vertex coordinate: {exc}", lineno) from None
        elif tag == "f":
            idx = [_face_slot(tok, len(vertices), lineno) for tok in parts[1:]]
            if len(idx) < 3:
                raise ObjParseError("face record needs at least 3 vertices", lineno)
            for i in range(1, len(idx) - 1):
                tri = (idx[0], idx[i], idx[i + 1])
                if len(set(tri)) < 3:
                    report.dropped_degenerate_faces += 1
                else:
                    faces.append(tri)
        else:
            report.ignored_records[tag] = report.ignored_records.get(tag, 0) + 1

    if not vertices:
        raise ObjParseError("no vertices in input")
    return RawMesh(np.array(vertices, dtype=np.float64), np.array(faces, dtype=np.int64))


def _face_slot(token: str, n_vertices: int, lineno: int) -> int:
    head = token.split("/")[0]
    if not head:
        raise ObjParseError(f"face token {token!r} has no vertex index", lineno)
    try:
        raw = int(head)
    except ValueError:
        raise ObjParseError(f"face token {token!r} is not an integer index", lineno) from None
    if raw == 0:
        raise ObjParseError("OBJ indices are 1-based; 0 is invalid", lineno)
    idx = raw - 1 if raw > 0 else n_vertices + raw
    if idx < 0 or idx >= n_vertices:
        raise ObjParseError(f"face index {raw} out of range ({n_vertices} vertices)", lineno)
    return idx


def _fmt_coord(value) -> str:
    # repr() is the shortest exact float round trip; integer grids print bare.
    f = float(value)
    if f.is_integer():
        return str(int(f))
    return repr(f)


def write_obj(mesh, *, up_axis: str | None = None) -> bytes:
    """Serialize a mesh to ASCII OBJ.

    Accepts a RawMesh (written as-is, model axis order) or a CanonicalMesh
    (vertices stored in sort-key order; ``up_axis`` controls how they map
    back to model x/y/z and defaults to "y").  Output is deterministic and
    re-parses to an equal mesh.
    """
    from .canonical import CanonicalMesh, inverse_axis_permutation

    if isinstance(mesh, CanonicalMesh):
        perm = inverse_axis_permutation(up_axis or "y")
        vertices = mesh.vertices[:, perm]
    else:
        vertices = mesh.vertices
    out = ["# amtmesh obj export"]
    for row in vertices:
        out.append(f"v {_fmt_coord(row[0])} {_fmt_coord(row[1])} {_fmt_coord(row[2])}")
    for a, b, c in mesh.faces:
        out.append(f"f {a + 1} {b + 1} {c + 1}")
    out.append("")
    return "\n".join(out).encode("ascii")


def quantize(mesh: RawMesh, spec: QuantizationSpec) -> RawMesh:
    """Map each coordinate to an integer bin in [0, bins-1].

    The map is ``floor((v - min) / extent * bins)`` clamped to the top bin;
    a value exactly on a bin edge belongs to the upper bin.  Zero-extent
    axes collapse to bin 0.  Vertices are NOT deduplicated here.
    """
    bbox = spec.resolve_bbox(mesh.vertices)
    lo, hi = bbox[0], bbox[1]
    extent = hi - lo
    v = np.asarray(mesh.vertices, dtype=np.float64)
    scaled = np.zeros_like(v)
    nonzero = extent > 0
    scaled[:, nonzero] = (v[:, nonzero] - lo[nonzero]) / extent[nonzero] * spec.bins
    bins = np.floor(scaled).astype(np.int64)
    np.clip(bins, 0, spec.bins - 1, out=bins)
    return RawMesh(bins, mesh.faces.copy())
