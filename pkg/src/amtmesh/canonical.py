"""Canonical mesh form: the unique representation both tokenizers consume.

Vertices are deduplicated and sorted ascending by their coordinates with the
vertical axis as the primary key; faces become sorted index triples and the
face list itself is sorted.  Any permutation of the input vertex or face
order therefore lands on the identical CanonicalMesh, which is what makes
the emitted token sequence unique per mesh.

Canonical vertices are stored in sort-key order, i.e. column 0 is the
vertical axis.  For y-up input (the OBJ convention, default) a model vertex
(x, y, z) is stored as (y, z, x); for z-up input as (z, y, x).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .mesh_io import RawMesh

UP_AXES = ("y", "z")

# model (x, y, z) -> canonical key order, and back
_KEY_PERM = {"y": (1, 2, 0), "z": (2, 1, 0)}
_INV_PERM = {"y": (2, 0, 1), "z": (2, 1, 0)}


def axis_permutation(up_axis: str) -> tuple[int, int, int]:
    """Column permutation taking model (x, y, z) to canonical key order."""
    try:
        return _KEY_PERM[up_axis]
    except KeyError:
        raise ValueError(f"up_axis must be one of {UP_AXES}, got {up_axis!r}") from None


def inverse_axis_permutation(up_axis: str) -> tuple[int, int, int]:
    """Column permutation taking canonical key order back to model (x, y, z)."""
    try:
        return _INV_PERM[up_axis]
    except KeyError:
        raise ValueError(f"up_axis must be one of {UP_AXES}, got {up_axis!r}") from None


@dataclass
class CanonicalMesh:
    """Sorted deduplicated vertices plus sorted faces and an edge index.

    Invariants (enforced by ``canonicalize``, assumed everywhere else):
    vertices strictly increasing lexicographically; each face triple
    strictly increasing; face list strictly sorted with no duplicates;
    ``edge_index`` maps each unordered vertex pair to the ids of its
    incident faces.
    """

    vertices: np.ndarray  # (N, 3) int64, sort-key axis order
    faces: np.ndarray  # (M, 3) int64, rows and list both sorted
    edge_index: dict[tuple[int, int], list[int]] = field(repr=False, default_factory=dict)
    dropped_degenerate_faces: int = 0
    dropped_duplicate_faces: int = 0

    def __post_init__(self):
        if not self.edge_index and len(self.faces):
            self.edge_index = build_edge_index(self.faces)
        self._face_tuples: list[tuple[int, int, int]] | None = None

    def __eq__(self, other):
        # Equality is structural: same vertex table, same set of faces.
        if not isinstance(other, CanonicalMesh):
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

    def face_tuples(self) -> list[tuple[int, int, int]]:
        """Faces as plain int tuples, cached for the tokenizer hot loop."""
        if self._face_tuples is None:
            self._face_tuples = [tuple(map(int, row)) for row in self.faces]
        return self._face_tuples


def build_edge_index(faces: np.ndarray) -> dict[tuple[int, int], list[int]]:
    """Map each unordered vertex pair to the sorted list of incident face ids."""
    index: dict[tuple[int, int], list[int]] = defaultdict(list)
    for fid, (a, b, c) in enumerate(np.asarray(faces, dtype=np.int64).tolist()):
        index[(a, b)].append(fid)
        index[(a, c)].append(fid)
        index[(b, c)].append(fid)
    return dict(index)


def canonicalize(mesh: RawMesh | CanonicalMesh, up_axis: str = "y") -> CanonicalMesh:
    """Produce the canonical form of an integer-grid mesh.

    Duplicate vertices merge, vertices sort ascending by their key-order
    coordinates, faces are reindexed, internally sorted, stripped of
    degenerates and duplicates (both counted) and sorted.  Idempotent:
    a CanonicalMesh passes through unchanged apart from a rebuild.
    """
    if isinstance(mesh, CanonicalMesh):
        vertices = mesh.vertices  # already in key order
        faces = mesh.faces
    else:
        vertices = np.asarray(mesh.vertices)
        if not np.issubdtype(vertices.dtype, np.integer):
            if not np.all(np.equal(np.mod(vertices, 1), 0)):
                raise ValueError("canonicalize requires integer-grid coordinates; quantize first")
            vertices = vertices.astype(np.int64)
        vertices = vertices[:, list(axis_permutation(up_axis))]
        faces = mesh.faces
    return _canonicalize_grid(vertices.astype(np.int64), np.asarray(faces, dtype=np.int64))


def _canonicalize_grid(vertices: np.ndarray, faces: np.ndarray) -> CanonicalMesh:
    # np.unique over rows both sorts lexicographically (column 0 primary)
    # and merges duplicates; inverse remaps old indices to the new table.
    if len(vertices) == 0:
        return CanonicalMesh(vertices.reshape(0, 3), faces.reshape(0, 3))
    unique, inverse = np.unique(vertices, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)  # numpy >= 2.0 may return (N, 1)

    if len(faces) == 0:
        return CanonicalMesh(unique, np.zeros((0, 3), dtype=np.int64))

    remapped = inverse[faces]
    remapped = np.sort(remapped, axis=1)
    nondegenerate = (remapped[:, 0] != remapped[:, 1]) & (remapped[:, 1] != remapped[:, 2])
    dropped_degenerate = int(len(remapped) - nondegenerate.sum())
    remapped = remapped[nondegenerate]
    if len(remapped):
        deduped = np.unique(remapped, axis=0)
    else:
        deduped = remapped.reshape(0, 3)
    dropped_duplicate = int(len(remapped) - len(deduped))
    return CanonicalMesh(
        unique,
        deduped,
        dropped_degenerate_faces=dropped_degenerate,
        dropped_duplicate_faces=dropped_duplicate,
    )


def adjacent_third_vertices(
    mesh: CanonicalMesh, edge: tuple[int, int], unvisited
) -> list[int]:
    """Third vertices of unvisited faces incident to ``edge``, ascending.

    ``unvisited`` is any membership-testable collection of face ids.  A
    candidate v counts only if {edge.a, edge.b, v} is an actual face of the
    mesh; vertices merely graph-adjacent to both endpoints never qualify.
    Ascending vertex index equals ascending coordinate order because the
    vertex table is sorted.
    """
    a, b = edge
    if a > b:
        a, b = b, a
    face_ids = mesh.edge_index.get((a, b))
    if not face_ids:
        return []
    faces = mesh.face_tuples()
    thirds = []
    for fid in face_ids:
        if fid in unvisited:
            u, v, w = faces[fid]
            thirds.append(u if u != a and u != b else (v if v != a and v != b else w))
    thirds.sort()
    return thirds
