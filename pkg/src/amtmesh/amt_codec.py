"""Adjacency-driven mesh tokenization and its exact inverse.

The tokenizer walks the canonical face list: it emits the three sorted
vertices of the lowest unvisited face, then keeps extending across the edge
formed by the last two emitted vertices, one vertex per face, for as long as
an unvisited face shares that edge.  When none does it emits a restart
marker and starts over from the lowest unvisited face.  Ties always break
toward the smallest vertex index, so the output is a pure function of the
canonical mesh.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalMesh, _canonicalize_grid
from .errors import SequenceError


class Restart:
    """Singleton marker separating strips in an item sequence."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "&"


RESTART = Restart()


@dataclass
class AmtSequence:
    """Ordered vertex indices interleaved with restart markers.

    Never begins or ends with a restart, never holds two in a row, and each
    segment between restarts opens with a full 3-vertex face.
    """

    items: list
    face_count: int

    def __len__(self):
        return len(self.items)

    def vertex_items(self) -> int:
        return sum(1 for it in self.items if it is not RESTART)

    def restart_items(self) -> int:
        return sum(1 for it in self.items if it is RESTART)

    def to_text(self) -> str:
        """Compact debug form: ``v0 v1 v2 & v3 v4 v5``."""
        return " ".join("&" if it is RESTART else f"v{it}" for it in self.items)

    @classmethod
    def from_text(cls, text: str) -> "AmtSequence":
        items = []
        for pos, tok in enumerate(text.split()):
            if tok == "&":
                items.append(RESTART)
            elif tok.startswith("v") and tok[1:].isdigit():
                items.append(int(tok[1:]))
            else:
                raise SequenceError(f"unrecognized token {tok!r}", pos)
        seq = cls(items, 0)
        seq.face_count = sequence_stats(seq)["faces_encoded"]
        return seq


def tokenize(mesh: CanonicalMesh) -> AmtSequence:
    """Run the adjacency traversal over a canonical mesh.

    Raises ValueError on a mesh with no faces.
    """
    n_faces = mesh.n_faces
    if n_faces == 0:
        raise ValueError("cannot tokenize a mesh with no faces")

    faces = mesh.face_tuples()
    edge_index = mesh.edge_index
    unvisited = set(range(n_faces))
    lowest = 0  # lowest possibly-unvisited face id; only ever advances
    items: list = []

    while unvisited:
        # restart branch: pop the lowest unvisited face, emit all 3 vertices
        while lowest not in unvisited:
            lowest += 1
        fid = lowest
        unvisited.remove(fid)
        a, b, c = faces[fid]
        items.extend((a, b, c))
        p, q = b, c

        # strip branch: extend across the edge of the last two emitted
        # vertices while any unvisited face contains it, smallest third
        # vertex first (same answer as adjacent_third_vertices()[0])
        while True:
            edge = (p, q) if p < q else (q, p)
            best_v = -1
            best_fid = -1
            for cand in edge_index.get(edge, ()):
                if cand in unvisited:
                    u, v, w = faces[cand]
                    lo, hi = edge
                    third = u if u != lo and u != hi else (v if v != lo and v != hi else w)
                    if best_v < 0 or third < best_v:
                        best_v = third
                        best_fid = cand
            if best_v < 0:
                break
            unvisited.remove(best_fid)
            items.append(best_v)
            p, q = q, best_v
        if unvisited:
            items.append(RESTART)

    return AmtSequence(items, n_faces)


def detokenize(seq: AmtSequence, vertices: np.ndarray) -> CanonicalMesh:
    """Rebuild the mesh a sequence encodes; the exact inverse of tokenize.

    ``vertices`` is the canonical vertex table the indices point into.  The
    reconstruction is re-canonicalized, so round-trip equality is a strict
    structural check.  Malformed sequences raise SequenceError naming the
    offending item position.
    """
    vertices = np.asarray(vertices, dtype=np.int64)
    n_vertices = len(vertices)
    items = seq.items
    if not items:
        raise SequenceError("empty sequence", 0)
    if items[0] is RESTART:
        raise SequenceError("sequence begins with restart", 0)
    if items[-1] is RESTART:
        raise SequenceError("sequence ends with restart", len(items) - 1)

    faces: set[tuple[int, int, int]] = set()
    window: list[int] = []  # vertices emitted since the segment opened
    for pos, item in enumerate(items):
        if item is RESTART:
            if len(window) < 3:
                raise SequenceError(
                    f"restart after only {len(window)} vertices in segment", pos
                )
            window = []
            continue
        v = int(item)
        if v < 0 or v >= n_vertices:
            raise SequenceError(f"vertex index {v} out of range", pos)
        window.append(v)
        if len(window) < 3:
            continue
        p, q = window[-3], window[-2]
        if v == p or v == q or p == q:
            raise SequenceError(f"degenerate face ({p}, {q}, {v})", pos)
        tri = tuple(sorted((p, q, v)))
        if tri in faces:
            raise SequenceError(f"duplicate face {tri}", pos)
        faces.add(tri)
    if len(window) < 3:
        raise SequenceError(
            f"sequence ends after only {len(window)} vertices in segment", len(items) - 1
        )
    if len(faces) != seq.face_count:
        raise SequenceError(
            f"decoded {len(faces)} faces, sequence declares {seq.face_count}",
            len(items) - 1,
        )

    face_array = np.array(sorted(faces), dtype=np.int64).reshape(-1, 3)
    return _canonicalize_grid(vertices, face_array)


def sequence_stats(seq: AmtSequence) -> dict[str, int]:
    """Item counts: every segment spends 2 extra vertices to open a strip."""
    vertex_items = seq.vertex_items()
    restart_items = seq.restart_items()
    return {
        "vertex_items": vertex_items,
        "restart_items": restart_items,
        "faces_encoded": vertex_items - 2 * (restart_items + 1),
    }
