"""Baseline tokenizer: every face emitted as its three sorted vertices.

Deliberately the plainest possible face-sequence representation, with no
special tokens, so that length ratios measured against it isolate what the
adjacency traversal buys.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalMesh, _canonicalize_grid
from .errors import SequenceError


@dataclass
class NaiveSequence:
    """Flat vertex indices, three per face, faces in canonical order."""

    items: list[int]

    def __len__(self):
        return len(self.items)

    @property
    def face_count(self) -> int:
        return len(self.items) // 3

    def to_text(self) -> str:
        return " ".join(f"v{i}" for i in self.items)


def tokenize_naive(mesh: CanonicalMesh) -> NaiveSequence:
    """Concatenate each canonical face's triple; item count is exactly 3N."""
    return NaiveSequence([int(i) for i in mesh.faces.reshape(-1)])


def detokenize_naive(seq: NaiveSequence, vertices: np.ndarray) -> CanonicalMesh:
    """Inverse of tokenize_naive: consecutive triples become faces."""
    vertices = np.asarray(vertices, dtype=np.int64)
    items = seq.items
    if len(items) % 3 != 0:
        raise SequenceError(f"item count {len(items)} not divisible by 3", len(items) - 1)
    n_vertices = len(vertices)
    faces = []
    for pos in range(0, len(items), 3):
        tri = items[pos : pos + 3]
        for off, v in enumerate(tri):
            if v < 0 or v >= n_vertices:
                raise SequenceError(f"vertex index {v} out of range", pos + off)
        if len(set(tri)) < 3:
            raise SequenceError(f"degenerate face {tuple(tri)}", pos)
        faces.append(tri)
    face_array = np.array(faces, dtype=np.int64).reshape(-1, 3)
    return _canonicalize_grid(vertices, face_array)
