"""Shared builders and hypothesis strategies."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from amtmesh import RawMesh, canonicalize

# Everything here builds meshes in sort-key space (vertical axis first) and
# converts to model y-up coordinates, so canonical vertex ranks are the
# literal list positions and hand traces stay readable.


def mesh_in_key_space(key_vertices, faces) -> RawMesh:
    k = np.asarray(key_vertices, dtype=np.int64)
    return RawMesh(k[:, [2, 0, 1]], np.asarray(faces, dtype=np.int64))


def canonical_in_key_space(key_vertices, faces):
    return canonicalize(mesh_in_key_space(key_vertices, faces), "y")


@pytest.fixture
def square():
    """Two triangles sharing an edge: faces (0,1,2) and (1,2,3)."""
    return canonical_in_key_space(
        [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)],
        [(0, 1, 2), (1, 2, 3)],
    )


@pytest.fixture
def two_triangle_soup():
    """Two disconnected triangles: faces (0,1,2) and (3,4,5)."""
    return canonical_in_key_space(
        [(0, 0, 0), (0, 1, 0), (1, 0, 0), (5, 5, 5), (5, 6, 5), (6, 5, 5)],
        [(0, 1, 2), (3, 4, 5)],
    )


@st.composite
def grid_vertex_arrays(draw, min_vertices=3, max_vertices=24, extent=8):
    n = draw(st.integers(min_vertices, max_vertices))
    coord = st.integers(0, extent)
    rows = draw(
        st.lists(st.tuples(coord, coord, coord), min_size=n, max_size=n)
    )
    return np.array(rows, dtype=np.int64)


@st.composite
def raw_meshes(draw, max_vertices=24, max_faces=40):
    """Integer-grid meshes with arbitrary (possibly messy) connectivity."""
    vertices = draw(grid_vertex_arrays(max_vertices=max_vertices))
    n = len(vertices)
    index = st.integers(0, n - 1)
    face = st.tuples(index, index, index).filter(lambda t: len(set(t)) == 3)
    faces = draw(st.lists(face, min_size=1, max_size=max_faces))
    return RawMesh(vertices, np.array(faces, dtype=np.int64))


@st.composite
def canonical_meshes(draw, max_vertices=24, max_faces=40):
    """Canonical meshes with at least one surviving face."""
    from hypothesis import assume

    mesh = draw(raw_meshes(max_vertices=max_vertices, max_faces=max_faces))
    canon = canonicalize(mesh, "y")
    assume(canon.n_faces >= 1)
    return canon
