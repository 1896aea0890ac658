"""Deterministic mesh generators with known face counts and traversal shapes.

These provide analytic ground truth for the benchmark: a strip of N faces
tokenizes to exactly N + 2 vertex items with no restarts, a soup of N
disconnected triangles to 3N vertex items with N - 1 restarts.  All
generators emit y-up geometry (the OBJ convention) and integer-valued
coordinates except the icosphere, so the default pipeline preserves their
structure as long as ``bins`` exceeds the coordinate extent.

Face counts: strip/fan n, grid 2*w*h, icosphere 20*4**s, soup n.
"""

from __future__ import annotations

import math

import numpy as np

from .mesh_io import RawMesh

KINDS = ("strip", "fan", "grid", "icosphere", "soup", "random")


def _from_key_space(key_coords, faces) -> RawMesh:
    # key order is (vertical, second, third); model y-up means
    # (x, y, z) = (key2, key0, key1)
    k = np.asarray(key_coords, dtype=np.float64)
    model = k[:, [2, 0, 1]]
    return RawMesh(model, np.asarray(faces, dtype=np.int64))


def strip_mesh(n: int) -> RawMesh:
    """Ladder strip of n faces: face i is (i, i+1, i+2) after canonicalization."""
    if n < 1:
        raise ValueError("strip needs n >= 1")
    verts = [(i // 2, i % 2, 0) for i in range(n + 2)]
    faces = [(i, i + 1, i + 2) for i in range(n)]
    return _from_key_space(verts, faces)


def fan_mesh(n: int) -> RawMesh:
    """n faces sharing one hub vertex; every continuation forces a restart."""
    if n < 1:
        raise ValueError("fan needs n >= 1")
    verts = [(0, 0, 0)] + [(1, j, 0) for j in range(n + 1)]
    faces = [(0, j + 1, j + 2) for j in range(n)]
    return _from_key_space(verts, faces)


def grid_mesh(w: int, h: int) -> RawMesh:
    """Regular (w x h)-cell grid, each cell split into two triangles: 2*w*h faces."""
    if w < 1 or h < 1:
        raise ValueError("grid needs w >= 1 and h >= 1")
    verts = [(r, c, 0) for r in range(h + 1) for c in range(w + 1)]
    idx = lambda r, c: r * (w + 1) + c
    faces = []
    for r in range(h):
        for c in range(w):
            a, b = idx(r, c), idx(r, c + 1)
            d, e = idx(r + 1, c), idx(r + 1, c + 1)
            faces.append((a, b, d))
            faces.append((b, d, e))
    return _from_key_space(verts, faces)


def icosphere_mesh(subdivisions: int) -> RawMesh:
    """Icosahedron subdivided ``subdivisions`` times, projected to the unit sphere."""
    if subdivisions < 0:
        raise ValueError("icosphere needs subdivisions >= 0")
    t = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [
        (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
        (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
        (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
    ]
    verts = [_unit(v) for v in verts]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    cache: dict[tuple[int, int], int] = {}

    def midpoint(i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        if key not in cache:
            vi, vj = verts[i], verts[j]
            verts.append(_unit(((vi[0] + vj[0]) / 2, (vi[1] + vj[1]) / 2, (vi[2] + vj[2]) / 2)))
            cache[key] = len(verts) - 1
        return cache[key]

    for _ in range(subdivisions):
        split = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            split += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = split
    return RawMesh(np.array(verts, dtype=np.float64), np.array(faces, dtype=np.int64))


def _unit(v):
    n = math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
    return (v[0] / n, v[1] / n, v[2] / n)


# Fixed in-cell triangle shapes for soups; all offsets < the cell pitch of 4,
# so triangles in different cells can never share a vertex.
_SOUP_PATTERNS = (
    ((0, 0, 0), (1, 2, 0), (2, 1, 1)),
    ((0, 1, 0), (2, 0, 2), (1, 2, 1)),
    ((0, 0, 1), (2, 2, 0), (1, 0, 2)),
    ((1, 0, 0), (0, 2, 1), (2, 1, 2)),
)


def soup_mesh(n: int, seed: int = 0) -> RawMesh:
    """n pairwise-disconnected triangles on a cell lattice; seeded shapes."""
    if n < 1:
        raise ValueError("soup needs n >= 1")
    rng = np.random.default_rng(seed)
    k = max(1, math.ceil(n ** (1 / 3)))
    while k * k * k < n:
        k += 1
    verts = []
    faces = []
    picks = rng.integers(0, len(_SOUP_PATTERNS), size=n)
    for t in range(n):
        cx, cy, cz = t % k, (t // k) % k, t // (k * k)
        base = (4 * cx, 4 * cy, 4 * cz)
        pattern = _SOUP_PATTERNS[picks[t]]
        start = len(verts)
        for off in pattern:
            verts.append((base[0] + off[0], base[1] + off[1], base[2] + off[2]))
        faces.append((start, start + 1, start + 2))
    return _from_key_space(verts, faces)


def random_triangulation_mesh(n_vertices: int, n_faces: int, seed: int = 0) -> RawMesh:
    """Fuzz mesh: random grid vertices, random index triples.

    May be non-manifold, disconnected, or contain duplicates; exists to
    stress canonicalization and the round-trip property, not to look good.
    """
    if n_vertices < 3 or n_faces < 1:
        raise ValueError("random triangulation needs >= 3 vertices and >= 1 face")
    rng = np.random.default_rng(seed)
    verts = rng.integers(0, 64, size=(n_vertices, 3)).astype(np.float64)
    faces = np.empty((n_faces, 3), dtype=np.int64)
    for i in range(n_faces):
        faces[i] = rng.choice(n_vertices, size=3, replace=False)
    return RawMesh(verts, faces)


def generate_synthetic(kind: str, params: dict | None = None, seed: int = 0) -> RawMesh:
    """Dispatch by kind name; params are generator-specific keyword values."""
    params = dict(params or {})
    if kind == "strip":
        return strip_mesh(int(params.get("n", 10)))
    if kind == "fan":
        return fan_mesh(int(params.get("n", 10)))
    if kind == "grid":
        return grid_mesh(int(params.get("w", 4)), int(params.get("h", 4)))
    if kind == "icosphere":
        return icosphere_mesh(int(params.get("s", params.get("subdivisions", 1))))
    if kind == "soup":
        return soup_mesh(int(params.get("n", 10)), int(params.get("seed", seed)))
    if kind == "random":
        return random_triangulation_mesh(
            int(params.get("vertices", 20)),
            int(params.get("faces", 30)),
            int(params.get("seed", seed)),
        )
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {KINDS}")
