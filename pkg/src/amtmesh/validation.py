"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

from pathlib import Path

from .canonical import UP_AXES, CanonicalMesh
from .mesh_io import BBOX_MODES, RawMesh, parse_obj

CODECS = ("amt", "naive")


def check_bins(bins) -> int:
    bins = int(bins)
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    return bins


def check_up_axis(up_axis) -> str:
    if up_axis not in UP_AXES:
        raise ValueError(f"up_axis must be one of {UP_AXES}, got {up_axis!r}")
    return up_axis


def check_bbox_mode(bbox_mode) -> str:
    if bbox_mode not in BBOX_MODES:
        raise ValueError(f"bbox_mode must be one of {BBOX_MODES}, got {bbox_mode!r}")
    return bbox_mode


def check_codec(codec) -> str:
    if codec not in CODECS:
        raise ValueError(f"codec must be one of {CODECS}, got {codec!r}")
    return codec


def coerce_mesh(obj) -> RawMesh | CanonicalMesh:
    """Accept a mesh object, an OBJ path, or raw OBJ text/bytes."""
    if isinstance(obj, (RawMesh, CanonicalMesh)):
        return obj
    if isinstance(obj, (str, Path)):
        return parse_obj(Path(obj).read_bytes())
    if isinstance(obj, bytes):
        return parse_obj(obj)
    raise TypeError(
        f"expected RawMesh, CanonicalMesh, path or OBJ bytes, got {type(obj).__name__}"
    )


def coerce_mesh_list(X) -> list[RawMesh | CanonicalMesh]:
    if isinstance(X, (RawMesh, CanonicalMesh, str, Path, bytes)):
        X = [X]
    return [coerce_mesh(item) for item in X]
