"""Scikit-learn style transformers wrapping the codec pipeline.

Both estimators are stateless in the sklearn sense: ``fit`` only validates
parameters, so they clone, grid-search and compose in ``Pipeline`` objects
like any other transformer.  X is a list of meshes (RawMesh, CanonicalMesh,
OBJ path or OBJ bytes).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import amt_codec, encoding, naive_codec
from .canonical import CanonicalMesh, canonicalize, inverse_axis_permutation
from .mesh_io import QuantizationSpec, RawMesh, quantize
from .validation import (
    check_bbox_mode,
    check_bins,
    check_codec,
    check_up_axis,
    coerce_mesh_list,
)


class MeshCanonicalizer(BaseEstimator, TransformerMixin):
    """Quantize and canonicalize meshes.

    Parameters
    ----------
    bins : int, default=128
        Per-axis quantization resolution.
    up_axis : {"y", "z"}, default="y"
        Which model axis is vertical; it becomes the primary sort key.
    bbox_mode : {"per_mesh_tight", "unit_cube_centered"}, default="per_mesh_tight"
        Bounding box the quantizer maps onto the grid.
    """

    def __init__(self, bins=128, up_axis="y", bbox_mode="per_mesh_tight"):
        self.bins = bins
        self.up_axis = up_axis
        self.bbox_mode = bbox_mode

    def fit(self, X=None, y=None):
        check_bins(self.bins)
        check_up_axis(self.up_axis)
        check_bbox_mode(self.bbox_mode)
        return self

    def transform(self, X) -> list[CanonicalMesh]:
        self.fit()
        spec = QuantizationSpec(bins=self.bins, bbox_mode=self.bbox_mode)
        out = []
        for mesh in coerce_mesh_list(X):
            if isinstance(mesh, CanonicalMesh):
                out.append(mesh)
            else:
                out.append(canonicalize(quantize(mesh, spec), self.up_axis))
        return out


class MeshTokenizer(BaseEstimator, TransformerMixin):
    """Mesh list to token-sequence list, with an exact inverse.

    ``transform`` runs quantize -> canonicalize -> tokenize -> encode and
    returns one TokenSequence per mesh.  ``inverse_transform`` decodes and
    detokenizes back to integer-grid RawMesh objects in model axis order.

    Parameters
    ----------
    codec : {"amt", "naive"}, default="amt"
        Adjacency traversal or the plain 3-vertices-per-face baseline.
    bins : int, default=128
        Per-axis quantization resolution; also the coordinate vocabulary size.
    up_axis : {"y", "z"}, default="y"
        Which model axis is vertical.
    bbox_mode : {"per_mesh_tight", "unit_cube_centered"}, default="per_mesh_tight"
        Bounding box the quantizer maps onto the grid.
    """

    def __init__(self, codec="amt", bins=128, up_axis="y", bbox_mode="per_mesh_tight"):
        self.codec = codec
        self.bins = bins
        self.up_axis = up_axis
        self.bbox_mode = bbox_mode

    def fit(self, X=None, y=None):
        check_codec(self.codec)
        check_bins(self.bins)
        check_up_axis(self.up_axis)
        check_bbox_mode(self.bbox_mode)
        self.vocabulary_ = encoding.Vocabulary(int(self.bins))
        return self

    def transform(self, X) -> list[encoding.TokenSequence]:
        self.fit()
        canonical = MeshCanonicalizer(self.bins, self.up_axis, self.bbox_mode).transform(X)
        out = []
        for canon in canonical:
            if self.codec == "amt":
                seq = amt_codec.tokenize(canon)
            else:
                seq = naive_codec.tokenize_naive(canon)
            out.append(encoding.encode(seq, canon.vertices, self.vocabulary_))
        return out

    def inverse_transform(self, X) -> list[RawMesh]:
        self.fit()
        if isinstance(X, encoding.TokenSequence):
            X = [X]
        perm = list(inverse_axis_permutation(self.up_axis))
        out = []
        for tokens in X:
            seq, vertices = encoding.decode(tokens, self.vocabulary_)
            if isinstance(seq, amt_codec.AmtSequence):
                canon = amt_codec.detokenize(seq, vertices)
            else:
                canon = naive_codec.detokenize_naive(seq, vertices)
            out.append(RawMesh(canon.vertices[:, perm].astype(np.int64), canon.faces))
        return out
