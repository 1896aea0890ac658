"""Discrete token layer: item sequences to flat id streams and back.

Coordinate bins map directly to the first B token ids; four specials (BOS,
EOS, PAD and the restart marker) sit immediately above them.  Every token
also carries an embedding-type tag telling a sequence model whether it is
part of a full 3-vertex face, a single strip-continuation vertex, a restart,
or framing control.  BOS/EOS/PAD are excluded from all payload arithmetic.
"""

from __future__ import annotations

import enum
import json
import struct
from dataclasses import dataclass

import numpy as np

from .amt_codec import RESTART, AmtSequence, sequence_stats
from .errors import FormatError, SequenceError, VocabularyError
from .naive_codec import NaiveSequence

MAGIC = 0x42544D41  # b"AMTB" little-endian
FORMAT_VERSION = 1
_HEADER = struct.Struct("<IIIQ")
_RECORD_DTYPE = np.dtype([("id", "<u4"), ("type", "u1")])


class TokenType(enum.IntEnum):
    FULL_FACE = 0
    STRIP_VERTEX = 1
    AMP = 2
    CONTROL = 3


@dataclass(frozen=True)
class Vocabulary:
    """Id layout: coordinate c in [0, B) maps to id c; specials follow."""

    coord_bins: int

    def __post_init__(self):
        if self.coord_bins < 2:
            raise ValueError(f"coord_bins must be >= 2, got {self.coord_bins}")

    @property
    def bos(self) -> int:
        return self.coord_bins

    @property
    def eos(self) -> int:
        return self.coord_bins + 1

    @property
    def pad(self) -> int:
        return self.coord_bins + 2

    @property
    def amp(self) -> int:
        return self.coord_bins + 3

    @property
    def size(self) -> int:
        return self.coord_bins + 4


@dataclass
class TokenSequence:
    """Parallel lists of token ids and embedding-type tags."""

    ids: list[int]
    types: list[TokenType]
    coord_bins: int

    def __post_init__(self):
        if len(self.ids) != len(self.types):
            raise ValueError("ids and types must have equal length")

    def __len__(self):
        return len(self.ids)

    def payload_length(self) -> int:
        """Token count exclusive of BOS/EOS/PAD."""
        return sum(1 for t in self.types if t is not TokenType.CONTROL)


def encode(seq: AmtSequence | NaiveSequence, vertices: np.ndarray, vocab: Vocabulary) -> TokenSequence:
    """Flatten an item sequence into token ids with type annotations.

    Each vertex item becomes its 3 stored coordinates (already in sort-key
    order); restarts become the single restart id.  The 3 vertices opening
    a segment are tagged FULL_FACE, continuations STRIP_VERTEX; a naive
    sequence is all FULL_FACE.
    """
    vertices = np.asarray(vertices, dtype=np.int64)
    if len(vertices) and (vertices.min() < 0 or vertices.max() >= vocab.coord_bins):
        raise VocabularyError(
            f"coordinates outside [0, {vocab.coord_bins}) cannot be encoded; "
            "re-quantize or grow the vocabulary"
        )
    rows = vertices.tolist()

    ids: list[int] = [vocab.bos]
    types: list[TokenType] = [TokenType.CONTROL]
    if isinstance(seq, NaiveSequence):
        for v in seq.items:
            ids.extend(rows[v])
            types.extend((TokenType.FULL_FACE,) * 3)
    else:
        remaining_full = 3  # vertices left in the current segment's opening face
        for item in seq.items:
            if item is RESTART:
                ids.append(vocab.amp)
                types.append(TokenType.AMP)
                remaining_full = 3
            else:
                ids.extend(rows[item])
                tag = TokenType.FULL_FACE if remaining_full > 0 else TokenType.STRIP_VERTEX
                types.extend((tag,) * 3)
                if remaining_full > 0:
                    remaining_full -= 1
    ids.append(vocab.eos)
    types.append(TokenType.CONTROL)
    return TokenSequence(ids, types, vocab.coord_bins)


def decode(tokens: TokenSequence, vocab: Vocabulary) -> tuple[AmtSequence | NaiveSequence, np.ndarray]:
    """Invert encode: rebuild the item sequence and a coordinate table.

    Table indices are assigned by first occurrence of each coordinate
    triple.  The stream decodes as a strip sequence when it contains any
    restart or strip-continuation token, as a naive sequence otherwise.
    Raises on missing framing, unknown ids, or vertices truncated by a
    restart or EOS.
    """
    ids = tokens.ids
    if not ids or ids[0] != vocab.bos:
        raise FormatError("stream does not begin with BOS")
    try:
        end = ids.index(vocab.eos)
    except ValueError:
        raise FormatError("stream has no EOS") from None
    if any(t != vocab.pad for t in ids[end + 1 :]):
        raise FormatError("non-padding tokens after EOS")

    table: dict[tuple[int, int, int], int] = {}
    items: list = []
    pending: list[int] = []
    for pos in range(1, end):
        tid = ids[pos]
        if 0 <= tid < vocab.coord_bins:
            pending.append(tid)
            if len(pending) == 3:
                key = tuple(pending)
                idx = table.setdefault(key, len(table))
                items.append(idx)
                pending = []
        elif tid == vocab.amp:
            if pending:
                raise SequenceError(
                    f"restart after {len(pending)} of 3 coordinate ids", pos
                )
            items.append(RESTART)
        elif tid in (vocab.bos, vocab.pad):
            raise FormatError(f"unexpected control id {tid} inside payload")
        else:
            raise FormatError(f"unknown token id {tid}")
    if pending:
        raise SequenceError(f"stream ends after {len(pending)} of 3 coordinate ids", end)

    vertices = np.array(list(table), dtype=np.int64).reshape(-1, 3)
    has_amt_structure = any(it is RESTART for it in items) or any(
        t is TokenType.STRIP_VERTEX for t in tokens.types
    )
    seq: AmtSequence | NaiveSequence
    if has_amt_structure:
        seq = AmtSequence(items, 0)
        seq.face_count = sequence_stats(seq)["faces_encoded"]
    else:
        seq = NaiveSequence(items)

    # Round-trip guard: mismatched type annotations are a malformed stream.
    redone = encode(seq, vertices, vocab)
    if redone.ids != ids[: end + 1] or redone.types != tokens.types[: end + 1]:
        raise FormatError("type annotations inconsistent with id structure")
    return seq, vertices


def serialize(tokens: TokenSequence) -> bytes:
    """Fixed little-endian binary form: header then (u32 id, u8 type) records."""
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, tokens.coord_bins, len(tokens.ids))
    records = np.empty(len(tokens.ids), dtype=_RECORD_DTYPE)
    records["id"] = tokens.ids
    records["type"] = [int(t) for t in tokens.types]
    return header + records.tobytes()


def deserialize(data: bytes) -> TokenSequence:
    """Inverse of serialize; bit-exact round trip."""
    if len(data) < _HEADER.size:
        raise FormatError("stream shorter than header")
    magic, version, bins, length = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic 0x{magic:08X}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")
    body = data[_HEADER.size :]
    if len(body) != length * _RECORD_DTYPE.itemsize:
        raise FormatError(
            f"length field says {length} records, body holds {len(body)} bytes"
        )
    records = np.frombuffer(body, dtype=_RECORD_DTYPE)
    try:
        types = [TokenType(int(t)) for t in records["type"]]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return TokenSequence([int(i) for i in records["id"]], types, int(bins))


def to_json(tokens: TokenSequence) -> str:
    """Debug mirror of the binary format."""
    return json.dumps(
        {
            "bins": tokens.coord_bins,
            "ids": tokens.ids,
            "types": [t.name for t in tokens.types],
        }
    )


def from_json(text: str) -> TokenSequence:
    try:
        obj = json.loads(text)
        return TokenSequence(
            [int(i) for i in obj["ids"]],
            [TokenType[name] for name in obj["types"]],
            int(obj["bins"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad JSON token stream: {exc}") from None
