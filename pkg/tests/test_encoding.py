import json

import numpy as np
import pytest
from hypothesis import given, settings

from amtmesh import (
    RESTART,
    AmtSequence,
    FormatError,
    NaiveSequence,
    SequenceError,
    TokenSequence,
    TokenType,
    Vocabulary,
    VocabularyError,
    decode,
    deserialize,
    encode,
    serialize,
    tokenize,
    tokenize_naive,
)
from amtmesh.encoding import from_json, to_json

from .conftest import canonical_meshes

VOCAB = Vocabulary(128)


def test_vocabulary_layout_is_documented_and_disjoint():
    v = Vocabulary(128)
    assert (v.bos, v.eos, v.pad, v.amp) == (128, 129, 130, 131)
    assert v.size == 132


class TestEncode:
    def test_amt_square_payload_and_types(self, square):
        tokens = encode(tokenize(square), square.vertices, VOCAB)
        assert tokens.payload_length() == 12
        assert tokens.types == (
            [TokenType.CONTROL]
            + [TokenType.FULL_FACE] * 9
            + [TokenType.STRIP_VERTEX] * 3
            + [TokenType.CONTROL]
        )
        assert tokens.ids[0] == VOCAB.bos and tokens.ids[-1] == VOCAB.eos

    def test_amt_soup_payload_and_types(self, two_triangle_soup):
        tokens = encode(tokenize(two_triangle_soup), two_triangle_soup.vertices, VOCAB)
        assert tokens.payload_length() == 19
        assert tokens.types[1:-1] == (
            [TokenType.FULL_FACE] * 9 + [TokenType.AMP] + [TokenType.FULL_FACE] * 9
        )

    def test_naive_square_all_full_face(self, square):
        tokens = encode(tokenize_naive(square), square.vertices, VOCAB)
        assert tokens.payload_length() == 18
        assert set(tokens.types[1:-1]) == {TokenType.FULL_FACE}

    def test_coordinate_ids_are_the_coordinates(self, square):
        tokens = encode(tokenize_naive(square), square.vertices, VOCAB)
        coords = [c for row in square.vertices[square.faces.reshape(-1)] for c in row]
        assert tokens.ids[1:-1] == [int(c) for c in coords]

    def test_overflowing_coordinate_rejected(self):
        table = np.array([[0, 0, 0], [0, 0, 200], [0, 1, 0]])
        with pytest.raises(VocabularyError):
            encode(NaiveSequence([0, 1, 2]), table, VOCAB)


class TestDecode:
    def test_round_trip_amt(self, square):
        tokens = encode(tokenize(square), square.vertices, VOCAB)
        seq, table = decode(tokens, VOCAB)
        assert isinstance(seq, AmtSequence)
        again = encode(seq, table, VOCAB)
        assert again.ids == tokens.ids and again.types == tokens.types

    def test_round_trip_naive(self, square):
        tokens = encode(tokenize_naive(square), square.vertices, VOCAB)
        seq, table = decode(tokens, VOCAB)
        assert isinstance(seq, NaiveSequence)
        assert encode(seq, table, VOCAB).ids == tokens.ids

    def test_nine_coordinate_payload_is_single_triangle(self):
        ids = [VOCAB.bos, 0, 0, 0, 0, 0, 1, 0, 1, 0, VOCAB.eos]
        types = [TokenType.CONTROL] + [TokenType.FULL_FACE] * 9 + [TokenType.CONTROL]
        seq, table = decode(TokenSequence(ids, types, 128), VOCAB)
        assert seq.items == [0, 1, 2]
        assert table.tolist() == [[0, 0, 0], [0, 0, 1], [0, 1, 0]]

    def test_truncated_vertex_before_amp(self):
        ids = [VOCAB.bos, 0, 0, 0, 0, 0, 1, 0, 1, 0, 5, 5, VOCAB.amp, VOCAB.eos]
        types = (
            [TokenType.CONTROL]
            + [TokenType.FULL_FACE] * 11
            + [TokenType.AMP, TokenType.CONTROL]
        )
        with pytest.raises(SequenceError, match="2 of 3"):
            decode(TokenSequence(ids, types, 128), VOCAB)

    def test_truncated_vertex_before_eos(self):
        ids = [VOCAB.bos, 0, 0, VOCAB.eos]
        types = [TokenType.CONTROL, TokenType.FULL_FACE, TokenType.FULL_FACE, TokenType.CONTROL]
        with pytest.raises(SequenceError, match="2 of 3"):
            decode(TokenSequence(ids, types, 128), VOCAB)

    def test_missing_bos_or_eos(self):
        with pytest.raises(FormatError, match="BOS"):
            decode(TokenSequence([0, VOCAB.eos], [TokenType.FULL_FACE, TokenType.CONTROL], 128), VOCAB)
        with pytest.raises(FormatError, match="EOS"):
            decode(TokenSequence([VOCAB.bos, 0], [TokenType.CONTROL, TokenType.FULL_FACE], 128), VOCAB)

    def test_unknown_id_rejected(self):
        ids = [VOCAB.bos, 999, VOCAB.eos]
        types = [TokenType.CONTROL, TokenType.FULL_FACE, TokenType.CONTROL]
        with pytest.raises(FormatError, match="unknown"):
            decode(TokenSequence(ids, types, 128), VOCAB)

    def test_inconsistent_types_rejected(self, square):
        tokens = encode(tokenize(square), square.vertices, VOCAB)
        tampered = TokenSequence(
            list(tokens.ids), [TokenType.STRIP_VERTEX] * len(tokens.ids), tokens.coord_bins
        )
        tampered.types[0] = tampered.types[-1] = TokenType.CONTROL
        with pytest.raises(FormatError, match="inconsistent"):
            decode(tampered, VOCAB)


class TestSerialize:
    def test_round_trip_bit_exact(self, square):
        tokens = encode(tokenize(square), square.vertices, VOCAB)
        blob = serialize(tokens)
        again = deserialize(blob)
        assert again.ids == tokens.ids
        assert again.types == tokens.types
        assert again.coord_bins == tokens.coord_bins
        assert serialize(again) == blob

    def test_empty_payload_round_trips(self):
        tokens = TokenSequence(
            [VOCAB.bos, VOCAB.eos], [TokenType.CONTROL, TokenType.CONTROL], 128
        )
        assert deserialize(serialize(tokens)).ids == tokens.ids

    def test_layout_is_fixed_little_endian(self):
        tokens = TokenSequence([VOCAB.bos, 5, VOCAB.eos],
                               [TokenType.CONTROL, TokenType.FULL_FACE, TokenType.CONTROL], 128)
        blob = serialize(tokens)
        golden = (
            b"AMTB"                      # magic
            + (1).to_bytes(4, "little")  # version
            + (128).to_bytes(4, "little")
            + (3).to_bytes(8, "little")
            + (128).to_bytes(4, "little") + bytes([TokenType.CONTROL])
            + (5).to_bytes(4, "little") + bytes([TokenType.FULL_FACE])
            + (129).to_bytes(4, "little") + bytes([TokenType.CONTROL])
        )
        assert blob == golden

    def test_corrupted_magic_rejected(self, square):
        blob = serialize(encode(tokenize(square), square.vertices, VOCAB))
        with pytest.raises(FormatError, match="magic"):
            deserialize(b"XXXX" + blob[4:])

    def test_length_mismatch_rejected(self, square):
        blob = serialize(encode(tokenize(square), square.vertices, VOCAB))
        with pytest.raises(FormatError, match="length"):
            deserialize(blob[:-3])

    def test_json_mirror(self, square):
        tokens = encode(tokenize(square), square.vertices, VOCAB)
        text = to_json(tokens)
        obj = json.loads(text)
        assert obj["bins"] == 128
        again = from_json(text)
        assert again.ids == tokens.ids and again.types == tokens.types


class TestLengthIdentity:
    @given(canonical_meshes())
    @settings(max_examples=150, deadline=None)
    def test_payload_arithmetic(self, canon):
        vocab = Vocabulary(64)
        amt_seq = tokenize(canon)
        amt = encode(amt_seq, canon.vertices, vocab)
        naive = encode(tokenize_naive(canon), canon.vertices, vocab)
        restarts = amt_seq.restart_items()
        faces = canon.n_faces
        assert amt.payload_length() == 3 * (faces + 2 * (restarts + 1)) + restarts
        assert naive.payload_length() == 9 * faces

    @given(canonical_meshes())
    @settings(max_examples=100, deadline=None)
    def test_decode_inverts_encode(self, canon):
        vocab = Vocabulary(64)
        tokens = encode(tokenize(canon), canon.vertices, vocab)
        seq, table = decode(tokens, vocab)
        again = encode(seq, table, vocab)
        assert again.ids == tokens.ids and again.types == tokens.types
        blob = serialize(tokens)
        assert serialize(deserialize(blob)) == blob
