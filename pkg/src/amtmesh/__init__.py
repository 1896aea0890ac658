"""Adjacency-driven mesh tokenization with a naive baseline and benchmark.

Pipeline: ``parse_obj`` -> ``quantize`` -> ``canonicalize`` -> ``tokenize``
(or ``tokenize_naive``) -> ``encode`` -> ``serialize``; every stage has an
exact inverse.  ``MeshTokenizer`` packages the whole chain as a scikit-learn
transformer, and ``bench.run_corpus`` measures sequence-length ratios over a
corpus.
"""

from .amt_codec import RESTART, AmtSequence, detokenize, sequence_stats, tokenize
from .bench import (
    BenchConfig,
    CorpusReport,
    MeshRecord,
    RoundtripReport,
    run_corpus,
    run_roundtrip_suite,
)
from .canonical import CanonicalMesh, adjacent_third_vertices, canonicalize
from .encoding import (
    TokenSequence,
    TokenType,
    Vocabulary,
    decode,
    deserialize,
    encode,
    serialize,
)
from .errors import AmtError, FormatError, ObjParseError, SequenceError, VocabularyError
from .estimators import MeshCanonicalizer, MeshTokenizer
from .mesh_io import ParseReport, QuantizationSpec, RawMesh, parse_obj, quantize, write_obj
from .naive_codec import NaiveSequence, detokenize_naive, tokenize_naive
from .synthetic import generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "AmtError",
    "AmtSequence",
    "BenchConfig",
    "CanonicalMesh",
    "CorpusReport",
    "FormatError",
    "MeshCanonicalizer",
    "MeshRecord",
    "MeshTokenizer",
    "NaiveSequence",
    "ObjParseError",
    "ParseReport",
    "QuantizationSpec",
    "RESTART",
    "RawMesh",
    "RoundtripReport",
    "SequenceError",
    "TokenSequence",
    "TokenType",
    "Vocabulary",
    "VocabularyError",
    "adjacent_third_vertices",
    "canonicalize",
    "decode",
    "deserialize",
    "detokenize",
    "detokenize_naive",
    "encode",
    "generate_synthetic",
    "parse_obj",
    "quantize",
    "run_corpus",
    "run_roundtrip_suite",
    "sequence_stats",
    "serialize",
    "tokenize",
    "tokenize_naive",
    "write_obj",
]
