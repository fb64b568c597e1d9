"""Trainable dictionary compression for SMILES corpora."""

from .codec import compress_line, compress_lines, decompress_line, decompress_lines
from .dictionary import (
    Dictionary,
    GenerationParams,
    RankTable,
    compute_overlap,
    count_substrings,
    deserialize,
    generate,
    load_dictionary,
    save_dictionary,
    serialize,
)
from .errors import (
    BadMagic,
    DecodeError,
    DictionaryFormatError,
    EmptyCorpus,
    LineError,
    MalformedPercent,
    NonAlphabetByteInPattern,
    PatternTooLong,
    RingIdOverflow,
    TokenizeError,
    TooManyPatterns,
    TruncatedEscape,
    UnbalancedBracket,
    UnknownCode,
    UnpairedRingClosure,
    UnsupportedVersion,
    ZsmilesError,
)
from .kernels import BACKEND
from .smiles import ALPHABET, preprocess_line, tokenize

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "BACKEND",
    "BadMagic",
    "DecodeError",
    "Dictionary",
    "DictionaryFormatError",
    "EmptyCorpus",
    "GenerationParams",
    "LineError",
    "MalformedPercent",
    "NonAlphabetByteInPattern",
    "PatternTooLong",
    "RankTable",
    "RingIdOverflow",
    "TokenizeError",
    "TooManyPatterns",
    "TruncatedEscape",
    "UnbalancedBracket",
    "UnknownCode",
    "UnpairedRingClosure",
    "UnsupportedVersion",
    "ZsmilesError",
    "compress_line",
    "compress_lines",
    "compute_overlap",
    "count_substrings",
    "decompress_line",
    "decompress_lines",
    "deserialize",
    "generate",
    "load_dictionary",
    "preprocess_line",
    "save_dictionary",
    "serialize",
    "tokenize",
    "__version__",
]
