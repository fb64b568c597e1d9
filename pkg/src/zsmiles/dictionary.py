"""Compression dictionary: training, representation, and the ZSD1 file format.

Training counts every substring of the corpus within the configured length
band, then repeatedly picks the candidate with the highest
``occurrences * (length - overlap_with_already_selected)`` score. Selected
patterns get the extended-ASCII codes 0x80.. in selection order; identity
entries (the pre-population set) encode single bytes as themselves.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import (
    BadMagic,
    DictionaryFormatError,
    EmptyCorpus,
    NonAlphabetByteInPattern,
    PatternTooLong,
    TooManyPatterns,
    UnsupportedVersion,
)
from .smiles import ALPHABET, ALPHABET_MASK, preprocess_line
from .trie import PatternTrie, build_trie

MAX_PATTERNS = 128
MAX_PATTERN_LEN = 64

PREPOPULATE_SETS = {
    "none": frozenset(),
    "smiles": ALPHABET,
    "printable": frozenset(range(0x21, 0x7F)),
}

_ZSD_MAGIC = b"ZSD1"

# Candidates below this initial-rank cutoff are left out of the selection
# working set; every pick is checked against the cutoff and the selection
# restarts with a larger set if the check ever fails, so output is identical
# to scoring the full table.
_WORKING_SET_CAP = 200_000


@dataclass(frozen=True)
class GenerationParams:
    l_min: int = 2
    l_max: int = 8
    t: int = 128
    prepopulate: str = "smiles"
    preprocess: bool = False

    def __post_init__(self):
        if not 2 <= self.l_min <= self.l_max <= MAX_PATTERN_LEN:
            raise ValueError(
                f"need 2 <= l_min <= l_max <= {MAX_PATTERN_LEN}, "
                f"got l_min={self.l_min} l_max={self.l_max}")
        if not 0 <= self.t <= MAX_PATTERNS:
            raise ValueError(f"need 0 <= t <= {MAX_PATTERNS}, got {self.t}")
        if self.prepopulate not in PREPOPULATE_SETS:
            raise ValueError(f"unknown prepopulate mode {self.prepopulate!r}")


class Dictionary:
    """Immutable pattern dictionary: learned multi-byte patterns in code
    order plus single-byte identity entries."""

    def __init__(self, learned, prepopulate: str | None = "smiles", *,
                 l_min: int = 2, l_max: int = 8, identity=None):
        self.learned: tuple[bytes, ...] = tuple(bytes(p) for p in learned)
        self.l_min = l_min
        self.l_max = l_max
        self.prepopulate = prepopulate
        if identity is None:
            if prepopulate not in PREPOPULATE_SETS:
                raise ValueError(f"unknown prepopulate mode {prepopulate!r}")
            self.identity = PREPOPULATE_SETS[prepopulate]
        else:
            if prepopulate is not None:
                raise ValueError("pass prepopulate=None with an explicit identity set")
            self.identity = frozenset(identity)
        self._validate()

    def _validate(self):
        if not 2 <= self.l_min <= self.l_max <= MAX_PATTERN_LEN:
            raise ValueError(f"bad length bounds [{self.l_min}, {self.l_max}]")
        if len(self.learned) > MAX_PATTERNS:
            raise ValueError(f"{len(self.learned)} learned patterns, max {MAX_PATTERNS}")
        if len(set(self.learned)) != len(self.learned):
            raise ValueError("duplicate learned patterns")
        for p in self.learned:
            if not self.l_min <= len(p) <= self.l_max:
                raise ValueError(f"pattern {p!r} outside [{self.l_min}, {self.l_max}]")
            if any(b not in ALPHABET for b in p):
                raise ValueError(f"pattern {p!r} has non-alphabet bytes")
        for b in self.identity:
            if not 0x21 <= b <= 0x7E:
                raise ValueError(f"identity byte 0x{b:02x} not printable")

    @cached_property
    def code_of(self) -> dict[bytes, int]:
        codes = {bytes([b]): b for b in self.identity}
        for i, p in enumerate(self.learned):
            codes[p] = 0x80 + i
        return codes

    @cached_property
    def encode_trie(self) -> PatternTrie:
        return build_trie(self)

    @cached_property
    def decode_tables(self):
        """(exp_len, valid, exp_off, exp_flat) arrays for the decode kernels:
        per-code expansion lengths, validity mask, and the expansions packed
        flat with prefix offsets."""
        exps: list[bytes] = [b""] * 256
        valid = np.zeros(256, np.uint8)
        for b in self.identity:
            exps[b] = bytes([b])
            valid[b] = 1
        for i, p in enumerate(self.learned):
            exps[0x80 + i] = p
            valid[0x80 + i] = 1
        exp_len = np.array([len(e) for e in exps], np.int32)
        exp_off = np.zeros(257, np.int64)
        np.cumsum(exp_len, out=exp_off[1:])
        exp_flat = np.frombuffer(b"".join(exps), np.uint8).copy()
        return exp_len, valid, exp_off, exp_flat

    def __eq__(self, other):
        return (isinstance(other, Dictionary)
                and self.learned == other.learned
                and self.identity == other.identity
                and self.l_min == other.l_min
                and self.l_max == other.l_max
                and self.prepopulate == other.prepopulate)

    def __repr__(self):
        return (f"Dictionary({len(self.learned)} learned, "
                f"{len(self.identity)} identity, prepopulate={self.prepopulate!r})")


@dataclass
class RankTable:
    """Substring census of a training corpus.

    Rows of ``patterns`` are zero-padded to the table width; ``ranks`` is the
    current occurrences*(length-overlap) score, which starts at
    occurrences*length before any selection."""

    patterns: np.ndarray
    lengths: np.ndarray
    occurrences: np.ndarray
    ranks: np.ndarray

    def __len__(self):
        return self.patterns.shape[0]

    def pattern(self, i: int) -> bytes:
        return self.patterns[i, :self.lengths[i]].tobytes()

    @property
    def entries(self) -> dict[bytes, tuple[int, int]]:
        return {self.pattern(i): (int(self.occurrences[i]), int(self.ranks[i]))
                for i in range(len(self))}


def count_substrings(corpus, params: GenerationParams) -> RankTable:
    """Exact occurrence counts of all alphabet-only substrings with length
    in [l_min, l_max]; overlapping occurrences within a line all count.
    """
    lines = list(corpus)
    if not lines:
        raise EmptyCorpus("no training lines")
    # Lines joined on a newline; the separator is outside the alphabet, so
    # windows crossing a boundary are discarded by the same mask that drops
    # candidates with non-alphabet bytes.
    buf = np.frombuffer(b"\n".join(lines), np.uint8)
    n = buf.size
    nonmember = np.empty(n + 1, np.int64)
    nonmember[0] = 0
    np.cumsum(~ALPHABET_MASK[buf], out=nonmember[1:])

    width = params.l_max
    mats, lens, occs = [], [], []
    for L in range(params.l_min, params.l_max + 1):
        if n < L:
            break
        nw = n - L + 1
        ok = (nonmember[L:] - nonmember[:nw]) == 0
        if not ok.any():
            continue
        if L <= 8:
            keys = np.zeros(nw, np.uint64)
            for k in range(L):
                keys = (keys << np.uint64(8)) | buf[k:k + nw].astype(np.uint64)
            uniq, counts = np.unique(keys[ok], return_counts=True)
            mat = np.zeros((uniq.size, width), np.uint8)
            for k in range(L):
                mat[:, L - 1 - k] = (uniq >> np.uint64(8 * k)).astype(np.uint8)
        else:
            win = np.lib.stride_tricks.sliding_window_view(buf, L)[ok]
            rec = np.ascontiguousarray(win).view(np.dtype((np.void, L))).ravel()
            uniq, counts = np.unique(rec, return_counts=True)
            rows = np.frombuffer(uniq.tobytes(), np.uint8).reshape(-1, L)
            mat = np.zeros((rows.shape[0], width), np.uint8)
            mat[:, :L] = rows
        mats.append(mat)
        lens.append(np.full(mat.shape[0], L, np.int64))
        occs.append(counts.astype(np.int64))

    if mats:
        patterns = np.ascontiguousarray(np.vstack(mats))
        lengths = np.concatenate(lens)
        occurrences = np.concatenate(occs)
    else:
        patterns = np.zeros((0, width), np.uint8)
        lengths = np.zeros(0, np.int64)
        occurrences = np.zeros(0, np.int64)
    return RankTable(patterns, lengths, occurrences, occurrences * lengths)


def compute_overlap(p: bytes, selected) -> int:
    """Bytes of p covered by a greedy longest-match parse against the
    already-selected patterns; unmatched positions advance one byte."""
    sel = list(dict.fromkeys(selected))
    if not sel or not p:
        return 0
    trie = PatternTrie.from_patterns([(s, 0) for s in sel])
    width = max(len(p), 1)
    pats = np.zeros((1, width), np.uint8)
    pats[0, :len(p)] = np.frombuffer(bytes(p), np.uint8)
    out = np.empty(1, np.int64)
    kernels.overlap_batch(trie.children, trie.term_len,
                          pats, np.array([len(p)], np.int64), out)
    return int(out[0])


def _pick(patterns, lengths, ranks, rmax):
    """Index of the winner at rank rmax: longest first, then lexicographically
    smallest byte sequence."""
    tied = np.flatnonzero(ranks == rmax)
    tlen = lengths[tied]
    tied = tied[tlen == tlen.max()]
    if tied.size == 1:
        return int(tied[0])
    lmax = int(lengths[tied[0]])
    return int(min(tied, key=lambda i: patterns[i, :lmax].tobytes()))


def _try_select(patterns, lengths, occ, t, cap):
    """One selection run over the top-`cap` candidates by initial rank.
    Returns None if a pick ever fails the exclusion check (retry bigger)."""
    m = patterns.shape[0]
    init_ranks = occ * lengths
    if cap < m:
        order = np.argsort(-init_ranks, kind="stable")
        keep = np.sort(order[:cap])
        excluded_max = int(init_ranks[order[cap]])
        patterns = np.ascontiguousarray(patterns[keep])
        lengths = lengths[keep]
        occ = occ[keep]
    else:
        excluded_max = -1

    selected: list[bytes] = []
    while len(selected) < t and patterns.shape[0]:
        if selected:
            sel_trie = PatternTrie.from_patterns([(s, 0) for s in selected])
            ov = np.empty(patterns.shape[0], np.int64)
            kernels.overlap_batch(sel_trie.children, sel_trie.term_len,
                                  patterns, lengths, ov)
            ranks = occ * (lengths - ov)
        else:
            ranks = occ * lengths
        alive = ranks > 0
        if not alive.all():
            patterns = np.ascontiguousarray(patterns[alive])
            lengths = lengths[alive]
            occ = occ[alive]
            ranks = ranks[alive]
        if patterns.shape[0] == 0:
            break
        rmax = int(ranks.max())
        if rmax <= excluded_max:
            return None
        bi = _pick(patterns, lengths, ranks, rmax)
        selected.append(patterns[bi, :lengths[bi]].tobytes())
        keep = np.ones(patterns.shape[0], bool)
        keep[bi] = False
        patterns = np.ascontiguousarray(patterns[keep])
        lengths = lengths[keep]
        occ = occ[keep]
    return selected


def select_patterns(table: RankTable, t: int) -> list[bytes]:
    """Repeated argmax of the rank score with full overlap recomputation
    after every pick; deterministic under the documented tie rule."""
    cap = _WORKING_SET_CAP
    while True:
        got = _try_select(table.patterns, table.lengths, table.occurrences, t, cap)
        if got is not None:
            return got
        cap *= 4


def generate(corpus, params: GenerationParams, mode: str = "strict") -> Dictionary:
    """Train a dictionary on a corpus of SMILES lines (bytes, no newlines)."""
    lines = list(corpus)
    if not lines:
        raise EmptyCorpus("no training lines")
    if params.preprocess:
        lines = [preprocess_line(l, mode) for l in lines]
    table = count_substrings(lines, params)
    learned = select_patterns(table, params.t)
    return Dictionary(learned, params.prepopulate,
                      l_min=params.l_min, l_max=params.l_max)


def serialize(d: Dictionary) -> bytes:
    if d.prepopulate is None:
        raise ValueError("custom identity sets have no file representation")
    lines = [_ZSD_MAGIC,
             b"prepopulate=" + d.prepopulate.encode(),
             b"lmin=%d lmax=%d" % (d.l_min, d.l_max)]
    lines.extend(d.learned)
    return b"\n".join(lines) + b"\n"


def deserialize(data: bytes) -> Dictionary:
    rows = data.split(b"\n")
    if rows and rows[-1] == b"":
        rows.pop()
    if not rows or rows[0] != _ZSD_MAGIC:
        if rows and rows[0][:3] == _ZSD_MAGIC[:3]:
            raise UnsupportedVersion(f"unsupported version {rows[0]!r}")
        raise BadMagic("not a ZSD dictionary file")
    if len(rows) < 3:
        raise DictionaryFormatError("truncated header")
    if not rows[1].startswith(b"prepopulate="):
        raise DictionaryFormatError(f"bad prepopulate line {rows[1]!r}")
    mode = rows[1][len(b"prepopulate="):].decode("ascii", "replace")
    if mode not in PREPOPULATE_SETS:
        raise DictionaryFormatError(f"unknown prepopulate mode {mode!r}")
    fields = rows[2].split(b" ")
    if (len(fields) != 2 or not fields[0].startswith(b"lmin=")
            or not fields[1].startswith(b"lmax=")):
        raise DictionaryFormatError(f"bad bounds line {rows[2]!r}")
    try:
        l_min = int(fields[0][5:])
        l_max = int(fields[1][5:])
    except ValueError:
        raise DictionaryFormatError(f"bad bounds line {rows[2]!r}") from None
    if not 2 <= l_min <= l_max <= MAX_PATTERN_LEN:
        raise DictionaryFormatError(f"bad length bounds [{l_min}, {l_max}]")

    patterns = rows[3:]
    if len(patterns) > MAX_PATTERNS:
        raise TooManyPatterns(f"{len(patterns)} patterns, max {MAX_PATTERNS}")
    seen = set()
    for p in patterns:
        if len(p) > l_max:
            raise PatternTooLong(f"pattern {p!r} longer than lmax={l_max}")
        if len(p) < l_min:
            raise DictionaryFormatError(f"pattern {p!r} shorter than lmin={l_min}")
        if any(b not in ALPHABET for b in p):
            raise NonAlphabetByteInPattern(f"pattern {p!r}")
        if p in seen:
            raise DictionaryFormatError(f"duplicate pattern {p!r}")
        seen.add(p)
    return Dictionary(patterns, mode, l_min=l_min, l_max=l_max)


def save_dictionary(d: Dictionary, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(d))


def load_dictionary(path) -> Dictionary:
    with open(path, "rb") as fh:
        return deserialize(fh.read())
