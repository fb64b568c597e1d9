"""SMILES lexical layer: alphabet, tokenizer, ring-ID renumbering.

The tokenizer is deliberately shallow; it only resolves enough structure
to tell ring-closure digits apart from bracket-atom digits and to keep
byte spans exact. Chemical validation is out of scope.
"""

from enum import Enum

import numpy as np

from .errors import (
    MalformedPercent,
    RingIdOverflow,
    TokenizeError,
    UnbalancedBracket,
    UnpairedRingClosure,
    ZsmilesError,
)

# Every byte legal in a SMILES line outside of escapes. Space (0x20) is the
# escape marker in compressed output and is never a member.
ALPHABET = frozenset(
    b"ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    b"abcdefghijklmnopqrstuvwxyz"
    b"0123456789"
    b"[]()=#-+@/\\%.:*$~"
)

ALPHABET_MASK = np.zeros(256, dtype=bool)
ALPHABET_MASK[list(ALPHABET)] = True

_BONDS = frozenset(b"-=#$:/\\~")
_DIGITS = frozenset(b"0123456789")
_LETTERS = frozenset(b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz")


def is_alphabet_member(b: int) -> bool:
    return b in ALPHABET


class TokenKind(Enum):
    Atom = "atom"
    BracketAtom = "bracket_atom"
    Bond = "bond"
    BranchOpen = "branch_open"
    BranchClose = "branch_close"
    RingClosure = "ring_closure"
    Dot = "dot"
    Other = "other"


class Token:
    __slots__ = ("kind", "start", "end", "ring_id")

    def __init__(self, kind: TokenKind, start: int, end: int, ring_id: int | None = None):
        self.kind = kind
        self.start = start
        self.end = end
        self.ring_id = ring_id

    def text(self, line: bytes) -> bytes:
        return line[self.start:self.end]

    def __repr__(self):
        rid = f", ring_id={self.ring_id}" if self.ring_id is not None else ""
        return f"Token({self.kind.name}, {self.start}:{self.end}{rid})"

    def __eq__(self, other):
        return (isinstance(other, Token)
                and (self.kind, self.start, self.end, self.ring_id)
                == (other.kind, other.start, other.end, other.ring_id))


# Ring-closure digits are only such when they follow an atom, a bond symbol,
# or another ring closure; anything else (stray leading digit, digit after a
# paren) is passed through as Other.
_RING_PREDECESSORS = frozenset({
    TokenKind.Atom, TokenKind.BracketAtom, TokenKind.Bond, TokenKind.RingClosure,
})


def tokenize(line: bytes) -> list[Token]:
    """Split a SMILES line into tokens whose spans partition the input.

    Raises UnbalancedBracket for an unclosed ``[`` and MalformedPercent for
    a ``%`` not followed by two digits. Unknown bytes become Other tokens;
    the tokenizer never drops input.
    """
    tokens: list[Token] = []
    i = 0
    n = len(line)
    ring_ok = False
    while i < n:
        b = line[i]
        if b == 0x5B:  # [
            close = line.find(b"]", i + 1)
            if close < 0:
                raise UnbalancedBracket(f"unclosed '[' at offset {i}")
            tokens.append(Token(TokenKind.BracketAtom, i, close + 1))
            i = close + 1
            ring_ok = True
        elif b == 0x25:  # %
            if i + 2 >= n or line[i + 1] not in _DIGITS or line[i + 2] not in _DIGITS:
                raise MalformedPercent(f"'%' without two digits at offset {i}")
            if ring_ok:
                rid = (line[i + 1] - 0x30) * 10 + (line[i + 2] - 0x30)
                tokens.append(Token(TokenKind.RingClosure, i, i + 3, rid))
            else:
                tokens.append(Token(TokenKind.Other, i, i + 3))
            i += 3
        elif b in _DIGITS:
            if ring_ok:
                tokens.append(Token(TokenKind.RingClosure, i, i + 1, b - 0x30))
            else:
                tokens.append(Token(TokenKind.Other, i, i + 1))
            i += 1
        elif b in _LETTERS or b == 0x2A:  # letters and the * wildcard atom
            tokens.append(Token(TokenKind.Atom, i, i + 1))
            i += 1
        elif b in _BONDS:
            tokens.append(Token(TokenKind.Bond, i, i + 1))
            i += 1
        elif b == 0x28:
            tokens.append(Token(TokenKind.BranchOpen, i, i + 1))
            i += 1
        elif b == 0x29:
            tokens.append(Token(TokenKind.BranchClose, i, i + 1))
            i += 1
        elif b == 0x2E:
            tokens.append(Token(TokenKind.Dot, i, i + 1))
            i += 1
        else:
            tokens.append(Token(TokenKind.Other, i, i + 1))
            i += 1
        ring_ok = tokens[-1].kind in _RING_PREDECESSORS
    return tokens


def _ring_intervals(tokens: list[Token]) -> list[tuple[int, int]]:
    """Pair ring-closure tokens into (open, close) token-index intervals.

    Occurrences of one ID alternate open/close; IDs may be reused after
    closing. A leftover open ID raises UnpairedRingClosure.
    """
    open_at: dict[int, int] = {}
    intervals: list[tuple[int, int]] = []
    for ti, tok in enumerate(tokens):
        if tok.kind is not TokenKind.RingClosure:
            continue
        rid = tok.ring_id
        if rid in open_at:
            intervals.append((open_at.pop(rid), ti))
        else:
            open_at[rid] = ti
    if open_at:
        ids = ", ".join(str(r) for r in sorted(open_at))
        raise UnpairedRingClosure(f"ring id(s) {ids} never close")
    return intervals


def _color_intervals(intervals: list[tuple[int, int]]) -> dict[int, int]:
    """Assign each ring interval the smallest ID unused by any overlapping
    already-assigned interval, processing rings in closing order.

    Returns a map from token index (both endpoints) to the new ID.
    """
    assigned: list[tuple[int, int, int]] = []
    colors: dict[int, int] = {}
    for o, c in sorted(intervals, key=lambda iv: iv[1]):
        used = {col for o2, c2, col in assigned if o2 < c and o < c2}
        col = 0
        while col in used:
            col += 1
        if col > 99:
            raise RingIdOverflow("more than 100 mutually overlapping rings")
        assigned.append((o, c, col))
        colors[o] = col
        colors[c] = col
    return colors


def preprocess_line(line: bytes, mode: str = "strict") -> bytes:
    """Renumber ring-closure IDs so low IDs are reused across the line.

    Rings are intervals between their opening and closing digits; the
    earliest-closing ring gets the lowest free ID, and an ID is free again
    once its ring has closed. Non-ring bytes pass through untouched, so the
    output stays a valid SMILES of the same molecule. Idempotent.

    In lenient mode a line that fails to tokenize (or has unpaired rings)
    is returned unchanged instead of raising.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown mode {mode!r}")
    try:
        tokens = tokenize(line)
        intervals = _ring_intervals(tokens)
    except ZsmilesError:
        if mode == "lenient":
            return line
        raise
    if not intervals:
        return line
    colors = _color_intervals(intervals)
    parts = []
    for ti, tok in enumerate(tokens):
        if tok.kind is TokenKind.RingClosure:
            rid = colors[ti]
            parts.append(b"%d" % rid if rid < 10 else b"%%%02d" % rid)
        else:
            parts.append(line[tok.start:tok.end])
    return b"".join(parts)
