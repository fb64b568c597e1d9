"""Byte trie over dictionary patterns, stored as flat arrays.

Node 0 is the root; ``children[node, byte]`` is the child id or -1. A
terminal node carries the pattern's output code and length. The flat
layout is what the kernels consume directly.
"""

import numpy as np


class PatternTrie:
    __slots__ = ("children", "term_code", "term_len", "max_len")

    def __init__(self, children: np.ndarray, term_code: np.ndarray,
                 term_len: np.ndarray, max_len: int):
        self.children = children
        self.term_code = term_code
        self.term_len = term_len
        self.max_len = max_len

    @classmethod
    def from_patterns(cls, entries: list[tuple[bytes, int]]) -> "PatternTrie":
        """Build from (pattern, code) pairs. Each pattern gets exactly one
        terminal; inserting the same pattern twice is a bug upstream."""
        children = [np.full(256, -1, np.int32)]
        term_code = [-1]
        term_len = [-1]
        max_len = 0
        for pattern, code in entries:
            node = 0
            for b in pattern:
                nxt = children[node][b]
                if nxt < 0:
                    nxt = len(children)
                    children.append(np.full(256, -1, np.int32))
                    term_code.append(-1)
                    term_len.append(-1)
                    children[node][b] = nxt
                node = nxt
            if term_code[node] >= 0:
                raise ValueError(f"duplicate pattern {pattern!r}")
            term_code[node] = code
            term_len[node] = len(pattern)
            max_len = max(max_len, len(pattern))
        return cls(
            np.ascontiguousarray(np.stack(children)),
            np.array(term_code, np.int16),
            np.array(term_len, np.int16),
            max_len,
        )

    @property
    def n_nodes(self) -> int:
        return self.children.shape[0]

    def matches_at(self, data: bytes, pos: int) -> list[tuple[int, int]]:
        """All dictionary prefixes of data[pos:], as (length, code) pairs."""
        found = []
        node = 0
        j = pos
        while j < len(data):
            node = int(self.children[node, data[j]])
            if node < 0:
                break
            j += 1
            if self.term_code[node] >= 0:
                found.append((j - pos, int(self.term_code[node])))
        return found


def build_trie(d) -> PatternTrie:
    """Trie over every entry of a dictionary: learned patterns with their
    extended codes plus each identity byte mapping to itself."""
    entries = [(bytes([b]), b) for b in sorted(d.identity)]
    entries += [(p, d.code_of[p]) for p in d.learned]
    return PatternTrie.from_patterns(entries)
