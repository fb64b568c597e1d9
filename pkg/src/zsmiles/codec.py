"""Per-line encode/decode against a trained dictionary.

A compressed record is a byte string: values with the high bit set (or in the
identity set) name dictionary entries, and 0x20 escapes the following literal
byte. Records never contain 0x0A or 0x0D, so newline keeps working as the
record separator.
"""

import numpy as np

from . import kernels
from .errors import DecodeError, TruncatedEscape, UnknownCode

ESCAPE = 0x20


def _pack(lines) -> tuple[np.ndarray, np.ndarray]:
    joined = b"".join(lines)
    starts = np.zeros(len(lines) + 1, np.int64)
    np.cumsum([len(l) for l in lines], out=starts[1:])
    return np.frombuffer(joined, np.uint8), starts


def compress_lines(d, lines) -> tuple[list[bytes], int]:
    """Encode a batch of raw lines; returns (records, escape_count).

    Each record is the cost-minimal parse: every dictionary match costs one
    output byte, every escaped literal costs two.
    """
    lines = list(lines)
    if not lines:
        return [], 0
    trie = d.encode_trie
    flat, starts = _pack(lines)
    # Worst case is all-escape output: two bytes per input byte.
    out = np.empty(2 * int(starts[-1]), np.uint8)
    out_lens = np.empty(len(lines), np.int64)
    escapes = kernels.compress_batch(trie.children, trie.term_code,
                                     flat, starts, out, out_lens)
    recs = [out[2 * starts[i]:2 * starts[i] + out_lens[i]].tobytes()
            for i in range(len(lines))]
    return recs, int(escapes)


def compress_line(d, line: bytes) -> bytes:
    recs, _ = compress_lines(d, [line])
    return recs[0]


def decompress_lines(d, records):
    """Decode a batch of records.

    Returns (lines, errors, escape_count) where lines[i] is None for a bad
    record and errors lists (index, DecodeError) pairs in input order.
    """
    records = list(records)
    if not records:
        return [], [], 0
    exp_len, valid, exp_off, exp_flat = d.decode_tables
    flat, starts = _pack(records)
    out_lens = np.empty(len(records), np.int64)
    status = np.empty(len(records), np.int8)
    errpos = np.empty(len(records), np.int64)
    total, escapes = kernels.decompress_sizes(exp_len, valid, flat, starts,
                                              out_lens, status, errpos)
    out_starts = np.zeros(len(records) + 1, np.int64)
    np.cumsum(out_lens, out=out_starts[1:])
    out = np.empty(int(total), np.uint8)
    kernels.decompress_fill(exp_off, exp_flat, flat, starts, status,
                            out, out_starts)

    lines: list[bytes | None] = []
    errors: list[tuple[int, DecodeError]] = []
    for i, st in enumerate(status):
        if st == 0:
            lines.append(out[out_starts[i]:out_starts[i + 1]].tobytes())
        else:
            off = int(errpos[i])
            if st == 1:
                err: DecodeError = UnknownCode(records[i][off], off)
            else:
                err = TruncatedEscape(off)
            lines.append(None)
            errors.append((i, err))
    return lines, errors, int(escapes)


def decompress_line(d, record: bytes) -> bytes:
    lines, errors, _ = decompress_lines(d, [record])
    if errors:
        raise errors[0][1]
    return lines[0]


def oracle_parse_cost(d, line: bytes) -> int:
    """Minimum payload bytes by exhaustive recursion; test-support only.

    Deliberately avoids the trie and the DP sweep (plain substring checks,
    no memoization) so it can referee them. Exponential: keep |line| <= 20.
    """
    if len(line) > 20:
        raise ValueError("oracle is exponential; line too long")
    pats = [(p, len(p)) for p in d.learned]
    identity = d.identity

    def best(i: int) -> int:
        if i == len(line):
            return 0
        cost = (1 if line[i] in identity else 2) + best(i + 1)
        for p, n in pats:
            if line[i:i + n] == p:
                cost = min(cost, 1 + best(i + n))
        return cost

    return best(0)
