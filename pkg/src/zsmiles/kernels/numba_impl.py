"""JIT-compiled hot loops.

All kernels work on flat uint8 buffers with int64 start offsets so a whole
batch of lines crosses the JIT boundary in one call. The trie is two flat
arrays: ``children`` of shape (n_nodes, 256) holding child node ids (-1 for
no edge, row 0 is the root) and a per-node terminal annotation (``term_code``
for the codec, ``term_len`` for overlap scoring).

nogil lets pipeline worker threads overlap inside these loops.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def compress_batch(children, term_code, flat, starts, out, out_lens):
    """Minimum-cost parse of each line; a match emits 1 byte, an escape 2.

    Ties at equal cost go to the longest match. Line i writes into the
    region out[2*starts[i] : 2*starts[i+1]] and its payload length lands in
    out_lens[i]. Returns the number of escapes emitted.
    """
    n_lines = starts.shape[0] - 1
    escapes = 0
    for li in range(n_lines):
        s = starts[li]
        n = starts[li + 1] - s
        if n == 0:
            out_lens[li] = 0
            continue
        cost = np.empty(n + 1, np.int64)
        blen = np.empty(n, np.int32)
        bcode = np.empty(n, np.int16)
        cost[n] = 0
        for i in range(n - 1, -1, -1):
            c_best = 2 + cost[i + 1]  # escape: marker + literal
            l_best = 1
            k_best = np.int16(-1)
            node = 0
            j = i
            while j < n:
                node = children[node, flat[s + j]]
                if node < 0:
                    break
                j += 1
                tc = term_code[node]
                if tc >= 0:
                    cand = 1 + cost[j]
                    if cand < c_best or (cand == c_best and j - i > l_best):
                        c_best = cand
                        l_best = j - i
                        k_best = tc
            cost[i] = c_best
            blen[i] = l_best
            bcode[i] = k_best
        w = 2 * s
        i = 0
        while i < n:
            if bcode[i] < 0:
                out[w] = 0x20
                out[w + 1] = flat[s + i]
                w += 2
                escapes += 1
                i += 1
            else:
                out[w] = bcode[i]
                w += 1
                i += blen[i]
        out_lens[li] = w - 2 * s
    return escapes


@njit(cache=True, nogil=True)
def decompress_sizes(exp_len, valid, flat, starts, out_lens, status, errpos):
    """First decode pass: per-line output size and error detection.

    status[i]: 0 ok, 1 unknown code, 2 truncated escape; errpos[i] is the
    in-record byte offset of the failure. Returns (total_out, escapes).
    """
    n_lines = starts.shape[0] - 1
    total = 0
    escapes = 0
    for li in range(n_lines):
        s = starts[li]
        e = starts[li + 1]
        status[li] = 0
        errpos[li] = -1
        m = 0
        i = s
        while i < e:
            b = flat[i]
            if b == 0x20:
                if i + 1 >= e:
                    status[li] = 2
                    errpos[li] = i - s
                    m = 0
                    break
                m += 1
                i += 2
                escapes += 1
            elif valid[b] != 0:
                m += exp_len[b]
                i += 1
            else:
                status[li] = 1
                errpos[li] = i - s
                m = 0
                break
        out_lens[li] = m
        total += m
    return total, escapes


@njit(cache=True, nogil=True)
def decompress_fill(exp_off, exp_flat, flat, starts, status, out, out_starts):
    """Second decode pass: expand codes into the preallocated buffer.

    Lines flagged by decompress_sizes are skipped (their out length is 0).
    """
    n_lines = starts.shape[0] - 1
    for li in range(n_lines):
        if status[li] != 0:
            continue
        i = starts[li]
        e = starts[li + 1]
        w = out_starts[li]
        while i < e:
            b = flat[i]
            if b == 0x20:
                out[w] = flat[i + 1]
                w += 1
                i += 2
            else:
                o = exp_off[b]
                for k in range(exp_off[b + 1] - o):
                    out[w + k] = exp_flat[o + k]
                w += exp_off[b + 1] - o
                i += 1


@njit(cache=True, nogil=True)
def overlap_batch(children, term_len, pats, lens, out):
    """Greedy longest-match cover of each pattern row against a trie.

    out[r] = bytes of pats[r, :lens[r]] covered; unmatched positions advance
    by one byte and contribute nothing.
    """
    for r in range(pats.shape[0]):
        n = lens[r]
        pos = 0
        cov = 0
        while pos < n:
            node = 0
            best = 0
            j = pos
            while j < n:
                node = children[node, pats[r, j]]
                if node < 0:
                    break
                j += 1
                if term_len[node] >= 0:
                    best = j - pos
            if best > 0:
                cov += best
                pos += best
            else:
                pos += 1
        out[r] = cov
