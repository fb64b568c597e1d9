"""NumPy fallback kernels, same signatures and outputs as numba_impl.

Compression and overlap scoring run the lines of a batch in lockstep so
the inner work is array-wide gathers instead of per-byte Python. Decoding
is a plain lookup loop; it is already output-bound and not worth
vectorizing here.
"""

import numpy as np


def compress_batch(children, term_code, flat, starts, out, out_lens):
    n_lines = starts.shape[0] - 1
    if n_lines == 0:
        return 0
    lens = np.diff(starts)
    width = int(lens.max())
    if width == 0:
        out_lens[:] = 0
        return 0

    # Row-major masked scatter lays flat out line by line.
    mat = np.zeros((n_lines, width), np.uint8)
    mat[np.arange(width) < lens[:, None]] = flat

    cost = np.zeros((n_lines, width + 1), np.int64)
    blen = np.ones((n_lines, width), np.int16)
    bcode = np.full((n_lines, width), -1, np.int16)

    for j in range(width - 1, -1, -1):
        active = j < lens
        best = 2 + cost[:, j + 1]
        best_len = np.ones(n_lines, np.int64)
        best_code = np.full(n_lines, -1, np.int64)
        state = np.zeros(n_lines, np.int64)
        d = 0
        while j + d < width:
            alive = state >= 0
            if not alive.any():
                break
            nxt = np.full(n_lines, -1, np.int64)
            nxt[alive] = children[state[alive], mat[alive, j + d]]
            state = nxt
            d += 1
            hit = state >= 0
            if not hit.any():
                break
            code = np.full(n_lines, -1, np.int64)
            code[hit] = term_code[state[hit]]
            ok = (code >= 0) & (j + d <= lens)
            cand = 1 + cost[:, j + d]
            take = ok & ((cand < best) | ((cand == best) & (d > best_len)))
            best = np.where(take, cand, best)
            best_len = np.where(take, d, best_len)
            best_code = np.where(take, code, best_code)
        cost[:, j] = np.where(active, best, 0)
        blen[:, j] = best_len
        bcode[:, j] = best_code

    escapes = 0
    for li in range(n_lines):
        n = int(lens[li])
        w = 2 * int(starts[li])
        base = w
        i = 0
        while i < n:
            c = bcode[li, i]
            if c < 0:
                out[w] = 0x20
                out[w + 1] = mat[li, i]
                w += 2
                escapes += 1
                i += 1
            else:
                out[w] = c
                w += 1
                i += int(blen[li, i])
        out_lens[li] = w - base
    return escapes


def decompress_sizes(exp_len, valid, flat, starts, out_lens, status, errpos):
    n_lines = starts.shape[0] - 1
    total = 0
    escapes = 0
    for li in range(n_lines):
        s = int(starts[li])
        e = int(starts[li + 1])
        status[li] = 0
        errpos[li] = -1
        m = 0
        i = s
        while i < e:
            b = int(flat[i])
            if b == 0x20:
                if i + 1 >= e:
                    status[li] = 2
                    errpos[li] = i - s
                    m = 0
                    break
                m += 1
                i += 2
                escapes += 1
            elif valid[b]:
                m += int(exp_len[b])
                i += 1
            else:
                status[li] = 1
                errpos[li] = i - s
                m = 0
                break
        out_lens[li] = m
        total += m
    return total, escapes


def decompress_fill(exp_off, exp_flat, flat, starts, status, out, out_starts):
    n_lines = starts.shape[0] - 1
    for li in range(n_lines):
        if status[li] != 0:
            continue
        i = int(starts[li])
        e = int(starts[li + 1])
        w = int(out_starts[li])
        while i < e:
            b = int(flat[i])
            if b == 0x20:
                out[w] = flat[i + 1]
                w += 1
                i += 2
            else:
                o = int(exp_off[b])
                ln = int(exp_off[b + 1]) - o
                out[w:w + ln] = exp_flat[o:o + ln]
                w += ln
                i += 1


def overlap_batch(children, term_len, pats, lens, out):
    m = pats.shape[0]
    if m == 0:
        return
    lens = lens.astype(np.int64)
    pos = np.zeros(m, np.int64)
    cov = np.zeros(m, np.int64)
    while True:
        running = pos < lens
        if not running.any():
            break
        best = np.zeros(m, np.int64)
        state = np.where(running, 0, -1)
        d = 0
        while True:
            col = pos + d
            alive = (state >= 0) & (col < lens)
            if not alive.any():
                break
            idx = np.flatnonzero(alive)
            nxt = np.full(m, -1, np.int64)
            nxt[idx] = children[state[idx], pats[idx, col[idx]]]
            state = nxt
            d += 1
            hit = np.flatnonzero(state >= 0)
            if hit.size:
                term = term_len[state[hit]] >= 0
                best[hit[term]] = d
        adv = np.where(best > 0, best, 1)
        cov[running] += best[running]
        pos[running] += adv[running]
    out[:] = cov
