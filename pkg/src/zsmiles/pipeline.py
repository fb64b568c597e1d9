"""Streaming whole-file compression/decompression.

A reader slices the input into fixed-size line batches, a worker pool maps
them through the codec, and an ordered writer emits results strictly in batch
order, so output bytes never depend on the worker count.
"""

import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import codec
from .errors import LineError, ZsmilesError
from .smiles import preprocess_line

BATCH_LINES = 4096
_CHUNK = 8 << 20


@dataclass
class CorpusStats:
    lines: int = 0
    input_bytes: int = 0
    output_bytes: int = 0
    escapes: int = 0
    skipped: int = 0
    flagged: int = 0
    elapsed: float = 0.0

    @property
    def ratio(self) -> float:
        if self.input_bytes == 0:
            return 1.0
        return self.output_bytes / self.input_bytes

    def format_line(self) -> str:
        return (f"lines={self.lines} in_bytes={self.input_bytes} "
                f"out_bytes={self.output_bytes} ratio={self.ratio:.6f} "
                f"escapes={self.escapes} elapsed_ms={int(round(self.elapsed * 1000))}")


def compute_ratio(stats: CorpusStats) -> float:
    """Output bytes over input bytes, both counted including newlines;
    1.0 for an empty input."""
    return stats.ratio


def _read_batches(src, batch_lines, state):
    """Yield (start_line_index, lines) batches; lines carry no newlines.

    Mutates state: in_bytes counts every byte read, trailing records whether
    the input ended with a newline.
    """
    rem = b""
    pending: list[bytes] = []
    emitted = 0
    while True:
        chunk = src.read(_CHUNK)
        if not chunk:
            break
        state["in_bytes"] += len(chunk)
        parts = (rem + chunk).split(b"\n")
        rem = parts.pop()
        pending.extend(parts)
        while len(pending) >= batch_lines:
            yield emitted, pending[:batch_lines]
            emitted += batch_lines
            del pending[:batch_lines]
    if rem:
        pending.append(rem)
        state["trailing"] = False
    if pending:
        yield emitted, pending


def _ordered_map(fn, jobs, workers):
    if workers <= 1:
        yield from map(fn, jobs)
        return
    ex = ThreadPoolExecutor(max_workers=workers)
    try:
        # Bounded lookahead: keeps memory flat on huge files while still
        # keeping every worker busy.
        fut = deque()
        it = iter(jobs)
        for job in it:
            fut.append(ex.submit(fn, job))
            if len(fut) > workers + 2:
                yield fut.popleft().result()
        while fut:
            yield fut.popleft().result()
    finally:
        ex.shutdown(wait=False, cancel_futures=True)


def _compress_batch(d, job, preprocess, lenient):
    start, lines = job
    skipped = flagged = 0
    kept: list[bytes] = []
    for j, ln in enumerate(lines):
        if b"\r" in ln:
            if lenient:
                skipped += 1
                continue
            raise LineError(start + j + 1,
                            ZsmilesError("carriage return in line"))
        if preprocess:
            try:
                ln = preprocess_line(ln)
            except ZsmilesError as e:
                if not lenient:
                    raise LineError(start + j + 1, e) from None
                flagged += 1
        kept.append(ln)
    recs, escapes = codec.compress_lines(d, kept)
    return recs, escapes, skipped, flagged


def _decompress_batch(d, job, lenient):
    start, records = job
    lines, errors, escapes = codec.decompress_lines(d, records)
    if errors and not lenient:
        i, err = errors[0]
        raise LineError(start + i + 1, err)
    return [l for l in lines if l is not None], escapes, len(errors), 0


def run_stream(src, dst, d, direction="compress", *, preprocess=False,
               lenient=False, workers=1, batch_lines=BATCH_LINES) -> CorpusStats:
    """Stream src to dst through the codec; returns exact corpus totals.

    Output is byte-identical for any worker count. Strict mode aborts on the
    first bad line (LineError, 1-based); lenient mode drops undecodable or
    unframeable lines and keeps unpreprocessable ones raw, counting both.
    """
    if direction not in ("compress", "decompress"):
        raise ValueError(f"bad direction {direction!r}")
    t0 = time.perf_counter()
    state = {"in_bytes": 0, "trailing": True}
    stats = CorpusStats()

    if direction == "compress":
        work = lambda job: _compress_batch(d, job, preprocess, lenient)
    else:
        work = lambda job: _decompress_batch(d, job, lenient)

    wrote_any = False
    for recs, escapes, skipped, flagged in _ordered_map(
            work, _read_batches(src, batch_lines, state), workers):
        stats.escapes += escapes
        stats.skipped += skipped
        stats.flagged += flagged
        if recs:
            blob = b"\n".join(recs)
            if wrote_any:
                blob = b"\n" + blob
            dst.write(blob)
            stats.lines += len(recs)
            stats.output_bytes += len(blob)
            wrote_any = True
    if wrote_any and state["trailing"]:
        dst.write(b"\n")
        stats.output_bytes += 1
    stats.input_bytes = state["in_bytes"]
    stats.elapsed = time.perf_counter() - t0
    return stats
