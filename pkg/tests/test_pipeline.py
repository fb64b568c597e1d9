"""Streaming pipeline: ordering, stats, error modes."""

import io
import random
import re

import pytest

import zsmiles as z
from zsmiles.pipeline import CorpusStats, compute_ratio, run_stream

from conftest import random_dictionary, smiles_like_line


def roundtrip(d, payload, **kw):
    comp = io.BytesIO()
    run_stream(io.BytesIO(payload), comp, d, "compress", **kw)
    dec = io.BytesIO()
    run_stream(io.BytesIO(comp.getvalue()), dec, d, "decompress", **kw)
    return comp.getvalue(), dec.getvalue()


class TestStats:
    def test_cco_corpus_ratio(self):
        d = z.Dictionary([b"CC"], "smiles")
        n = 25
        out = io.BytesIO()
        st = run_stream(io.BytesIO(b"CCO\n" * n), out, d, "compress")
        assert st.input_bytes == 4 * n
        assert st.output_bytes == 3 * n == len(out.getvalue())
        assert st.lines == n
        assert compute_ratio(st) == 0.75

    def test_empty_file(self):
        d = z.Dictionary([], "smiles")
        out = io.BytesIO()
        st = run_stream(io.BytesIO(b""), out, d, "compress")
        assert out.getvalue() == b""
        assert st.lines == 0
        assert st.input_bytes == st.output_bytes == 0
        assert compute_ratio(st) == 1.0

    def test_ratio_arithmetic(self):
        assert compute_ratio(CorpusStats(input_bytes=100, output_bytes=29)) == 0.29
        assert compute_ratio(CorpusStats(input_bytes=50, output_bytes=50)) == 1.0

    def test_format_line(self):
        st = CorpusStats(lines=3, input_bytes=100, output_bytes=29,
                         escapes=2, elapsed=0.1234)
        assert st.format_line() == \
            "lines=3 in_bytes=100 out_bytes=29 ratio=0.290000 escapes=2 elapsed_ms=123"

    def test_stats_match_disk_sizes(self, tmp_path):
        d = z.Dictionary([b"c1ccccc1"], "smiles")
        rng = random.Random(2)
        payload = b"".join(smiles_like_line(rng) + b"\n" for _ in range(500))
        src = tmp_path / "in.smi"
        src.write_bytes(payload)
        dst = tmp_path / "out.zs"
        with open(src, "rb") as fi, open(dst, "wb") as fo:
            st = run_stream(fi, fo, d, "compress")
        assert st.input_bytes == src.stat().st_size
        assert st.output_bytes == dst.stat().st_size


class TestOrdering:
    def test_worker_counts_identical(self):
        rng = random.Random(9)
        d = random_dictionary(rng)
        payload = b"".join(smiles_like_line(rng) + b"\n" for _ in range(3000))
        outs = []
        for w in (1, 2, 8):
            comp, dec = roundtrip(d, payload, workers=w, batch_lines=64)
            outs.append((comp, dec))
        assert outs[0] == outs[1] == outs[2]
        assert outs[0][1] == payload

    def test_three_line_file(self):
        d = z.Dictionary([b"CC"], "smiles")
        payload = b"CCO\nCCN\nCC\n"
        a, _ = roundtrip(d, payload, workers=1)
        b, _ = roundtrip(d, payload, workers=8)
        assert a == b

    def test_line_order_preserved(self):
        d = z.Dictionary([], "smiles")
        lines = [b"L%03d" % i for i in range(1000)]
        payload = b"\n".join(lines) + b"\n"
        _, dec = roundtrip(d, payload, workers=4, batch_lines=16)
        assert dec == payload


class TestFraming:
    @pytest.mark.parametrize("payload", [
        b"", b"\n", b"\n\n", b"CCO", b"CCO\n", b"CCO\nCC",
        b"CCO\n\nCC\n", b"\nCCO",
    ])
    def test_trailing_newline_symmetry(self, payload):
        d = z.Dictionary([b"CC"], "smiles")
        comp, dec = roundtrip(d, payload)
        assert dec == payload
        if payload:
            assert comp.endswith(b"\n") == payload.endswith(b"\n")

    def test_batch_boundaries(self):
        d = z.Dictionary([], "smiles")
        for n in (63, 64, 65, 128):
            payload = b"C\n" * n
            _, dec = roundtrip(d, payload, batch_lines=64)
            assert dec == payload


class TestErrorModes:
    def test_strict_preprocess_error_line(self):
        d = z.Dictionary([], "smiles")
        src = io.BytesIO(b"CCO\nC1CC\nCCO\n")
        with pytest.raises(z.LineError) as ei:
            run_stream(src, io.BytesIO(), d, "compress", preprocess=True)
        assert ei.value.line_no == 2
        assert "line 2" in str(ei.value)
        assert isinstance(ei.value.cause, z.UnpairedRingClosure)

    def test_strict_decode_error_line(self):
        d = z.Dictionary([b"CC"], "none")
        src = io.BytesIO(bytes([0x80]) + b"\n\x99\n")
        with pytest.raises(z.LineError) as ei:
            run_stream(src, io.BytesIO(), d, "decompress")
        assert ei.value.line_no == 2
        assert isinstance(ei.value.cause, z.UnknownCode)

    def test_strict_error_in_late_batch(self):
        d = z.Dictionary([], "smiles")
        lines = [b"CCO"] * 300 + [b"C1CC"] + [b"CCO"] * 50
        src = io.BytesIO(b"\n".join(lines) + b"\n")
        with pytest.raises(z.LineError) as ei:
            run_stream(src, io.BytesIO(), d, "compress",
                       preprocess=True, workers=4, batch_lines=32)
        assert ei.value.line_no == 301

    def test_lenient_preprocess_keeps_raw(self):
        d = z.Dictionary([], "smiles")
        out = io.BytesIO()
        st = run_stream(io.BytesIO(b"C1CC1\nC2CC\n"), out, d, "compress",
                        preprocess=True, lenient=True)
        assert st.flagged == 1
        assert st.skipped == 0
        assert st.lines == 2
        dec = io.BytesIO()
        run_stream(io.BytesIO(out.getvalue()), dec, d, "decompress")
        assert dec.getvalue() == b"C0CC0\nC2CC\n"

    def test_lenient_decode_skips(self):
        d = z.Dictionary([b"CC"], "none")
        src = io.BytesIO(bytes([0x80]) + b"\n\x99\n" + bytes([0x80]) + b"\n")
        out = io.BytesIO()
        st = run_stream(src, out, d, "decompress", lenient=True)
        assert out.getvalue() == b"CC\nCC\n"
        assert st.skipped == 1
        assert st.lines == 2

    def test_carriage_return_rejected(self):
        d = z.Dictionary([], "smiles")
        with pytest.raises(z.LineError) as ei:
            run_stream(io.BytesIO(b"CCO\rX\n"), io.BytesIO(), d, "compress")
        assert ei.value.line_no == 1
        out = io.BytesIO()
        st = run_stream(io.BytesIO(b"CCO\rX\nCC\n"), out, d, "compress",
                        lenient=True)
        assert st.skipped == 1
        assert st.lines == 1

    def test_bad_direction(self):
        d = z.Dictionary([], "smiles")
        with pytest.raises(ValueError):
            run_stream(io.BytesIO(b""), io.BytesIO(), d, "sideways")


class TestRoundtripProperty:
    def test_random_corpora(self):
        rng = random.Random(77)
        for _ in range(10):
            d = random_dictionary(rng)
            n = rng.randint(0, 400)
            payload = b"".join(smiles_like_line(rng) + b"\n" for _ in range(n))
            w = rng.choice([1, 2, 8])
            _, dec = roundtrip(d, payload, workers=w,
                               batch_lines=rng.choice([16, 100, 4096]))
            assert dec == payload
