"""Per-line codec: optimal parse, escapes, decode errors."""

import random

import pytest

import zsmiles as z
from zsmiles.codec import compress_lines, decompress_lines, oracle_parse_cost

from conftest import random_dictionary, random_patterns, smiles_like_line


class TestCompressLine:
    def test_match_beats_singles(self):
        d = z.Dictionary([b"CC"], None, identity=b"CO")
        assert z.compress_line(d, b"CCO") == bytes([0x80, ord("O")])

    def test_empty_line(self):
        d = z.Dictionary([b"CC"], "smiles")
        assert z.compress_line(d, b"") == b""

    def test_escape(self):
        d = z.Dictionary([], None, identity=b"C")
        assert z.compress_line(d, b"Cy") == bytes([ord("C"), 0x20, ord("y")])

    def test_longest_match_tie_break(self):
        # "CCCC": [CCC]['C'] and [CC][CC] both cost 2; longest first edge wins
        d = z.Dictionary([b"CC", b"CCC"], None, identity=b"C")
        assert z.compress_line(d, b"CCCC") == bytes([0x81, ord("C")])

    def test_batch_consistency(self):
        rng = random.Random(17)
        d = random_dictionary(rng)
        lines = [smiles_like_line(rng) for _ in range(64)]
        recs, escapes = compress_lines(d, lines)
        assert recs == [z.compress_line(d, l) for l in lines]
        assert escapes == sum(r.count(0x20) for r in recs)  # 0x20 only marks escapes

    def test_empty_batch(self):
        d = z.Dictionary([], "smiles")
        assert compress_lines(d, []) == ([], 0)


class TestOracle:
    def test_examples(self):
        d = z.Dictionary([b"CC"], None, identity=b"CO")
        assert oracle_parse_cost(d, b"CCO") == 2
        assert oracle_parse_cost(d, b"") == 0
        d2 = z.Dictionary([b"CC", b"CCC"], None, identity=b"C")
        assert oracle_parse_cost(d2, b"CCCC") == 2

    def test_line_cap(self):
        d = z.Dictionary([], "smiles")
        with pytest.raises(ValueError):
            oracle_parse_cost(d, b"C" * 21)

    def test_optimality_small(self):
        rng = random.Random(4)
        for _ in range(500):
            line = bytes(rng.choice(b"CNOc1(=)@") for _ in range(rng.randint(0, 14)))
            pats = set()
            for _ in range(rng.randint(0, 6)):
                if len(line) >= 2:
                    ln = rng.randint(2, min(6, len(line)))
                    i = rng.randint(0, len(line) - ln)
                    pats.add(line[i:i + ln])
            mode = rng.choice(["none", "smiles"])
            d = z.Dictionary(sorted(pats), mode)
            assert len(z.compress_line(d, line)) == oracle_parse_cost(d, line)


class TestRoundtrip:
    def test_random(self):
        rng = random.Random(12)
        for _ in range(40):
            d = random_dictionary(rng)
            lines = [smiles_like_line(rng) for _ in range(50)]
            recs, _ = compress_lines(d, lines)
            back, errors, _ = decompress_lines(d, recs)
            assert not errors
            assert back == lines

    def test_non_alphabet_bytes_escape_cleanly(self):
        d = z.Dictionary([b"CC"], "smiles")
        for line in (b"C\tC", b"caf\xc3\xa9", b"\x00\xffC", b"a  b"):
            rec = z.compress_line(d, line)
            assert 0x0A not in rec and 0x0D not in rec
            assert z.decompress_line(d, rec) == line

    def test_no_expansion_over_identity(self):
        rng = random.Random(31)
        alpha = bytes(sorted(z.ALPHABET))
        for _ in range(200):
            d = z.Dictionary(random_patterns(rng, rng.randint(0, 20)), "smiles")
            line = bytes(rng.choice(alpha) for _ in range(rng.randint(0, 40)))
            assert len(z.compress_line(d, line)) <= len(line)

    def test_monotonic_in_dictionary(self):
        rng = random.Random(41)
        for _ in range(100):
            pats = random_patterns(rng, rng.randint(1, 12))
            d_small = z.Dictionary(pats[:-1], "smiles")
            d_big = z.Dictionary(pats, "smiles")
            line = smiles_like_line(rng)
            assert len(z.compress_line(d_big, line)) <= \
                len(z.compress_line(d_small, line))


class TestDecompress:
    def test_examples(self):
        d = z.Dictionary([b"CC"], None, identity=b"CO")
        assert z.decompress_line(d, bytes([0x80, ord("O")])) == b"CCO"
        assert z.decompress_line(d, b"") == b""
        d2 = z.Dictionary([], None, identity=b"C")
        assert z.decompress_line(d2, bytes([ord("C"), 0x20, ord("y")])) == b"Cy"

    def test_unknown_code(self):
        d = z.Dictionary([b"CC"], "none")
        with pytest.raises(z.UnknownCode) as ei:
            z.decompress_line(d, bytes([0x80, 0x99]))
        assert ei.value.code == 0x99
        assert ei.value.offset == 1

    def test_truncated_escape(self):
        d = z.Dictionary([], "smiles")
        with pytest.raises(z.TruncatedEscape) as ei:
            z.decompress_line(d, bytes([ord("C"), 0x20]))
        assert ei.value.offset == 1

    def test_batch_error_reporting(self):
        d = z.Dictionary([b"CC"], "none")
        recs = [bytes([0x80]), bytes([0x81]), bytes([0x80, 0x80]), bytes([0x20])]
        lines, errors, _ = decompress_lines(d, recs)
        assert lines == [b"CC", None, b"CCCC", None]
        assert [(i, type(e)) for i, e in errors] == \
            [(1, z.UnknownCode), (3, z.TruncatedEscape)]

    def test_escape_count_symmetric(self):
        d = z.Dictionary([], None, identity=b"C")
        recs, esc_c = compress_lines(d, [b"Cy", b"zz"])
        _, _, esc_d = decompress_lines(d, recs)
        assert esc_c == esc_d == 3
