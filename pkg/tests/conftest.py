"""Shared corpus fixtures, random generators, and reference oracles.

The oracles here are deliberately written with different techniques than the
package (plain dict/loop code, no tries, no numpy) so they can referee it.
"""

import random
from importlib.resources import files

import pytest

import zsmiles as z
from zsmiles.smiles import TokenKind, tokenize

ALPHA = bytes(sorted(z.ALPHABET))

MOTIFS = [b"c1ccccc1", b"C1CCCCC1", b"c1ccncc1", b"C(=O)N", b"C(=O)O",
          b"[C@@H](C)", b"[N+](=O)[O-]", b"S(=O)(=O)", b"C(F)(F)F",
          b"/C=C/", b"C#N", b"c1ccc2ccccc2c1", b"C%12CCC%12", b".[Na+]"]


def smiles_like_line(rng: random.Random, max_parts: int = 8) -> bytes:
    parts = []
    for _ in range(rng.randint(0, max_parts)):
        if rng.random() < 0.5:
            parts.append(rng.choice(MOTIFS))
        else:
            k = rng.randint(1, 6)
            parts.append(bytes(rng.choice(ALPHA) for _ in range(k)))
    return b"".join(parts)


def random_patterns(rng: random.Random, n: int, l_min: int = 2,
                    l_max: int = 8) -> list[bytes]:
    pats: set[bytes] = set()
    for _ in range(20 * n):
        if len(pats) == n:
            break
        if rng.random() < 0.4:
            src = rng.choice(MOTIFS)
            ln = rng.randint(l_min, min(l_max, len(src)))
            i = rng.randint(0, len(src) - ln)
            cand = src[i:i + ln]
        else:
            ln = rng.randint(l_min, l_max)
            cand = bytes(rng.choice(ALPHA) for _ in range(ln))
        pats.add(cand)
    out = sorted(pats)
    rng.shuffle(out)
    return out


def random_dictionary(rng: random.Random, max_patterns: int = 128) -> z.Dictionary:
    pats = random_patterns(rng, rng.randint(0, max_patterns))
    mode = rng.choice(["none", "smiles", "printable"])
    return z.Dictionary(pats, mode)


def brute_count(corpus, l_min: int, l_max: int) -> dict[bytes, int]:
    """Reference substring counter: nested loops, alphabet filter."""
    counts: dict[bytes, int] = {}
    for line in corpus:
        for i in range(len(line)):
            for ln in range(l_min, l_max + 1):
                s = line[i:i + ln]
                if len(s) < ln:
                    break
                if all(b in z.ALPHABET for b in s):
                    counts[s] = counts.get(s, 0) + 1
    return counts


def greedy_cover(p: bytes, selected) -> int:
    """Reference greedy longest-match cover, no trie."""
    sel = set(selected)
    longest = max((len(s) for s in sel), default=0)
    i = covered = 0
    while i < len(p):
        hit = 0
        for ln in range(min(longest, len(p) - i), 0, -1):
            if p[i:i + ln] in sel:
                hit = ln
                break
        if hit:
            covered += hit
            i += hit
        else:
            i += 1
    return covered


def ring_tokens(line: bytes):
    return [t for t in tokenize(line) if t.kind is TokenKind.RingClosure]


def pair_rings(line: bytes) -> list[tuple[int, int]]:
    """(open, close) index pairs into the ring-token sequence, by the
    alternating-occurrence rule. Raises KeyError-style assert on imbalance."""
    open_at: dict[int, int] = {}
    pairs = []
    for k, tok in enumerate(ring_tokens(line)):
        if tok.ring_id in open_at:
            pairs.append((open_at.pop(tok.ring_id), k))
        else:
            open_at[tok.ring_id] = k
    assert not open_at, f"unpaired ring ids {sorted(open_at)} in {line!r}"
    return pairs


def check_renumbering(src: bytes, out: bytes) -> None:
    """Referee for preprocess_line output: same token structure, pairing
    preserved, and every ring gets the smallest ID free among overlapping
    earlier-closing rings.
    """
    st, ot = tokenize(src), tokenize(out)
    assert [t.kind for t in st] == [t.kind for t in ot]
    for a, b in zip(st, ot):
        if a.kind is not TokenKind.RingClosure:
            assert a.text(src) == b.text(out), (src, out)
    src_pairs = sorted(pair_rings(src))
    out_pairs = sorted(pair_rings(out))
    assert src_pairs == out_pairs, f"pairing changed: {src!r} -> {out!r}"
    ids = [t.ring_id for t in ring_tokens(out)]
    # closing order = order of the pair's second element
    by_close = sorted(src_pairs, key=lambda p: p[1])
    assigned: list[tuple[int, int, int]] = []
    for o, c in by_close:
        used = {cid for o2, c2, cid in assigned if o2 < c and o < c2}
        want = 0
        while want in used:
            want += 1
        assert ids[o] == ids[c] == want, (
            f"ring ({o},{c}) got {ids[o]}, expected {want} in {out!r}")
        assigned.append((o, c, want))


@pytest.fixture(scope="session")
def mixed_corpus() -> list[bytes]:
    data = files("zsmiles").joinpath("data/mixed_50k.smi").read_bytes()
    return data.split(b"\n")[:-1]


@pytest.fixture(scope="session")
def sub_corpora() -> dict[str, list[bytes]]:
    out = {}
    for name in ("aromatic_10k", "aliphatic_10k"):
        data = files("zsmiles").joinpath(f"data/{name}.smi").read_bytes()
        out[name] = data.split(b"\n")[:-1]
    return out


@pytest.fixture(scope="session")
def default_dict() -> z.Dictionary:
    return z.deserialize(files("zsmiles").joinpath("data/default.zsd").read_bytes())


@pytest.fixture(scope="session")
def warm_kernels():
    """Force JIT compilation outside any timed window."""
    d = z.Dictionary([b"CC"], "smiles")
    rec = z.compress_line(d, b"CCOC")
    assert z.decompress_line(d, rec) == b"CCOC"
    z.compute_overlap(b"CCO", [b"CC"])
    return True
