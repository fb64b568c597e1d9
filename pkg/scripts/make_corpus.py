"""Generate the bundled synthetic SMILES corpora.

Molecules are assembled from ring/chain motifs the way a naive SMILES writer
would emit them: ring IDs count up 1, 2, 3, ... within each molecule and are
never reused, so renumbering has something to gain. Lines are syntactically
valid (balanced brackets, paired ring closures) but make no chemical claims.

Usage: python scripts/make_corpus.py [--out-dir src/zsmiles/data] [--seed 2024]
"""

import argparse
import os
import random

AROMATIC_SUBS = ["F", "Cl", "Br", "I", "C", "CC", "O", "OC", "N", "C#N",
                 "C(F)(F)F", "OC(F)F", "N(C)C", "[N+](=O)[O-]", "C(=O)O",
                 "C(=O)N", "C(=O)NC", "S(=O)(=O)N", "OCC", "NC(=O)C", "C=O"]
CHAIN_SUBS = ["C", "CC", "O", "N", "CO", "OC", "F", "C(C)C", "C(=O)O",
              "C(=O)OC", "NC", "C#N", "OCC", "CCO"]
LINKERS = ["", "", "C", "CC", "CCC", "O", "N", "CN", "NC", "OC", "S",
           "C(=O)", "C(=O)N", "NC(=O)", "C(=O)O", "OC(=O)", "S(=O)(=O)",
           "C=C", "/C=C/", "C#C", "CNC", "COC", "N(C)"]
STEREO = ["[C@H](C)", "[C@@H](C)", "[C@H](O)", "[C@@H](N)",
          "[C@H](CC)", "[C@@H](CO)"]
BRACKETS = ["[nH]", "[N+](C)(C)C", "[O-]", "[NH3+]", "[13C]", "[2H]", "[Si](C)(C)C"]
SALTS = [".Cl", ".Br", ".[Na+]", ".[K+]", ".O", ".OC(=O)C(=O)O"]
RARE_BONDS = ["~", ":", "$", "*"]


class MoleculeGen:
    """style: fraction of ring fragments drawn from the aromatic pool."""

    def __init__(self, rng: random.Random, aromatic_frac: float):
        self.rng = rng
        self.aromatic_frac = aromatic_frac
        self.next_ring = 1

    def ring_id(self) -> str:
        r = self.next_ring
        self.next_ring += 1
        return str(r) if r < 10 else "%%%02d" % r

    def sub(self, pool) -> str:
        rng = self.rng
        if rng.random() < 0.06:
            return rng.choice(STEREO) + rng.choice(CHAIN_SUBS)
        if rng.random() < 0.05:
            return rng.choice(BRACKETS)
        return rng.choice(pool)

    def _decorate(self, slots: int, pool, p: float) -> list[str]:
        return ["(" + self.sub(pool) + ")" if self.rng.random() < p else ""
                for _ in range(slots)]

    def aromatic_ring(self) -> str:
        rng = self.rng
        roll = rng.random()
        if roll < 0.08:
            a, b = self.ring_id(), self.ring_id()
            s = self._decorate(3, AROMATIC_SUBS, 0.25)
            return f"c{a}cc{s[0]}c{b}cc{s[1]}cc{s[2]}c{b}c{a}"
        s = self._decorate(4, AROMATIC_SUBS, 0.3)
        r = self.ring_id()
        if roll < 0.28:
            core = f"c{r}nc{s[0]}c{s[1]}c{s[2]}c{r}"
        elif roll < 0.38:
            core = f"c{r}cc{s[0]}c{s[1]}o{r}"
        elif roll < 0.46:
            core = f"c{r}cc{s[0]}c{s[1]}s{r}"
        elif roll < 0.56:
            core = f"c{r}cc{s[0]}c{s[1]}[nH]{r}"
        elif roll < 0.62:
            core = f"c{r}ncnc{s[0]}c{r}"
        else:
            core = f"c{r}c{s[0]}c{s[1]}c{s[2]}c{s[3]}c{r}"
        return core

    def aliphatic_ring(self) -> str:
        rng = self.rng
        r = self.ring_id()
        s = self._decorate(3, CHAIN_SUBS, 0.25)
        roll = rng.random()
        if roll < 0.22:
            return f"C{r}CC{s[0]}C{s[1]}CC{r}"
        if roll < 0.42:
            return f"C{r}CC{s[0]}NC{s[1]}C{r}"
        if roll < 0.54:
            return f"C{r}CN{s[0]}CCN{r}"
        if roll < 0.66:
            return f"C{r}CC{s[0]}OC{r}"
        if roll < 0.76:
            return f"C{r}COCC{s[0]}N{r}"
        if roll < 0.88:
            return f"C{r}CC{s[0]}C{s[1]}C{r}"
        return f"C{r}CC{r}"

    def fragment(self) -> str:
        if self.rng.random() < self.aromatic_frac:
            return self.aromatic_ring()
        return self.aliphatic_ring()

    def chain(self) -> str:
        rng = self.rng
        out = []
        for _ in range(rng.randint(1, 3)):
            out.append(rng.choice(CHAIN_SUBS))
            if rng.random() < 0.15:
                out.append("(" + rng.choice(CHAIN_SUBS) + ")")
        return "".join(out)

    def molecule(self) -> str:
        rng = self.rng
        self.next_ring = 1
        if rng.random() < 0.02:
            # long fused-chain outlier; pushes ring IDs past 9 so the
            # two-digit %nn form shows up in the wild
            n = rng.randint(10, 14)
            parts = []
            for _ in range(n):
                r = self.ring_id()
                parts.append(f"C{r}CC{r}" if rng.random() < 0.5 else f"C{r}CCC{r}")
            return "C".join(parts)
        parts = [self.fragment()]
        for _ in range(rng.randint(0, 3)):
            parts.append(rng.choice(LINKERS))
            parts.append(self.fragment())
        mol = "".join(parts)
        if rng.random() < 0.3:
            mol = self.chain() + mol
        if rng.random() < 0.25:
            mol = mol + self.chain()
        if rng.random() < 0.04:
            mol = mol + rng.choice(SALTS)
        if rng.random() < 0.004:
            mol = mol + rng.choice(RARE_BONDS) + "C"
        return mol


def write_corpus(path: str, n: int, rng: random.Random, aromatic_frac: float):
    gen = MoleculeGen(rng, aromatic_frac)
    with open(path, "w") as fh:
        for _ in range(n):
            fh.write(gen.molecule())
            fh.write("\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="src/zsmiles/data")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)
    jobs = [("mixed_50k.smi", 50000, 0.5),
            ("aromatic_10k.smi", 10000, 0.92),
            ("aliphatic_10k.smi", 10000, 0.08)]
    for name, n, frac in jobs:
        path = os.path.join(args.out_dir, name)
        write_corpus(path, n, random.Random(args.seed), frac)
        print(f"wrote {path}: {n} lines, {os.path.getsize(path)} bytes")


if __name__ == "__main__":
    main()
