"""Command-line tool: train, compress, decompress, bench."""

import argparse
import random
import sys
from contextlib import ExitStack
from importlib.resources import files

from .dictionary import (
    GenerationParams,
    PREPOPULATE_SETS,
    deserialize,
    generate,
    load_dictionary,
    save_dictionary,
)
from .errors import EmptyCorpus, ZsmilesError
from .pipeline import run_stream

_DEFAULT_DICT = "data/default.zsd"


def _open_in(stack: ExitStack, path):
    if path in (None, "-"):
        return sys.stdin.buffer
    return stack.enter_context(open(path, "rb"))


def _open_out(stack: ExitStack, path):
    if path in (None, "-"):
        return sys.stdout.buffer
    return stack.enter_context(open(path, "wb"))


def _resolve_dict(path):
    if path is None:
        return deserialize(files("zsmiles").joinpath(_DEFAULT_DICT).read_bytes())
    return load_dictionary(path)


def _read_lines(path) -> list[bytes]:
    with ExitStack() as stack:
        data = _open_in(stack, path).read()
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    return lines


def _sample_lines(lines, count, seed) -> list[bytes]:
    """Seeded uniform draw of line indices, kept in file order."""
    if count is None or count >= len(lines):
        return lines
    if count == 0:
        raise EmptyCorpus("sample=0 selects no lines")
    idx = random.Random(seed).sample(range(len(lines)), count)
    return [lines[i] for i in sorted(idx)]


def cmd_train(args) -> int:
    lines = _read_lines(args.input)
    lines = _sample_lines(lines, args.sample, args.seed)
    params = GenerationParams(l_min=args.lmin, l_max=args.lmax, t=args.dict_size,
                              prepopulate=args.prepopulate,
                              preprocess=args.preprocess)
    d = generate(lines, params, "lenient" if args.lenient else "strict")
    save_dictionary(d, args.output)
    if args.stats:
        print(f"patterns={len(d.learned)} lines={len(lines)}", file=sys.stderr)
    return 0


def _run(args, direction) -> int:
    d = _resolve_dict(args.dict)
    with ExitStack() as stack:
        src = _open_in(stack, args.input)
        dst = _open_out(stack, args.output)
        stats = run_stream(src, dst, d, direction,
                           preprocess=getattr(args, "preprocess", False),
                           lenient=args.lenient, workers=args.workers)
        dst.flush()
    if args.lenient and (stats.skipped or stats.flagged):
        print(f"skipped={stats.skipped} flagged={stats.flagged}", file=sys.stderr)
    if args.stats:
        print(stats.format_line(), file=sys.stderr)
    return 0


def cmd_compress(args) -> int:
    return _run(args, "compress")


def cmd_decompress(args) -> int:
    return _run(args, "decompress")


def _bench_ratio(lines, d, preprocess, workers):
    """(ratio, MB/s) of compressing the corpus with d."""
    import io

    src = io.BytesIO(b"".join(l + b"\n" for l in lines))
    stats = run_stream(src, io.BytesIO(), d, "compress",
                       preprocess=preprocess, lenient=True, workers=workers)
    mbs = stats.input_bytes / 1e6 / stats.elapsed if stats.elapsed else 0.0
    return stats.ratio, mbs


def cmd_bench(args) -> int:
    corpora = [(path, _read_lines(path)) for path in args.input]
    if len(corpora) == 1:
        return _bench_ablation(args, corpora[0][1])
    return _bench_matrix(args, corpora)


def _train_for_bench(lines, args, preprocess, prepopulate):
    sample = _sample_lines(lines, args.sample, args.seed)
    params = GenerationParams(l_min=args.lmin, l_max=args.lmax, t=args.dict_size,
                              prepopulate=prepopulate, preprocess=preprocess)
    return generate(sample, params, "lenient")


def _bench_ablation(args, lines) -> int:
    rows = [(True, "printable"), (False, "printable"),
            (True, "smiles"), (False, "smiles"),
            (True, "none"), (False, "none")]
    print(f"{'preprocess':<11} {'prepopulate':<12} {'ratio':>8} {'MB/s':>8}")
    for preprocess, prepopulate in rows:
        d = _train_for_bench(lines, args, preprocess, prepopulate)
        ratio, mbs = _bench_ratio(lines, d, preprocess, args.workers)
        print(f"{'yes' if preprocess else 'no':<11} {prepopulate:<12} "
              f"{ratio:>8.4f} {mbs:>8.1f}")
    return 0


def _bench_matrix(args, corpora) -> int:
    import os.path

    names = [os.path.basename(p) for p, _ in corpora]
    dicts = [_train_for_bench(lines, args, True, "smiles") for _, lines in corpora]
    width = max(12, max(len(n) for n in names) + 2)
    label = "train \\ test"
    print("ratio of compressing <column> with the dictionary trained on <row>")
    print(f"{label:<{width}}" + "".join(f"{n:>{width}}" for n in names))
    for name, d in zip(names, dicts):
        cells = []
        for _, lines in corpora:
            ratio, _ = _bench_ratio(lines, d, True, args.workers)
            cells.append(f"{ratio:>{width}.4f}")
        print(f"{name:<{width}}" + "".join(cells))
    return 0


def _add_io(p, output=True):
    p.add_argument("-i", "--input", help="input path (default: stdin)")
    if output:
        p.add_argument("-o", "--output", help="output path (default: stdout)")


def _add_train_params(p):
    p.add_argument("--prepopulate", choices=sorted(PREPOPULATE_SETS),
                   default="smiles", help="identity pre-population set")
    p.add_argument("--lmin", type=int, default=2, help="shortest learned pattern")
    p.add_argument("--lmax", type=int, default=8, help="longest learned pattern")
    p.add_argument("--dict-size", type=int, default=128,
                   help="learned patterns to select (max 128)")
    p.add_argument("--sample", type=int, default=None,
                   help="train on this many sampled lines")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zsmiles",
        description="Dictionary compression for SMILES corpora.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("train", help="train a dictionary from a corpus")
    _add_io(p)
    p.add_argument("--preprocess", action="store_true",
                   help="renumber ring IDs before counting")
    _add_train_params(p)
    p.add_argument("--lenient", action="store_true",
                   help="keep unpreprocessable lines raw")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(fn=cmd_train, _need_output=True)

    for verb, fn in (("compress", cmd_compress), ("decompress", cmd_decompress)):
        p = sub.add_parser(verb, help=f"{verb} a corpus line by line")
        _add_io(p)
        p.add_argument("-d", "--dict", help="ZSD1 dictionary (default: embedded)")
        if verb == "compress":
            p.add_argument("--preprocess", action="store_true",
                           help="renumber ring IDs before compressing")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--lenient", action="store_true",
                       help="skip bad lines instead of stopping")
        p.add_argument("--stats", action="store_true",
                       help="print totals to stderr")
        p.set_defaults(fn=fn)

    p = sub.add_parser("bench", help="compression-ratio ablation / cross table")
    p.add_argument("-i", "--input", nargs="+", required=True,
                   help="one corpus for the ablation table, several for the "
                        "cross-dictionary matrix")
    _add_train_params(p)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_bench, sample=50000)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "_need_output", False) and not args.output:
        ap.error("train requires -o/--output for the dictionary file")
    try:
        return args.fn(args)
    except ZsmilesError as e:
        print(f"zsmiles: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"zsmiles: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
