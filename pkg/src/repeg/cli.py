"""Command-line front end.

Exit codes: 0 success or match found, 1 no match, 2 usage error,
3 equivalence violations found.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .bench import cmd_bench, load_corpus, make_corpus
from .equiv import check_regex, cmd_equiv, gen_regex
from .oracle import DEFAULT_FUEL, FuelExhausted
from .peg import GrammarSyntaxError, peg_match, serialize_grammar
from .regex import Alphabet, RegexSyntaxError, parse_regex, to_source
from .rewrite import f_out
from .search import SearchMode, build_search_grammar, search
from .transform import NotWellFormedError, compile_regex

EXIT_OK, EXIT_NO_MATCH, EXIT_USAGE, EXIT_VIOLATIONS = 0, 1, 2, 3

_MODES = {"naive": SearchMode.NAIVE, "first": SearchMode.FIRST_SKIP,
          "combined": SearchMode.COMBINED, "disjoint": SearchMode.COMBINED_DISJOINT,
          "auto": SearchMode.AUTO}


def _as_bytes(text: str) -> str:
    """Command-line text as a string of byte symbols."""
    return text.encode("utf-8", "surrogateescape").decode("latin-1")


def _alphabet(args) -> Alphabet:
    return Alphabet.from_chars(args.alphabet) if args.alphabet else Alphabet.bytes()


def _symbols(args, text: str) -> str:
    return text if args.alphabet else _as_bytes(text)


def _emit(args, obj: dict, text: str) -> None:
    print(json.dumps(obj, sort_keys=True) if args.json else text)


def _line_col(subject: str, offset: int) -> tuple:
    line = subject.count("\n", 0, offset) + 1
    col = offset - (subject.rfind("\n", 0, offset) + 1) + 1
    return line, col


def do_compile(args) -> int:
    alphabet = _alphabet(args)
    e = parse_regex(_symbols(args, args.regex), alphabet)
    if args.show_rewrite:
        _emit(args, {"pattern": args.regex, "rewritten": to_source(f_out(e), alphabet)},
              to_source(f_out(e), alphabet))
        return EXIT_OK
    g = compile_regex(e, alphabet, rewrite=not args.no_rewrite, optimize=not args.no_opt)
    text = serialize_grammar(g)
    _emit(args, {"pattern": args.regex, "grammar": text}, text.rstrip("\n"))
    return EXIT_OK


def do_match(args) -> int:
    alphabet = _alphabet(args)
    e = parse_regex(_symbols(args, args.regex), alphabet)
    g = compile_regex(e, alphabet, rewrite=not args.no_rewrite, optimize=not args.no_opt)
    n = peg_match(g, _symbols(args, args.string), args.fuel or DEFAULT_FUEL)
    _emit(args, {"pattern": args.regex, "start": 0 if n is not None else None, "end": n},
          "fail" if n is None else f"matched {n}")
    return EXIT_NO_MATCH if n is None else EXIT_OK


def do_search(args) -> int:
    alphabet = _alphabet(args)
    e = parse_regex(_symbols(args, args.regex), alphabet)
    subject = load_corpus(args.file)
    sg = build_search_grammar(e, _MODES[args.mode], alphabet)
    hit = search(sg, subject, args.fuel or sys.maxsize)
    obj = {"pattern": args.regex, "mode": sg.mode.value,
           "start": hit.start if hit else None, "end": hit.end if hit else None}
    if hit is None:
        _emit(args, obj, "no match")
        return EXIT_NO_MATCH
    line, col = _line_col(subject, hit.start)
    obj.update(line=line, col=col)
    _emit(args, obj, f"{line}:{col} bytes {hit.start}-{hit.end} ({sg.mode.value})")
    return EXIT_OK


def _fuzz_case(job):
    seed, depth, alphabet, maxlen, extensions = job
    alpha = Alphabet.from_chars(alphabet)
    e = f_out(gen_regex(seed, depth, alpha, extensions))
    return seed, check_regex(e, alpha, maxlen).as_dict()


def do_equiv(args) -> int:
    alphabet = args.alphabet or "ab"
    if args.fuzz is None:
        if args.regex is None:
            print("equiv: give a regex or --fuzz N", file=sys.stderr)
            return EXIT_USAGE
        reports = [cmd_equiv(args.regex, alphabet, args.maxlen, args.direct, args.fuel or DEFAULT_FUEL).as_dict()]
    else:
        if len(set(alphabet)) > 4 or args.maxlen > 10:
            raise ValueError("equivalence checking is limited to 4 symbols and length 10")
        jobs = [(args.seed + i, args.depth, alphabet, args.maxlen, args.extensions)
                for i in range(args.fuzz)]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_fuzz_case, jobs, chunksize=64))
        else:
            results = [_fuzz_case(j) for j in jobs]
        reports = [r for _, r in results]
    failed = 0
    for r in reports:
        if r["violations"]:
            failed += 1
        if args.json:
            print(json.dumps(r, sort_keys=True))
        elif r["violations"] or args.fuzz is None:
            print(f"{r['pattern']}: {len(r['violations'])} violation(s) "
                  f"in {r['tested_inputs']} inputs")
            for v in r["violations"][:10]:
                print(f"  {v['kind']} on {v['input']!r}: peg={v['peg']} oracle={v['oracle']}")
    if args.fuzz is not None and not args.json:
        print(f"{len(reports)} regexes checked, {failed} with violations")
    return EXIT_VIOLATIONS if failed else EXIT_OK


def do_bench(args) -> int:
    patterns = [line for line in Path(args.patterns).read_text().splitlines() if line.strip()]
    corpus = load_corpus(args.corpus)
    modes = [_MODES[m] for m in args.modes.split(",")]
    rows = cmd_bench([_as_bytes(p) for p in patterns], corpus, modes, args.reps,
                     subject=Path(args.corpus).name)
    for r in rows:
        d = r.as_dict()
        _emit(args, d, f"{r.pattern}\t{r.mode.value}\t{r.elapsed * 1e3:.1f} ms\t"
                       f"{'-' if r.hit is None else f'{r.hit.start}-{r.hit.end}'}")
    return EXIT_OK


def do_gen_corpus(args) -> int:
    Path(args.out).write_bytes(make_corpus(args.size, args.seed).encode("latin-1"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object per result line")
    common.add_argument("--alphabet", help="restrict the alphabet to these symbols (default: bytes)")
    common.add_argument("--fuel", type=int, help="matcher step budget (default 10^7; unlimited for search)")
    p = argparse.ArgumentParser(prog="repeg", description="Compile regexes to PEGs and run them.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", parents=[common], help="print the PEG for a regex")
    c.add_argument("regex")
    c.add_argument("--no-rewrite", action="store_true")
    c.add_argument("--no-opt", action="store_true")
    c.add_argument("--show-rewrite", action="store_true", help="print the well-formed regex instead")
    c.set_defaults(func=do_compile)

    m = sub.add_parser("match", parents=[common], help="match a regex against a string prefix")
    m.add_argument("regex")
    m.add_argument("string")
    m.add_argument("--no-rewrite", action="store_true")
    m.add_argument("--no-opt", action="store_true")
    m.set_defaults(func=do_match)

    s = sub.add_parser("search", parents=[common], help="find the first match in a file")
    s.add_argument("regex")
    s.add_argument("file")
    s.add_argument("--mode", choices=sorted(_MODES), default="auto")
    s.set_defaults(func=do_search)

    e = sub.add_parser("equiv", parents=[common], help="brute-force check against the oracles")
    e.add_argument("regex", nargs="?")
    e.add_argument("--fuzz", type=int, metavar="N", help="check N generated regexes instead")
    e.add_argument("--maxlen", type=int, default=6)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--depth", type=int, default=6)
    e.add_argument("--extensions", action="store_true", help="generate extension nodes too")
    e.add_argument("--direct", action="store_true", help="read the regex directly as a PEG")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=do_equiv)

    b = sub.add_parser("bench", parents=[common], help="time search modes on a corpus")
    b.add_argument("--patterns", required=True, help="file with one regex per line")
    b.add_argument("--corpus", required=True)
    b.add_argument("--modes", default="naive,first,combined")
    b.add_argument("--reps", type=int, default=5)
    b.set_defaults(func=do_bench)

    g = sub.add_parser("gen-corpus", parents=[common], help="write the synthetic benchmark corpus")
    g.add_argument("out")
    g.add_argument("--size", type=int, default=4 * 1024 * 1024)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=do_gen_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RegexSyntaxError, GrammarSyntaxError, NotWellFormedError, ValueError,
            FuelExhausted, OSError) as exc:
        print(f"repeg: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
