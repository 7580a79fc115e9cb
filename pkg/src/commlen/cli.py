"""Command line interface: ``commlen {cl,present,is-commutator,random,bench}``."""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from . import pairing, search
from .corpus import random_words, read_corpus
from .pairing import NotInCommutatorSubgroup
from .present import CommutatorPresentation, verify
from .words import Alphabet, AlphabetError, Word, WordSyntaxError, exponent_sums, format_letters, parse, reduce

EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_NOT_IN_COMMUTATOR = 3
EXIT_DISAGREE = 4

PRUNE = {"auto": None, "exhaustive": False, "bnb": True}


class Disagreement(RuntimeError):
    pass


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1e3, 3)


def _emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj))
    else:
        print(text)


def _load(text: str, alphabet: str | None) -> Word:
    w = parse(text, Alphabet.parse(alphabet) if alphabet else None)
    sums = exponent_sums(w)
    if any(sums):
        raise NotInCommutatorSubgroup(sums)
    return w


def _fmt(w: Word) -> str:
    return format_letters(w.letters, w.alphabet)


# -- backends -----------------------------------------------------------------


def run_cl(w: Word, backend: str, threads: int = 1, prune=None) -> tuple[int, dict]:
    """cl by one backend, or by bfs and pairing together for ``both``."""
    if backend == "bfs":
        cl, st = search.cl_bfs(w, workers=threads)
        return cl, st.to_json()
    if backend == "pairing":
        t0 = time.perf_counter()
        cl, enumerated = pairing.cl_bardakov_stats(w, prune)
        stats = search.SearchStats(pairings_enumerated=enumerated, elapsed_ms=_ms(t0))
        return cl, stats.to_json()
    if backend == "guided":
        pres, st = search.minimal_presentation_guided(w)
        return len(pres), st.to_json()
    if backend == "both":
        cl_b, st = run_cl(w, "bfs", threads)
        cl_p, st_p = run_cl(w, "pairing", threads, prune)
        if cl_b != cl_p:
            raise Disagreement(f"bfs says {cl_b}, pairing says {cl_p}")
        st["pairings_enumerated"] = st_p["pairings_enumerated"]
        st["elapsed_ms"] = round(st["elapsed_ms"] + st_p["elapsed_ms"], 3)
        return cl_b, st
    raise ValueError(f"unknown backend {backend!r}")


def run_present(w: Word, backend: str, threads: int = 1, all_min: bool = False):
    if backend == "bfs":
        if all_min:
            found, st = search.all_minimal_presentations_bfs(w, workers=threads)
            return found, st
        pres, st = search.minimal_presentation_bfs(w, workers=threads)
        return [pres], st
    if backend == "guided":
        pres, st = search.minimal_presentation_guided(w)
        return [pres], st
    if backend == "literal":
        pres, st = search.minimal_presentation_literal(w)
        return [pres], st
    raise ValueError(f"unknown backend {backend!r}")


def _relabel(p: CommutatorPresentation, w: Word) -> CommutatorPresentation:
    return CommutatorPresentation(w.alphabet, p.pairs)


# -- commands -----------------------------------------------------------------


def cmd_cl(args) -> int:
    t0 = time.perf_counter()
    w = _load(args.word, args.alphabet)
    cl, stats = run_cl(w, args.backend, args.threads, PRUNE[args.pairing_search])
    report = {
        "input": args.word,
        "reduced": _fmt(reduce(w)),
        "cl": cl,
        "presentation": None,
        "verified": False,
        "backend": args.backend,
        "stats": stats,
        "elapsed_ms": _ms(t0),
    }
    _emit(report, args.json, f"cl = {cl}")
    return 0


def cmd_present(args) -> int:
    t0 = time.perf_counter()
    if args.paper_literal:
        args.backend = "literal"
    if args.all_min and args.backend != "bfs":
        raise SystemExit("--all-min needs the bfs backend")
    w = _load(args.word, args.alphabet)
    found, stats = run_present(w, args.backend, args.threads, args.all_min)
    found = [_relabel(p, w) for p in found]
    for p in found:
        if not verify(p, w):
            raise search.SearchError(f"presentation {p} does not verify")
    report = {
        "input": args.word,
        "reduced": _fmt(reduce(w)),
        "cl": len(found[0]),
        "presentation": found[0].to_json(),
        "verified": True,
        "backend": args.backend,
        "stats": stats.to_json(),
        "elapsed_ms": _ms(t0),
    }
    if args.all_min:
        report["all_minimal"] = [p.to_json() for p in found]
    text = "\n".join(str(p) for p in found) + f"\ncl = {len(found[0])}, verified"
    _emit(report, args.json, text)
    return 0


def cmd_is_commutator(args) -> int:
    t0 = time.perf_counter()
    w = _load(args.word, args.alphabet)
    wit = search.is_commutator(w)
    report = {
        "input": args.word,
        "reduced": _fmt(reduce(w)),
        "is_commutator": wit is not None,
        "witness": None,
        "verified": False,
        "elapsed_ms": _ms(t0),
    }
    if wit is None:
        _emit(report, args.json, "no")
        return 0
    fmt = [format_letters(x, w.alphabet) for x in (wit.g, wit.u, wit.v)]
    report["witness"] = dict(zip("guv", fmt))
    report["verified"] = wit.expand() == reduce(w).letters
    _emit(report, args.json, f"yes: g = {fmt[0]}, u = {fmt[1]}, v = {fmt[2]}  (w = g[u,v]g^-1)")
    return 0


def cmd_random(args) -> int:
    words = random_words(args.k, args.L, args.N, args.seed, args.count, args.length)
    out = [_fmt(w) for w in words]
    _emit(out, args.json, "\n".join(out))
    return 0


def _parse_random_spec(spec: str) -> list[tuple[str, Word]]:
    opts = {"k": 2, "L": 3, "N": 2, "seed": 0, "count": 10, "length": None}
    for part in spec.split(","):
        if not part.strip():
            continue
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in opts:
            raise ValueError(f"unknown random spec key {key!r}")
        opts[key] = int(value)
    words = random_words(opts["k"], opts["L"], opts["N"], opts["seed"], opts["count"], opts["length"])
    return [(_fmt(w), w) for w in words]


def cmd_bench(args) -> int:
    backends = [b.strip() for b in args.backends.split(",") if b.strip()]
    if args.random:
        corpus = _parse_random_spec(args.random)
    elif args.corpus:
        alphabet = Alphabet.parse(args.alphabet) if args.alphabet else None
        corpus = read_corpus(args.corpus, alphabet)
    else:
        corpus = []
    rows = []
    disagreements = 0
    for text, w in corpus:
        sums = exponent_sums(w)
        if any(sums):
            raise NotInCommutatorSubgroup(sums)
        row = {"word": text, "length": len(reduce(w)), "cl": {}, "elapsed_ms": {}}
        for b in backends:
            t0 = time.perf_counter()
            row["cl"][b], _ = run_cl(w, b, args.threads, PRUNE[args.pairing_search])
            row["elapsed_ms"][b] = _ms(t0)
        row["agree"] = len(set(row["cl"].values())) <= 1
        disagreements += not row["agree"]
        rows.append(row)
    medians = {b: (statistics.median(r["elapsed_ms"][b] for r in rows) if rows else None) for b in backends}
    # timings live under elapsed_ms keys only, so everything else is reproducible
    result = {"backends": backends, "rows": rows, "disagreements": disagreements, "elapsed_ms": {"median": medians}}
    if args.json:
        print(json.dumps(result))
    else:
        head = f"{'word':<40} {'len':>4} " + " ".join(f"{b + ' cl':>10} {b + ' ms':>12}" for b in backends) + "  agree"
        print(head)
        for r in rows:
            cells = " ".join(f"{r['cl'][b]:>10} {r['elapsed_ms'][b]:>12.1f}" for b in backends)
            print(f"{r['word'][:40]:<40} {r['length']:>4} {cells}  {'yes' if r['agree'] else 'NO'}")
        if rows:
            print("median ms: " + ", ".join(f"{b} {m:.1f}" for b, m in medians.items()))
    return EXIT_DISAGREE if disagreements else 0


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="commlen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, threads=True):
        p.add_argument("--alphabet", help="comma separated generator names, e.g. x,y,z")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        if threads:
            p.add_argument("--threads", type=int, default=1, help="worker threads for the bfs frontier")

    p = sub.add_parser("cl", help="commutator length")
    p.add_argument("word")
    p.add_argument("--backend", choices=["bfs", "pairing", "guided", "both"], default="both")
    p.add_argument("--pairing-search", choices=list(PRUNE), default="auto")
    common(p)
    p.set_defaults(func=cmd_cl)

    p = sub.add_parser("present", help="a minimal commutator presentation")
    p.add_argument("word")
    p.add_argument("--backend", choices=["bfs", "guided"], default="bfs")
    p.add_argument("--all-min", action="store_true", help="every minimal presentation found at the last level")
    p.add_argument("--paper-literal", action="store_true", help="search without conjugacy identification")
    common(p)
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("is-commutator", help="decide whether the word is a single commutator")
    p.add_argument("word")
    common(p, threads=False)
    p.set_defaults(func=cmd_is_commutator)

    p = sub.add_parser("random", help="seeded random words in [F,F]")
    p.add_argument("-k", type=int, default=2, help="commutators per word")
    p.add_argument("-L", type=int, default=3, help="maximal factor length")
    p.add_argument("-N", type=int, default=2, help="number of generators")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--length", type=int, help="instead: random words in [F,F] of exactly this length")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("bench", help="time backends on a corpus")
    p.add_argument("corpus", nargs="?", help="file with one word per line")
    p.add_argument("--random", help="e.g. k=2,L=3,N=2,seed=0,count=10 or length=24,N=2,count=10")
    p.add_argument("--backends", default="bfs,pairing,guided")
    p.add_argument("--pairing-search", choices=list(PRUNE), default="auto")
    common(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WordSyntaxError, AlphabetError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except NotInCommutatorSubgroup as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_IN_COMMUTATOR
    except Disagreement as e:
        print(f"error: backends disagree: {e}", file=sys.stderr)
        return EXIT_DISAGREE
    except (search.SearchError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
