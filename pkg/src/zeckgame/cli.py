"""``zeckgame`` command line.

Every command prints one JSON envelope ``{version, n, command, params, ...}``
to stdout.  ``verify`` exits with status 0 iff every check passes; library
errors exit with status 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .analysis import enumerate_games, length_distribution, mod_z_distribution
from .engine import validate_game
from .errors import ZeckGameError
from .numerics import zeckendorf
from .partitions import SchemeKind, class_ks, class_summary, representative
from .sampling import sample_lengths
from .stats import sample_law, summarize
from .strategies import TYPE_A_ORDERS, game_of_length, longest_game, shortest_game, type_a_game
from .verify import SUITES, run_suites


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_zeck(args) -> int:
    z = zeckendorf(args.N)
    print(io.dumps(io.envelope("zeck", args.N, {}, fib_index=z.n, bits=list(z.bits),
                               indices=list(z.indices), z_count=z.z_count,
                               z_index_sum=z.z_index_sum)), end="")
    return 0


def cmd_play(args) -> int:
    s = args.strategy
    if s == "shortest":
        game = shortest_game(args.N)
    elif s == "longest":
        game = longest_game(args.N, args.type_a_order)
    elif s == "type-a":
        game = type_a_game(args.N, args.type_a_order)
    elif s.startswith("length="):
        game = game_of_length(args.N, int(s.split("=", 1)[1]))
    else:
        raise SystemExit(f"unknown strategy {s!r}: use shortest, longest, type-a or length=<m>")
    counts = validate_game(args.N, game.moves, trace=False).counts
    params = {"strategy": s, "type_a_order": args.type_a_order}
    print(io.dumps(io.envelope("play", args.N, params, **io.game_record(game, counts))), end="")
    return 0


def cmd_distribution(args) -> int:
    dist = length_distribution(args.N, args.measure, exact=not args.double)
    if args.csv:
        _write(args.csv, io.distribution_csv(dist))
        if args.csv == "-":
            return 0
    params = {"measure": args.measure, "double": args.double}
    print(io.dumps(io.distribution_json(dist, "distribution", params)), end="")
    return 0


def cmd_simulate(args) -> int:
    r = sample_lengths(args.N, args.measure, args.seed, args.count, args.threads)
    stats = summarize(sample_law(r.lengths)).as_dict() if args.count else None
    payload = {
        "count": args.count,
        "summary": stats,
        "mean_over_n": float(r.lengths.mean()) / args.N if args.count else None,
        "variance_over_n": float(r.lengths.var(ddof=1)) / args.N if args.count > 1 else None,
        "splits_mean_over_n": float(r.splits.mean()) / args.N if args.count else None,
    }
    if args.lengths_csv:
        rows = "".join(f"{i},{int(v)}\n" for i, v in enumerate(r.lengths))
        _write(args.lengths_csv, "index,length\n" + rows)
    params = {"measure": args.measure, "seed": args.seed, "count": args.count, "threads": args.threads}
    print(io.dumps(io.envelope("simulate", args.N, params, **payload)), end="")
    return 0


def cmd_odds(args) -> int:
    res = mod_z_distribution(args.N, args.measure, args.mod)
    payload = {"residues": {str(z): p for z, p in enumerate(res)}}
    if args.mod == 2:
        payload["player1_wins"] = res[1]
        payload["player2_wins"] = res[0]
    params = {"measure": args.measure, "mod": args.mod}
    print(io.dumps(io.envelope("odds", args.N, params, **payload)), end="")
    return 0


def cmd_partition(args) -> int:
    scheme = SchemeKind.parse(args.scheme)
    ks = {c.representative: c.ks for c in class_ks(args.N, scheme, args.measure, 0)}
    reps = sorted({representative(g, scheme)[0] for g in enumerate_games(args.N)}, key=str)
    records = [io.class_record(class_summary(rep, scheme, args.measure), ks.get(rep)) for rep in reps]
    params = {"scheme": scheme.value, "measure": args.measure}
    print(io.dumps(io.envelope("partition", args.N, params, classes=records)), end="")
    return 0


def cmd_verify(args) -> int:
    checks = run_suites(args.suite, args.max_n, samples=args.samples, seed=args.seed)
    ok = all(c.passed for c in checks)
    params = {"suite": args.suite, "max_n": args.max_n, "samples": args.samples, "seed": args.seed}
    print(io.dumps(io.envelope("verify", args.max_n, params, passed=ok,
                               checks=[c.as_dict() for c in checks])), end="")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zeckgame", description="Exact analysis of the Zeckendorf game.")
    sub = parser.add_subparsers(dest="command", required=True)
    measure = dict(choices=["uniform", "random"], default="uniform")

    p = sub.add_parser("zeck", help="Zeckendorf decomposition of N")
    p.add_argument("N", type=_positive)
    p.set_defaults(func=cmd_zeck)

    p = sub.add_parser("play", help="construct a game")
    p.add_argument("N", type=_positive)
    p.add_argument("--strategy", default="shortest", help="shortest | longest | type-a | length=<m>")
    p.add_argument("--type-a-order", choices=TYPE_A_ORDERS, default=TYPE_A_ORDERS[0])
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("distribution", help="exact game-length distribution")
    p.add_argument("N", type=_positive)
    p.add_argument("--measure", **measure)
    p.add_argument("--csv", metavar="PATH", help="also write length,weight rows ('-' for stdout only)")
    p.add_argument("--double", action="store_true", help="floating-point random-play weights")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("simulate", help="seeded Monte Carlo game lengths")
    p.add_argument("N", type=_positive)
    p.add_argument("--measure", choices=["uniform", "random"], default="random")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--lengths-csv", metavar="PATH", help="write index,length rows")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("odds", help="length residues mod Z (Z = 2 gives win odds)")
    p.add_argument("N", type=_positive)
    p.add_argument("--measure", **measure)
    p.add_argument("--mod", type=_positive, default=2)
    p.set_defaults(func=cmd_odds)

    p = sub.add_parser("partition", help="per-class records of a partition scheme")
    p.add_argument("N", type=_positive)
    p.add_argument("--scheme", choices=[s.value for s in SchemeKind], default="basic")
    p.add_argument("--measure", **measure)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("verify", help="run theorem-check suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--max-n", type=_positive, default=40)
    p.add_argument("--samples", type=_positive, default=2000)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ZeckGameError as exc:
        print(f"zeckgame: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
