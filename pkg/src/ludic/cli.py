"""Command-line entry point.

    ludic validate <file...>            parse + compile, report diagnostics
    ludic tokens <file...>              token-count table (name, count)
    ludic bench --game <name|file> ...  playouts-per-second benchmark
    ludic tree-compile <file> ...       game-tree compilation + bisimulation
    ludic serve --port P --games DIR    run the play service

Exit codes: 0 success, 1 domain error (parse/compile/validation),
2 usage error. The LUDIC_GAMES_DIR environment variable overrides the
bundled games directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus, grammar
from .engine import bench_playouts
from .errors import LudicError, ParseError
from .game import compile_game

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _load_description(spec: str):
    """A --game value is a bundled name (possibly an alias) or a .lud path."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
        name, options = None, []
    else:
        name, options = corpus.resolve_name(spec)
        try:
            text = corpus.load_text(name)
        except KeyError:
            raise LudicError(f"no bundled game or file named {spec!r}")
    tree = grammar.parse_game(text)
    return compile_game(tree, options)


def cmd_validate(args) -> int:
    status = EXIT_OK
    for path in args.files:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            game = compile_game(grammar.parse_game(text))
        except OSError as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            status = EXIT_DOMAIN
        except LudicError as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            status = EXIT_DOMAIN
        else:
            print(f"OK {game.name} ({game.num_sites} sites, "
                  f"{game.players.count} players)")
    return status


def cmd_tokens(args) -> int:
    rows = []
    status = EXIT_OK
    for path in args.files:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            tree = grammar.parse_game(text)
        except (OSError, ParseError) as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            status = EXIT_DOMAIN
            continue
        name = tree.args[0].value  # type: ignore[union-attr]
        rows.append((name, grammar.count_tokens(tree)))
    for name, count in sorted(rows):
        print(f"{name:30s} {count:6d}")
    return status


def cmd_bench(args) -> int:
    if args.seconds < 1:
        print("bench: --seconds must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        print("bench: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if not args.game:
        print("bench: at least one --game is required", file=sys.stderr)
        return EXIT_USAGE
    if not args.json:
        print(f"{'game':22s} {'threads':>7s} {'seconds':>8s} "
              f"{'playouts':>12s} {'playouts/s':>12s}")
    status = EXIT_OK
    for spec in args.game:
        try:
            game = _load_description(spec)
        except LudicError as exc:
            print(f"bench: skipping {spec!r}: {exc}", file=sys.stderr)
            status = EXIT_DOMAIN
            continue
        stats = bench_playouts(game, seconds=args.seconds, threads=args.threads,
                               seed=args.seed)
        if args.json:
            print(json.dumps(stats.to_record()))
        else:
            print(f"{spec:22s} {stats.threads:7d} {stats.seconds:8.1f} "
                  f"{stats.playouts:12d} {stats.playouts_per_second:12.1f}")
    return status


def cmd_tree_compile(args) -> int:
    from . import universality as uni
    try:
        with open(args.file, encoding="utf-8") as fh:
            tree = uni.parse_tree_file(fh.read())
    except (OSError, LudicError) as exc:
        print(f"tree-compile: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    game = uni.compile_tree(tree)
    if args.flip_payoff is not None:
        if args.flip_payoff not in (tree.ids or []):
            print(f"tree-compile: no leaf named {args.flip_payoff!r}",
                  file=sys.stderr)
            return EXIT_DOMAIN
        vertex = (tree.ids or []).index(args.flip_payoff)
        game = uni.corrupt_leaf_payoff(game, vertex)
        print(f"note: payoff at leaf {args.flip_payoff!r} deliberately flipped")

    if args.sample is not None:
        report = uni.bisimulation_check(tree, game, mode="sampled",
                                        samples=args.sample, seed=args.seed)
    else:
        report = uni.bisimulation_check(tree, game, mode="exhaustive")

    artifact = uni.game_artifact(tree, game)
    out_path = args.out or (args.file + ".game.json")
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(artifact, fh, indent=2, sort_keys=True)
    print(f"compiled {tree.num_nodes()} nodes, {game.players.count} players "
          f"-> {out_path}")
    print(f"bisimulation: {report.paths_checked} paths checked, "
          f"{len(report.mismatches)} mismatches")
    for mm in report.mismatches[:20]:
        print(f"  {mm.kind} at {'/'.join(mm.path) or '<root>'}: {mm.detail}")
    return EXIT_OK if report.equivalent else EXIT_DOMAIN


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    if args.games:
        os.environ[corpus.GAMES_DIR_ENV] = args.games
    app = create_app()
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except SystemExit as exc:  # uvicorn startup failure (e.g. port in use)
        return EXIT_DOMAIN if exc.code else EXIT_OK
    except OSError as exc:
        print(f"serve: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ludic",
        description="Compile and play ludeme-based game descriptions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and compile game files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("tokens", help="token-count table for game files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_tokens)

    p = sub.add_parser("bench", help="playouts-per-second benchmark")
    p.add_argument("--game", action="append", default=[],
                   help="bundled game name or .lud path (repeatable)")
    p.add_argument("--seconds", type=float, default=10.0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", action="store_true",
                   help="one JSON record per line instead of the table")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("tree-compile",
                       help="compile a game-tree file and check equivalence")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true", default=True)
    group.add_argument("--sample", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None, help="artifact output path")
    p.add_argument("--flip-payoff", default=None, metavar="LEAF",
                   help="debug: corrupt one leaf payoff before checking")
    p.set_defaults(func=cmd_tree_compile)

    p = sub.add_parser("serve", help="run the play service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--games", default=None, help="games directory override")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
