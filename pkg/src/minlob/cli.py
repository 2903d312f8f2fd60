"""Command-line front end.

Exit codes: 0 yes/solved, 1 no, 2 usage or parse error, 3 precondition violated.
"""

from __future__ import annotations

import argparse
import sys

from . import bench
from .branching import minimalize
from .dag_matching import CycleError, minleaf_dag
from .digraph import (
    NoOutBranchingError,
    dfs_out_branching,
    generate,
    out_branching_root,
)
from .exact import DEFAULT_ORACLE_N, OracleLimitError, oracle_minleaf, solve_pbgv
from .formats import (
    ParseError,
    format_certificate,
    format_instance,
    parse_certificate,
    parse_instance,
    verify_certificate,
)
from .kernelization import kernelize
from .reductions import max_internal_out_tree, min_path_cover

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load(path: str):
    return parse_instance(_read(path))


def _emit(result, args) -> None:
    sys.stdout.write(format_certificate(result, args.format))


def _positive(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("k must be a positive integer")
    return k


def cmd_solve_dag(args) -> int:
    D = _load(args.instance).digraph
    try:
        tree = minleaf_dag(D)
    except CycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(tree, args)
    return EXIT_YES if tree is not None else EXIT_NO


def cmd_minimize(args) -> int:
    D = _load(args.instance).digraph
    r = out_branching_root(D)
    _emit(minimalize(D, dfs_out_branching(D, r)), args)
    return EXIT_YES


def cmd_kernelize(args) -> int:
    D = _load(args.instance).digraph
    _emit(kernelize(D, args.k), args)
    return EXIT_YES


def cmd_solve(args) -> int:
    D = _load(args.instance).digraph
    answer = solve_pbgv(D, args.k)
    _emit(answer, args)
    return EXIT_YES if answer.yes else EXIT_NO


def cmd_pathcover(args) -> int:
    D = _load(args.instance).digraph
    answer = min_path_cover(D, args.k)
    _emit(answer, args)
    return EXIT_YES if answer.yes else EXIT_NO


def cmd_maxiot(args) -> int:
    D = _load(args.instance).digraph
    tree = max_internal_out_tree(D, args.k)
    _emit(tree, args)
    return EXIT_YES if tree is not None else EXIT_NO


def cmd_oracle(args) -> int:
    inst = _load(args.instance)
    root = inst.designated.get("root") if args.use_root else None
    try:
        leaves, tree = oracle_minleaf(inst.digraph, root, max_n=args.max_oracle_n)
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(tree, args)
    return EXIT_YES if tree is not None else EXIT_NO


def cmd_gen(args) -> int:
    params = {}
    if args.kind in ("pn", "psbgv", "hat"):
        if args.input is None:
            print("error: this generator needs --input", file=sys.stderr)
            return EXIT_USAGE
        params["D"] = _load(args.input).digraph
    if args.kind == "star":
        params["p"] = args.p_order
    elif args.kind == "pn":
        params.update(v=args.vertex - 1, k=args.k)
    elif args.kind == "psbgv":
        params.update(y=args.vertex - 1, k=args.k)
    elif args.kind in ("random", "random-dag"):
        params.update(n=args.n, p=args.arc_probability)
    elif args.kind == "hub":
        params.update(n=args.n, hubs=args.hubs, p=args.arc_probability)
    try:
        D, designated = generate(args.kind, seed=args.seed, **params)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(format_instance(D, designated))
    return EXIT_YES


def cmd_bench(args) -> int:
    config = bench.BenchConfig(
        sizes=args.sizes,
        ks=args.ks,
        hubs=args.hubs,
        arc_probability=args.arc_probability,
        trials=args.trials,
        seed=args.seed,
        jobs=args.jobs,
        exact=not args.no_exact,
    )
    sys.stdout.write(bench.rows_to_csv(bench.run_bench(config)))
    return EXIT_YES


def cmd_verify(args) -> int:
    D = _load(args.instance).digraph
    cert = parse_certificate(_read(args.certificate))
    problems = verify_certificate(D, cert, k=args.k, spanning=not args.out_tree)
    for p in problems:
        print(f"invalid: {p}")
    if problems:
        return EXIT_NO
    print(f"valid {cert.status} certificate")
    return EXIT_YES


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text")
    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("instance", help="instance file, or - for stdin")
    need_k = argparse.ArgumentParser(add_help=False)
    need_k.add_argument("-k", type=_positive, required=True)

    parser = _Parser(prog="minlob", description="Minimum-leaf out-branching solvers")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("solve-dag", parents=[inst, fmt], help="exact solver for acyclic digraphs")
    sub.add_parser("minimize", parents=[inst, fmt], help="DFS out-branching plus 1-change local search")
    sub.add_parser("kernelize", parents=[inst, need_k, fmt], help="crown kernelisation")
    sub.add_parser("solve", parents=[inst, need_k, fmt], help="out-branching with >= k internal vertices")
    sub.add_parser("pathcover", parents=[inst, need_k, fmt], help="decide pc(D) <= n - k")
    sub.add_parser("maxiot", parents=[inst, need_k, fmt], help="max internal out-tree if >= k")

    p = sub.add_parser("oracle", parents=[inst, fmt], help="brute-force minimum leaf count")
    p.add_argument("--max-oracle-n", type=int, default=DEFAULT_ORACLE_N)
    p.add_argument("--use-root", action="store_true",
                   help="restrict to the designated vertex labelled 'root'")

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind", choices=["star", "pn", "psbgv", "hat", "random", "random-dag", "hub"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--arc-probability", "--p", type=float, default=0.3)
    p.add_argument("--order", dest="p_order", type=int, default=5, help="star order")
    p.add_argument("--vertex", type=int, default=1, help="gadget attachment vertex (1-based)")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("--hubs", type=int, default=3, help="hub count for the hub generator")
    p.add_argument("--input", help="base instance for pn, psbgv and hat")

    p = sub.add_parser("bench", help="CSV of kernel sizes and stage timings")
    p.add_argument("--sizes", type=_int_list, default=[50, 100, 200])
    p.add_argument("--ks", type=_int_list, default=[1, 2, 3, 4, 5])
    p.add_argument("--hubs", type=int, default=2)
    p.add_argument("--arc-probability", type=float, default=0.02)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-exact", action="store_true", help="skip the exact stage on kernels")

    p = sub.add_parser("verify", help="re-check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.add_argument("-k", type=_positive)
    p.add_argument("--out-tree", action="store_true", help="accept non-spanning out-trees")
    return parser


COMMANDS = {
    "solve-dag": cmd_solve_dag,
    "minimize": cmd_minimize,
    "kernelize": cmd_kernelize,
    "solve": cmd_solve,
    "pathcover": cmd_pathcover,
    "maxiot": cmd_maxiot,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoOutBranchingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
