"""Long-running oracle comparison over a larger seeded corpus than the test suite uses.

Compares the PBGV pipeline, the exact cover solver and the DAG solver with
brute force, and reports any disagreement with a reproducible seed.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass

from minlob.branching import extract_cover, minimalize
from minlob.dag_matching import minleaf_dag
from minlob.digraph import (
    build_digraph,
    dfs_out_branching,
    has_out_branching,
    is_acyclic,
    out_branching_root,
    random_hub_digraph,
)
from minlob.exact import exact_internal_number, oracle_minleaf, solve_pbgv


@dataclass
class CheckConfig:
    instances: int = 2000
    max_n: int = 9
    seed: int = 0
    max_k: int = 5


def draw(rng: random.Random, max_n: int):
    n = rng.randint(1, max_n)
    if rng.random() < 0.3:
        return random_hub_digraph(n, rng.randint(1, max(1, n // 3)), rng.random() * 0.5, rng.randrange(10**9))
    p = rng.choice([0.1, 0.2, 0.3, 0.5, 0.7])
    return build_digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def check_one(D, max_k: int) -> list[str]:
    leaves, _ = oracle_minleaf(D, max_n=D.n)
    problems = []
    if is_acyclic(D):
        T = minleaf_dag(D)
        if (T.leaf_count if T else 0) != leaves:
            problems.append(f"minleaf_dag {T.leaf_count if T else 0} != oracle {leaves}")
    if not has_out_branching(D):
        return problems
    best = D.n - leaves
    if D.n > 1:
        U = extract_cover(D, minimalize(D, dfs_out_branching(D, out_branching_root(D))))
        t, _ = exact_internal_number(D, U)
        if t != best:
            problems.append(f"exact_internal_number {t} != oracle {best}")
    for k in range(1, max_k + 1):
        ans = solve_pbgv(D, k)
        if ans.yes != (best >= k):
            problems.append(f"solve_pbgv k={k} said {ans.yes}, oracle internal number {best}")
        elif ans.yes and (ans.witness.problems(D) or ans.witness.internal_count < k):
            problems.append(f"solve_pbgv k={k} returned an invalid witness")
    return problems


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=CheckConfig.instances)
    ap.add_argument("--max-n", type=int, default=CheckConfig.max_n)
    ap.add_argument("--max-k", type=int, default=CheckConfig.max_k)
    ap.add_argument("--seed", type=int, default=CheckConfig.seed)
    args = ap.parse_args(argv)
    config = CheckConfig(args.instances, args.max_n, args.seed, args.max_k)

    failures = 0
    t0 = time.perf_counter()
    for i in range(config.instances):
        rng = random.Random(config.seed * 1_000_003 + i)
        D = draw(rng, config.max_n)
        for p in check_one(D, config.max_k):
            failures += 1
            print(f"instance {i}: {p}; arcs={D.sorted_arcs()} n={D.n}")
    elapsed = time.perf_counter() - t0
    print(f"{config.instances} instances, {failures} failures, {elapsed:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
