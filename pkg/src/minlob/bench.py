"""Kernel-size and timing benchmark over seeded random instances."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .digraph import has_out_branching, random_hub_digraph
from .exact import PipelineStats, exact_internal_number
from .kernelization import KernelStats, kernel_bound, kernelize

COLUMNS = [
    "seed",
    "n",
    "m",
    "k",
    "outcome",
    "kernel_n",
    "kernel_bound",
    "rounds",
    "local_search_s",
    "crown_s",
    "exact_s",
    "total_s",
]


@dataclass
class BenchConfig:
    sizes: list[int] = field(default_factory=lambda: [50, 100, 200])
    ks: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    hubs: int = 2
    arc_probability: float = 0.02
    trials: int = 1
    seed: int = 0
    jobs: int = 1
    exact: bool = True


def bench_row(n: int, k: int, seed: int, hubs: int, p: float, exact: bool = True) -> dict:
    D = random_hub_digraph(n, min(hubs, n), p, seed)
    row = {"seed": seed, "n": n, "m": D.m, "k": k}
    if not has_out_branching(D):
        row.update(outcome="no-branching", kernel_n="", kernel_bound=kernel_bound(k),
                   rounds=0, local_search_s=0.0, crown_s=0.0, exact_s=0.0, total_s=0.0)
        return row
    stats = KernelStats()
    pipe = PipelineStats()
    t0 = time.perf_counter()
    outcome = kernelize(D, k, stats)
    if outcome.solved:
        label, kernel_n = "yes", ""
    else:
        kernel_n = outcome.kernel.n
        label = "kernel"
        if exact:
            t1 = time.perf_counter()
            best, _ = exact_internal_number(outcome.kernel, outcome.cover)
            pipe.exact_time = time.perf_counter() - t1
            label = "yes" if best >= k else "no"
    row.update(
        outcome=label,
        kernel_n=kernel_n,
        kernel_bound=kernel_bound(k),
        rounds=stats.rounds,
        local_search_s=round(stats.local_search_time, 6),
        crown_s=round(stats.crown_time, 6),
        exact_s=round(pipe.exact_time, 6),
        total_s=round(time.perf_counter() - t0, 6),
    )
    return row


def _row_args(config: BenchConfig):
    for n in config.sizes:
        for k in config.ks:
            for t in range(config.trials):
                yield n, k, config.seed + t, config.hubs, config.arc_probability, config.exact


def run_bench(config: BenchConfig) -> list[dict]:
    args = list(_row_args(config))
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(bench_row, *zip(*args)))
    return [bench_row(*a) for a in args]


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
