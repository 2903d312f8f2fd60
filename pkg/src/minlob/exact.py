"""Exact solvers: brute-force oracle, cover-based exact search, decision pipeline."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator

from .branching import OutTree, VertexCover, is_vertex_cover
from .dag_matching import hopcroft_karp
from .digraph import (
    Digraph,
    NoOutBranchingError,
    has_out_branching,
    reachable_from,
    root_candidates,
)
from .kernelization import CoverError, KernelReduced, kernelize, reattach_removed

DEFAULT_ORACLE_N = 9


class OracleLimitError(ValueError):
    pass


# --------------------------------------------------------------------------
# Brute-force oracle
# --------------------------------------------------------------------------


def oracle_minleaf(
    D: Digraph, fixed_root: int | None = None, max_n: int = DEFAULT_ORACLE_N
) -> tuple[int, OutTree | None]:
    """Minimum leaf count over all out-branchings, by enumerating parent choices.

    Every non-root vertex picks one in-neighbour; assignments closing a cycle
    are discarded as soon as they appear, and partial assignments that can no
    longer beat the incumbent are cut. With ``fixed_root`` only out-branchings
    rooted there count. Returns ``(0, None)`` when none exists.
    """
    n = D.n
    if n > max_n:
        raise OracleLimitError(f"oracle limited to n <= {max_n}, got n = {n}")
    if n == 0:
        return 0, None
    if fixed_root is None:
        if not has_out_branching(D):
            return 0, None
        roots = sorted(root_candidates(D))
    else:
        if len(reachable_from(D, fixed_root)) != n:
            return 0, None
        roots = [fixed_root]

    best_leaves = n + 1
    best: tuple[int, list[int]] | None = None
    parent = [-1] * n
    kids = [0] * n

    def closes_cycle(v: int, p: int) -> bool:
        x = p
        while x != -1:
            if x == v:
                return True
            x = parent[x]
        return False

    def search(order: list[int], i: int, distinct: int, r: int) -> None:
        nonlocal best_leaves, best
        remaining = len(order) - i
        if n - (distinct + remaining) >= best_leaves or best_leaves == 1:
            return
        if i == len(order):
            best_leaves = n - distinct
            best = (r, parent.copy())
            return
        v = order[i]
        for p in D.in_adj[v]:
            if closes_cycle(v, p):
                continue
            parent[v] = p
            kids[p] += 1
            search(order, i + 1, distinct + (kids[p] == 1), r)
            kids[p] -= 1
            parent[v] = -1

    for r in roots:
        order = [v for v in range(n) if v != r]
        search(order, 0, 0, r)
        if best_leaves == 1:
            break

    r, par = best
    tree = OutTree(
        root=r,
        parent={v: p for v, p in enumerate(par) if v != r},
        covered=frozenset(range(n)),
    )
    return best_leaves, tree


def oracle_internal_number(D: Digraph, max_n: int = DEFAULT_ORACLE_N) -> int | None:
    leaves, _ = oracle_minleaf(D, max_n=max_n)
    return None if leaves == 0 else D.n - leaves


# --------------------------------------------------------------------------
# Tree decompositions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


def star_tree_decomposition(D: Digraph, U: VertexCover | frozenset[int]) -> TreeDecomposition:
    """Centre bag ``U`` plus one bag ``U + {v}`` per vertex outside ``U``."""
    members = frozenset(U.members if isinstance(U, VertexCover) else U)
    if not is_vertex_cover(D, members):
        raise CoverError("not a vertex cover")
    bags = [members] + [members | {v} for v in D.vertices if v not in members]
    edges = tuple((0, i) for i in range(1, len(bags)))
    return TreeDecomposition(tuple(bags), edges)


def decomposition_problems(D: Digraph, td: TreeDecomposition) -> list[str]:
    out = []
    nodes = len(td.bags)
    adj: dict[int, set[int]] = {i: set() for i in range(nodes)}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    if len(td.tree_edges) != nodes - 1 or not _connected(set(range(nodes)), adj):
        out.append("bag graph is not a tree")
    covered = frozenset().union(*td.bags)
    if covered != frozenset(D.vertices):
        out.append("bags do not cover every vertex")
    for u, v in D.arcs:
        if not any(u in b and v in b for b in td.bags):
            out.append(f"arc ({u}, {v}) lies in no bag")
    for v in D.vertices:
        holding = {i for i, b in enumerate(td.bags) if v in b}
        if holding and not _connected(holding, adj):
            out.append(f"bags holding {v} are not connected")
    return out


def _connected(nodes: set[int], adj) -> bool:
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b in nodes and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen == nodes


# --------------------------------------------------------------------------
# Exact internal number over a vertex cover
# --------------------------------------------------------------------------

# Parent descriptors for a non-root cover vertex x.
DIRECT = 0  # parent is cover vertex y, arc y -> x
VIA = 1  # parent is some w outside the cover with y -> w -> x
FROM_ROOT = 2  # parent is the root, which lies outside the cover


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


class _CoverSearch:
    """Enumerates parent skeletons over the cover and fills the rest by matching.

    A skeleton gives every non-root cover vertex a descriptor; vertices with
    a VIA descriptor sharing the same grandparent are grouped into classes,
    each class realised by one distinct vertex outside the cover. Remaining
    outside vertices are matched to childless cover vertices as leaves.
    """

    def __init__(self, D: Digraph, cover: frozenset[int], root: int):
        self.D = D
        self.root = root
        self.cover = sorted(cover)
        self.root_outside = root not in cover
        self.pool = [v for v in D.vertices if v not in cover and v != root]
        self.pool_index = {w: i for i, w in enumerate(self.pool)}
        self.nonroot = [x for x in self.cover if x != root]

        self.options: dict[int, list[tuple[int, int]]] = {}
        for x in self.nonroot:
            opts = []
            via = sorted(
                {
                    y
                    for w in D.in_adj[x]
                    if w in self.pool_index
                    for y in D.in_adj[w]
                    if y != x
                }
            )
            opts += [(VIA, y) for y in via]
            opts += [(DIRECT, y) for y in D.in_adj[x] if y in cover]
            if self.root_outside and D.has_arc(root, x):
                opts.append((FROM_ROOT, -1))
            self.options[x] = opts
        self.order = sorted(self.nonroot, key=lambda x: (len(self.options[x]), x))

        self.cover_cap = sum(1 for x in self.cover if D.out_degree(x) > 0)
        self.pool_cap = sum(1 for w in self.pool if D.out_degree(w) > 0)

    def upper_bound(self, via_slots: int) -> int:
        return self.cover_cap + min(self.pool_cap, via_slots) + self.root_outside

    # -- evaluation of one complete skeleton --

    def _match(self, classes, childless):
        D, pool_index = self.D, self.pool_index
        adj = []
        for y, members in classes:
            cand = set(D.out_adj[y])
            for x in members:
                cand &= set(D.in_adj[x])
            adj.append(sorted(pool_index[w] for w in cand if w in pool_index))
        mate = hopcroft_karp(len(classes), len(self.pool), adj)
        if any(m == -1 for m in mate):
            return None
        initial = {i: m for i, m in enumerate(mate)}
        for z in childless:
            adj.append(sorted(pool_index[w] for w in D.out_adj[z] if w in pool_index))
        mate = hopcroft_karp(len(adj), len(self.pool), adj, initial)
        return mate

    def evaluate(self, assign: dict[int, tuple[int, int]]):
        parents_in_cover = {y for kind, y in assign.values() if kind != FROM_ROOT}
        childless = [z for z in self.cover if z not in parents_in_cover]
        groups: dict[int, list[int]] = {}
        for x in self.nonroot:
            kind, y = assign[x]
            if kind == VIA:
                groups.setdefault(y, []).append(x)
        base = len(parents_in_cover) + self.root_outside

        finest = [(y, [x]) for y in sorted(groups) for x in groups[y]]
        mate = self._match(finest, childless)
        if mate is not None:
            return base + sum(1 for m in mate if m != -1), finest, childless, mate

        # only coarser groupings remain; a finer feasible grouping never loses
        best = None
        group_keys = sorted(groups)
        for combo in itertools.product(*(_set_partitions(groups[y]) for y in group_keys)):
            classes = [(y, part) for y, parts in zip(group_keys, combo) for part in parts]
            mate = self._match(classes, childless)
            if mate is None:
                continue
            value = base + sum(1 for m in mate if m != -1)
            if best is None or value > best[0]:
                best = (value, classes, childless, mate)
        return best

    def build_tree(self, assign, classes, childless, mate) -> OutTree:
        D = self.D
        parent: dict[int, int] = {}
        for x in self.nonroot:
            kind, y = assign[x]
            if kind == DIRECT:
                parent[x] = y
            elif kind == FROM_ROOT:
                parent[x] = self.root
        for i, (y, members) in enumerate(classes):
            w = self.pool[mate[i]]
            parent[w] = y
            for x in members:
                parent[x] = w
        for j, z in enumerate(childless):
            m = mate[len(classes) + j]
            if m != -1:
                parent[self.pool[m]] = z
        for w in self.pool:
            if w not in parent:
                parent[w] = D.in_adj[w][0]
        return OutTree(root=self.root, parent=parent, covered=frozenset(D.vertices))

    # -- skeleton enumeration --

    def run(self, incumbent: int, global_cap: int):
        """Best ``(value, tree)`` beating ``incumbent``, or ``None``."""
        assign: dict[int, tuple[int, int]] = {}
        up: dict[int, int] = {}
        best: list = [incumbent, None]
        order = self.order

        def closes_cycle(x: int, y: int) -> bool:
            while y in up:
                if y == x:
                    return True
                y = up[y]
            return y == x

        def search(i: int, via_slots: int) -> bool:
            if self.upper_bound(via_slots + len(order) - i) <= best[0]:
                return False
            if i == len(order):
                result = self.evaluate(assign)
                if result is not None and result[0] > best[0]:
                    value, classes, childless, mate = result
                    best[0] = value
                    best[1] = (dict(assign), classes, childless, mate)
                return best[0] >= global_cap
            x = order[i]
            for kind, y in self.options[x]:
                if kind != FROM_ROOT:
                    if closes_cycle(x, y):
                        continue
                    up[x] = y
                assign[x] = (kind, y)
                done = search(i + 1, via_slots + (kind == VIA))
                del assign[x]
                up.pop(x, None)
                if done:
                    return True
            return False

        search(0, 0)
        if best[1] is None:
            return None
        tree = self.build_tree(*best[1])
        if tree.internal_count != best[0]:
            raise AssertionError("skeleton value disagrees with its realised tree")
        return best[0], tree


def exact_internal_number(D: Digraph, U: VertexCover | frozenset[int]) -> tuple[int, OutTree]:
    """Largest internal count over all out-branchings, with a witness.

    Exponential only in the cover size: the search enumerates parent
    skeletons over ``U`` (at most ``(2|U| + 1)^|U|`` per root) and resolves
    the independent side of each skeleton by bipartite matching.
    """
    members = frozenset(U.members if isinstance(U, VertexCover) else U)
    if D.n == 0 or not has_out_branching(D):
        raise NoOutBranchingError("digraph has no out-branching")
    if not is_vertex_cover(D, members):
        raise CoverError("U is not a vertex cover")
    if D.n == 1:
        return 0, OutTree(root=0, parent={}, covered=frozenset({0}))

    searches = [_CoverSearch(D, members, r) for r in sorted(root_candidates(D))]
    global_cap = min(D.n - 1, max(s.upper_bound(len(s.nonroot)) for s in searches))
    best: tuple[int, OutTree] | None = None
    for s in searches:
        found = s.run(best[0] if best else -1, global_cap)
        if found is not None:
            best = found
            if best[0] >= global_cap:
                break
    if best is None:
        raise AssertionError("no skeleton realised an out-branching")
    return best


# --------------------------------------------------------------------------
# The decision pipeline
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PbgvAnswer:
    """``yes`` with a witness of at least ``k`` internal vertices, or ``no``."""

    yes: bool
    k: int
    witness: OutTree | None = None
    kernel: KernelReduced | None = None
    internal_number: int | None = None


@dataclass
class PipelineStats:
    kernel_time: float = 0.0
    exact_time: float = 0.0
    kernel_n: int | None = None


def solve_pbgv(D: Digraph, k: int, stats: PipelineStats | None = None) -> PbgvAnswer:
    """Is there an out-branching with at most ``n - k`` leaves?

    Kernelises first; an irreducible kernel is solved exactly and its witness
    lifted back by hanging the removed vertices as leaves.
    """
    stats = stats if stats is not None else PipelineStats()
    t0 = time.perf_counter()
    outcome = kernelize(D, k)
    stats.kernel_time = time.perf_counter() - t0
    if outcome.solved:
        return PbgvAnswer(yes=True, k=k, witness=outcome.witness)

    stats.kernel_n = outcome.kernel.n
    t0 = time.perf_counter()
    best, tree = exact_internal_number(outcome.kernel, outcome.cover)
    stats.exact_time = time.perf_counter() - t0
    if best < k:
        return PbgvAnswer(yes=False, k=k, kernel=outcome, internal_number=best)
    witness = reattach_removed(D, tree.relabel(outcome.vertex_map), outcome.removed)
    return PbgvAnswer(yes=True, k=k, witness=witness, kernel=outcome, internal_number=best)
