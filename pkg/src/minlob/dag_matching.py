"""Exact minimum-leaf out-branchings of acyclic digraphs via bipartite matching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .branching import OutTree
from .digraph import Digraph, topological_order


class CycleError(ValueError):
    pass


class SourceError(ValueError):
    pass


# A left vertex is tagged ``(u,)`` for a single vertex or ``(x, y)`` for a pair.
Tag = tuple


@dataclass(frozen=True)
class BipartiteModel:
    left: tuple[Tag, ...]
    right: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def build(cls, left: Sequence[Tag], right: Sequence[int], edges) -> BipartiteModel:
        edge_set = set()
        adj: list[list[int]] = [[] for _ in left]
        for li, ri in edges:
            if not (0 <= li < len(left) and 0 <= ri < len(right)):
                raise ValueError(f"edge ({li}, {ri}) references a missing vertex")
            if (li, ri) in edge_set:
                raise ValueError(f"duplicate edge ({li}, {ri})")
            edge_set.add((li, ri))
            adj[li].append(ri)
        return cls(
            left=tuple(left),
            right=tuple(right),
            edges=frozenset(edge_set),
            adj=tuple(tuple(sorted(a)) for a in adj),
        )

    def right_adj(self) -> list[list[int]]:
        radj: list[list[int]] = [[] for _ in self.right]
        for li, ri in sorted(self.edges):
            radj[ri].append(li)
        return radj


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, int]]

    def __len__(self):
        return len(self.pairs)

    @property
    def mate_of_left(self) -> dict[int, int]:
        return {li: ri for li, ri in self.pairs}

    @property
    def mate_of_right(self) -> dict[int, int]:
        return {ri: li for li, ri in self.pairs}

    def is_valid(self, B: BipartiteModel) -> bool:
        lefts = [li for li, _ in self.pairs]
        rights = [ri for _, ri in self.pairs]
        return (
            len(set(lefts)) == len(lefts)
            and len(set(rights)) == len(rights)
            and self.pairs <= B.edges
        )


_INF = float("inf")


def hopcroft_karp(
    n_left: int,
    n_right: int,
    adj: Sequence[Sequence[int]],
    initial: dict[int, int] | None = None,
) -> list[int]:
    """Maximum matching by phases of shortest augmenting paths.

    ``adj[l]`` lists right neighbours of left vertex ``l``. ``initial`` seeds
    the matching; augmenting never unmatches a vertex, so every left vertex
    matched initially stays matched. Returns ``mate`` with ``mate[l]`` the
    right partner or ``-1``.
    """
    mate_l = [-1] * n_left
    mate_r = [-1] * n_right
    for li, ri in (initial or {}).items():
        mate_l[li] = ri
        mate_r[ri] = li
    dist = [0.0] * n_left

    def bfs() -> bool:
        q = deque()
        for l in range(n_left):
            if mate_l[l] == -1:
                dist[l] = 0
                q.append(l)
            else:
                dist[l] = _INF
        found = False
        while q:
            l = q.popleft()
            for r in adj[l]:
                m = mate_r[r]
                if m == -1:
                    found = True
                elif dist[m] == _INF:
                    dist[m] = dist[l] + 1
                    q.append(m)
        return found

    def dfs(start: int) -> bool:
        # iterative version of the layered augmenting search
        stack = [(start, 0)]
        path = []
        while stack:
            l, i = stack[-1]
            nbrs = adj[l]
            if i == len(nbrs):
                dist[l] = _INF
                stack.pop()
                if path:
                    path.pop()
                continue
            stack[-1] = (l, i + 1)
            r = nbrs[i]
            m = mate_r[r]
            if m == -1:
                path.append(r)
                # flip along the stack
                for (pl, _), pr in zip(stack, path):
                    mate_l[pl] = pr
                    mate_r[pr] = pl
                return True
            if dist[m] == dist[l] + 1:
                path.append(r)
                stack.append((m, 0))
        return False

    while bfs():
        for l in range(n_left):
            if mate_l[l] == -1:
                dfs(l)
    return mate_l


def max_bipartite_matching(B: BipartiteModel) -> Matching:
    mate = hopcroft_karp(len(B.left), len(B.right), B.adj)
    return Matching(frozenset((li, ri) for li, ri in enumerate(mate) if ri != -1))


def _unique_source(D: Digraph) -> int | None:
    sources = [v for v in D.vertices if D.in_degree(v) == 0]
    return sources[0] if len(sources) == 1 else None


def build_minleaf_model(D: Digraph, r: int | None = None) -> BipartiteModel:
    """Left copies of all vertices, right copies of all but the source, one edge per arc."""
    if topological_order(D) is None:
        raise CycleError("digraph has a cycle")
    source = _unique_source(D)
    if source is None or (r is not None and r != source):
        raise SourceError("model needs the unique in-degree-0 vertex as root")
    right = [v for v in D.vertices if v != source]
    right_index = {v: i for i, v in enumerate(right)}
    left = [(v,) for v in D.vertices]
    edges = [(x, right_index[y]) for (x, y) in D.arcs]
    return BipartiteModel.build(left, right, edges)


def minleaf_dag(D: Digraph) -> OutTree | None:
    """Minimum-leaf out-branching of an acyclic digraph, or ``None`` if none exists."""
    if topological_order(D) is None:
        raise CycleError("digraph has a cycle")
    r = _unique_source(D)
    if r is None:
        return None
    B = build_minleaf_model(D, r)
    M = max_bipartite_matching(B)
    by_right = M.mate_of_right
    radj = B.right_adj()
    parent = {}
    for ri, y in enumerate(B.right):
        # unmatched right copies take their lowest-index left neighbour
        li = by_right.get(ri, radj[ri][0] if radj[ri] else None)
        parent[y] = B.left[li][0]
    return OutTree(root=r, parent=parent, covered=frozenset(D.vertices))
