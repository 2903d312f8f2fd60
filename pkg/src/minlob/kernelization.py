"""Crown reduction and the quadratic kernel for "at least k internal vertices"."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Union

from .branching import OutTree, VertexCover, extract_cover, minimalize
from .dag_matching import BipartiteModel, Matching, max_bipartite_matching
from .digraph import (
    Digraph,
    NoOutBranchingError,
    dfs_out_branching,
    has_out_branching,
    out_branching_root,
)


class CoverError(ValueError):
    pass


def kernel_bound(k: int) -> int:
    return 8 * k * k + 6 * k


def build_crown_model(D: Digraph, U: VertexCover | frozenset[int]) -> BipartiteModel:
    """Bipartite model over ``W = V - U``.

    Left side: singles ``(x,)`` for cover vertices with an arc into ``W``,
    then pairs ``(x, y)`` for which some ``w`` has ``x -> w -> y``. Pairs
    with no such ``w`` are isolated and left out. Right side: ``W`` ascending.
    """
    members = U.members if isinstance(U, VertexCover) else frozenset(U)
    W = [v for v in D.vertices if v not in members]
    W_set = set(W)
    for u, v in D.arcs:
        if u in W_set and v in W_set:
            raise CoverError(f"arc ({u}, {v}) has both ends outside the cover")
    for w in W:
        if D.in_degree(w) == 0:
            raise CoverError(f"vertex {w} outside the cover has in-degree 0")

    w_index = {w: i for i, w in enumerate(W)}
    singles = sorted({x for w in W for x in D.in_adj[w]})
    pair_edges: dict[tuple[int, int], list[int]] = {}
    for w in W:
        for x in D.in_adj[w]:
            for y in D.out_adj[w]:
                pair_edges.setdefault((x, y), []).append(w_index[w])

    left: list[tuple] = [(x,) for x in singles]
    edges = []
    for li, x in enumerate(singles):
        for w in D.out_adj[x]:
            if w in w_index:
                edges.append((li, w_index[w]))
    for pair in sorted(pair_edges):
        li = len(left)
        left.append(pair)
        edges.extend((li, ri) for ri in pair_edges[pair])
    return BipartiteModel.build(left, W, edges)


@dataclass(frozen=True)
class Crown:
    """Head ``H`` on the left; crown ``C = matched | unmatched`` on the right.

    ``matching`` pairs every head vertex with a distinct ``matched`` vertex.
    All sets hold model indices.
    """

    head: frozenset[int]
    matched: frozenset[int]
    unmatched: frozenset[int]
    matching: Matching

    @property
    def crown(self) -> frozenset[int]:
        return self.matched | self.unmatched


def crown_problems(B: BipartiteModel, crown: Crown) -> list[str]:
    out = []
    C = crown.crown
    if crown.matched & crown.unmatched:
        out.append("matched and unmatched parts overlap")
    neighbours = {li for (li, ri) in B.edges if ri in C}
    if neighbours != crown.head:
        out.append("head is not the neighbourhood of the crown")
    pairs = crown.matching.pairs
    if not pairs <= B.edges:
        out.append("matching uses a non-edge")
    if {li for li, _ in pairs} != crown.head or len(pairs) != len(crown.head):
        out.append("matching does not saturate the head")
    if {ri for _, ri in pairs} != crown.matched or len(pairs) != len(crown.matched):
        out.append("matching is not perfect onto the matched part")
    if not crown.unmatched:
        out.append("unmatched part is empty")
    return out


def find_crown(B: BipartiteModel) -> Crown | None:
    """Crown with a nonempty unmatched part, or ``None`` if none exists.

    Starts from right vertices left exposed by a maximum matching and closes
    under "neighbour, then its mate". ``None`` exactly when the matching
    saturates the right side.
    """
    M = max_bipartite_matching(B)
    mate_r = M.mate_of_right
    mate_l = M.mate_of_left
    exposed = {ri for ri in range(len(B.right)) if ri not in mate_r}
    if not exposed:
        return None
    radj = B.right_adj()
    crown = set(exposed)
    head: set[int] = set()
    frontier = list(exposed)
    while frontier:
        ri = frontier.pop()
        for li in radj[ri]:
            if li in head:
                continue
            head.add(li)
            # li is matched, otherwise an augmenting path would exist
            partner = mate_l[li]
            if partner not in crown:
                crown.add(partner)
                frontier.append(partner)
    pairs = frozenset((li, mate_l[li]) for li in head)
    return Crown(
        head=frozenset(head),
        matched=frozenset(crown - exposed),
        unmatched=frozenset(exposed),
        matching=Matching(pairs),
    )


@dataclass(frozen=True)
class KernelSolved:
    """An out-branching of the input digraph with at least ``k`` internal vertices."""

    witness: OutTree
    k: int

    solved = True


@dataclass(frozen=True)
class KernelReduced:
    """Irreducible instance equivalent to the input.

    ``vertex_map[i]`` is the input id of kernel vertex ``i``; ``removed``
    lists the input ids dropped in each reduction round; ``cover`` is a
    vertex cover of the kernel in kernel ids.
    """

    kernel: Digraph
    vertex_map: tuple[int, ...]
    cover: VertexCover
    removed: tuple[tuple[int, ...], ...]
    k: int

    solved = False

    @property
    def bound(self) -> int:
        return kernel_bound(self.k)


KernelOutcome = Union[KernelSolved, KernelReduced]


@dataclass
class KernelStats:
    rounds: int = 0
    local_search_time: float = 0.0
    crown_time: float = 0.0
    removed: int = 0
    history: list[int] = field(default_factory=list)


def reattach_removed(D: Digraph, T: OutTree, removed) -> OutTree:
    """Hang removed vertices back as leaves, latest-removed round first.

    Each vertex goes under its lowest-id in-neighbour already in the tree;
    this never lowers the internal count.
    """
    parent = dict(T.parent)
    covered = set(T.covered)
    for batch in reversed(removed):
        for w in batch:
            p = next((x for x in D.in_adj[w] if x in covered), None)
            if p is None:
                raise ValueError(f"removed vertex {w} has no in-neighbour to hang from")
            parent[w] = p
        covered.update(batch)
    return OutTree(root=T.root, parent=parent, covered=frozenset(covered))


def kernelize(D: Digraph, k: int, stats: KernelStats | None = None) -> KernelOutcome:
    """Find an out-branching with ``>= k`` internal vertices or shrink to a kernel.

    Each round builds a DFS out-branching, improves it to a minimal one, and
    either stops with it or removes the unmatched part of a crown in the
    model over the extracted cover. An irreducible instance has at most
    ``8k^2 + 6k`` vertices.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    out_branching_root(D)  # raises NoOutBranchingError
    stats = stats if stats is not None else KernelStats()

    current = D
    vertex_map = list(D.vertices)
    removed: list[tuple[int, ...]] = []
    while True:
        stats.rounds += 1
        stats.history.append(current.n)
        t0 = time.perf_counter()
        r = out_branching_root(current)
        T = minimalize(current, dfs_out_branching(current, r))
        stats.local_search_time += time.perf_counter() - t0

        if T.leaf_count <= current.n - k:
            witness = reattach_removed(D, T.relabel(vertex_map), removed)
            return KernelSolved(witness=witness, k=k)

        t0 = time.perf_counter()
        U = extract_cover(current, T)
        crown = find_crown(build_crown_model(current, U))
        stats.crown_time += time.perf_counter() - t0
        if crown is None:
            return KernelReduced(
                kernel=current,
                vertex_map=tuple(vertex_map),
                cover=U,
                removed=tuple(removed),
                k=k,
            )

        W = [v for v in current.vertices if v not in U.members]
        drop = sorted(W[ri] for ri in crown.unmatched)
        removed.append(tuple(vertex_map[v] for v in drop))
        stats.removed += len(drop)
        current, kept = current.remove_vertices(drop)
        vertex_map = [vertex_map[v] for v in kept]
        if not has_out_branching(current):
            raise NoOutBranchingError("reduction destroyed every out-branching")
