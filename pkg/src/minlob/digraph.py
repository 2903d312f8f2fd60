"""Simple directed graphs over dense integer vertex ids.

Vertices are ``0..n-1``. Adjacency lists are kept sorted so every traversal
in the package is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DigraphError(ValueError):
    """Invalid digraph construction."""


class LoopError(DigraphError):
    pass


class DuplicateArcError(DigraphError):
    pass


class VertexRangeError(DigraphError):
    pass


class NoOutBranchingError(ValueError):
    """The digraph has more than one source strongly connected component."""


class UnreachableError(ValueError):
    def __init__(self, root: int, unreachable: Iterable[int]):
        self.root = root
        self.unreachable = frozenset(unreachable)
        super().__init__(
            f"vertices {sorted(self.unreachable)} are not reachable from {root}"
        )


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[tuple[int, int]]
    out_adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    in_adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def induced(self, keep: Iterable[int]) -> tuple[Digraph, list[int]]:
        """Induced subgraph on ``keep``; returns it with the new-to-old id map."""
        old_ids = sorted(set(keep))
        return self._relabelled(old_ids), old_ids

    def remove_vertices(self, drop: Iterable[int]) -> tuple[Digraph, list[int]]:
        drop = set(drop)
        return self.induced(v for v in self.vertices if v not in drop)

    def _relabelled(self, old_ids: Sequence[int]) -> Digraph:
        new_id = {old: new for new, old in enumerate(old_ids)}
        arcs = [
            (new_id[u], new_id[v])
            for (u, v) in self.arcs
            if u in new_id and v in new_id
        ]
        return build_digraph(len(old_ids), arcs)


def build_digraph(n: int, arc_list: Iterable[tuple[int, int]]) -> Digraph:
    if n < 0:
        raise VertexRangeError(f"vertex count must be nonnegative, got {n}")
    arcs: set[tuple[int, int]] = set()
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in arc_list:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"arc ({u}, {v}) out of range for n={n}")
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        if (u, v) in arcs:
            raise DuplicateArcError(f"duplicate arc ({u}, {v})")
        arcs.add((u, v))
        out_adj[u].append(v)
        in_adj[v].append(u)
    return Digraph(
        n=n,
        arcs=frozenset(arcs),
        out_adj=tuple(tuple(sorted(a)) for a in out_adj),
        in_adj=tuple(tuple(sorted(a)) for a in in_adj),
    )


# --------------------------------------------------------------------------
# Strong components and out-branching existence
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SccDecomposition:
    component_of: tuple[int, ...]
    components: tuple[frozenset[int], ...]
    source_components: tuple[int, ...]


def strongly_connected_components(D: Digraph) -> SccDecomposition:
    """Iterative Tarjan low-link pass."""
    n = D.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    components: list[frozenset[int]] = []
    counter = 0

    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, i = work[-1]
            nbrs = D.out_adj[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(components)
                    members.append(w)
                    if w == v:
                        break
                components.append(frozenset(members))

    has_entering = [False] * len(components)
    for u, v in D.arcs:
        if comp_of[u] != comp_of[v]:
            has_entering[comp_of[v]] = True
    sources = tuple(c for c in range(len(components)) if not has_entering[c])
    return SccDecomposition(tuple(comp_of), tuple(components), sources)


def root_candidates(D: Digraph) -> set[int]:
    """Union of all source strong components.

    When exactly one source component exists, each of its vertices roots an
    out-branching; otherwise the digraph has none.
    """
    scc = strongly_connected_components(D)
    out: set[int] = set()
    for c in scc.source_components:
        out |= scc.components[c]
    return out


def has_out_branching(D: Digraph) -> bool:
    return len(strongly_connected_components(D).source_components) == 1


def out_branching_root(D: Digraph) -> int:
    """Lowest-id vertex of the unique source component."""
    scc = strongly_connected_components(D)
    if len(scc.source_components) != 1:
        raise NoOutBranchingError(
            f"{len(scc.source_components)} source components; no out-branching"
        )
    return min(scc.components[scc.source_components[0]])


def reachable_from(D: Digraph, v: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in D.out_adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def topological_order(D: Digraph) -> list[int] | None:
    """Kahn's algorithm; ``None`` when a cycle exists."""
    indeg = [D.in_degree(v) for v in D.vertices]
    ready = [v for v in D.vertices if indeg[v] == 0]
    order = []
    while ready:
        u = ready.pop()
        order.append(u)
        for w in D.out_adj[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == D.n else None


def is_acyclic(D: Digraph) -> bool:
    return topological_order(D) is not None


def dfs_out_branching(D: Digraph, r: int):
    """Depth-first out-branching rooted at ``r``.

    Children are explored in ascending id order, so the parent of every
    vertex is its discovery predecessor in the recursive DFS.
    """
    from .branching import OutTree

    parent: dict[int, int] = {}
    seen = {r}
    work = [(r, 0)]
    while work:
        v, i = work[-1]
        nbrs = D.out_adj[v]
        if i == len(nbrs):
            work.pop()
            continue
        work[-1] = (v, i + 1)
        w = nbrs[i]
        if w not in seen:
            seen.add(w)
            parent[w] = v
            work.append((w, 0))
    if len(seen) != D.n:
        raise UnreachableError(r, set(D.vertices) - seen)
    return OutTree(root=r, parent=parent, covered=frozenset(seen))


def restrict_reachable(D: Digraph, v: int) -> tuple[Digraph, list[int]]:
    """The subgraph induced by vertices reachable from ``v``, minus arcs into ``v``.

    ``v`` becomes vertex 0 of the result; the remaining vertices follow in
    ascending original order. Returns the digraph and its new-to-old id map.
    """
    reach = reachable_from(D, v)
    old_ids = [v] + sorted(reach - {v})
    new_id = {old: new for new, old in enumerate(old_ids)}
    arcs = [
        (new_id[a], new_id[b])
        for (a, b) in D.arcs
        if a in new_id and b in new_id and b != v
    ]
    return build_digraph(len(old_ids), arcs), old_ids


# --------------------------------------------------------------------------
# Generators
# --------------------------------------------------------------------------


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"arc probability must lie in [0, 1], got {p}")


def star(p: int) -> Digraph:
    """Star on ``p`` vertices with centre 0 and arcs to every other vertex."""
    if p < 1:
        raise ValueError(f"star needs p >= 1, got {p}")
    return build_digraph(p, [(0, i) for i in range(1, p)])


def pn_gadget(D: Digraph, v: int, k: int) -> Digraph:
    """Attach ``k`` new out-pendants ``n..n+k-1`` to ``v``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 <= v < D.n:
        raise VertexRangeError(f"vertex {v} out of range")
    arcs = list(D.arcs) + [(v, D.n + i) for i in range(k)]
    return build_digraph(D.n + k, arcs)


def psbgv_gadget(D: Digraph, y: int, k: int) -> tuple[Digraph, int]:
    """Disjoint star on ``n // (k-1)`` vertices whose centre gets an arc to ``y``.

    The star occupies ids ``n..n+p-1`` with centre ``n``; the centre is
    returned alongside the digraph.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if not 0 <= y < D.n:
        raise VertexRangeError(f"vertex {y} out of range")
    p = D.n // (k - 1)
    if p < 1:
        raise ValueError(f"star order n // (k - 1) = {p} is below 1")
    centre = D.n
    arcs = list(D.arcs) + [(centre, centre + i) for i in range(1, p)]
    arcs.append((centre, y))
    return build_digraph(D.n + p, arcs), centre


def hat(D: Digraph) -> tuple[Digraph, int]:
    """Add a universal source ``s = n``; returns the digraph and ``s``."""
    s = D.n
    arcs = list(D.arcs) + [(s, v) for v in D.vertices]
    return build_digraph(D.n + 1, arcs), s


def random_digraph(n: int, arc_probability: float, seed: int) -> Digraph:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    _check_probability(arc_probability)
    rng = random.Random(seed)
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < arc_probability
    ]
    return build_digraph(n, arcs)


def random_dag(n: int, arc_probability: float, seed: int) -> Digraph:
    """Random acyclic digraph oriented along a random topological order."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    _check_probability(arc_probability)
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    arcs = [
        (order[i], order[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < arc_probability
    ]
    return build_digraph(n, arcs)


def random_hub_digraph(n: int, hubs: int, arc_probability: float, seed: int) -> Digraph:
    """Hubs ``0..hubs-1`` joined by a random out-tree from 0; the rest are spokes.

    Every spoke receives one arc from a random hub, and each hub-spoke pair
    in either direction plus each hub pair gets an extra arc with the given
    probability. Spokes are pairwise non-adjacent, so vertex 0 roots an
    out-branching and the hubs form a vertex cover.
    """
    if not 1 <= hubs <= max(n, 1):
        raise ValueError(f"need 1 <= hubs <= n, got hubs={hubs}, n={n}")
    _check_probability(arc_probability)
    rng = random.Random(seed)
    arcs = {(rng.randrange(i), i) for i in range(1, hubs)}
    for a in range(hubs):
        for b in range(hubs):
            if a != b and rng.random() < arc_probability:
                arcs.add((a, b))
    for w in range(hubs, n):
        arcs.add((rng.randrange(hubs), w))
        for h in range(hubs):
            if rng.random() < arc_probability:
                arcs.add((h, w))
            if rng.random() < arc_probability:
                arcs.add((w, h))
    return build_digraph(n, sorted(arcs))


def generate(kind: str, seed: int = 0, **params) -> tuple[Digraph, dict[str, int]]:
    """Dispatch to a named generator; returns the digraph and designated vertices.

    Kinds: ``star(p)``, ``pn(D, v, k)``, ``psbgv(D, y, k)``, ``hat(D)``,
    ``random(n, p)``, ``random-dag(n, p)``, ``hub(n, hubs, p)``.
    """
    kind = kind.replace("_", "-")
    if kind == "star":
        return star(params["p"]), {"center": 0}
    if kind in ("pn", "pn-gadget"):
        D, v, k = params["D"], params["v"], params["k"]
        return pn_gadget(D, v, k), {"v": v}
    if kind in ("psbgv", "psbgv-gadget"):
        D, y = params["D"], params["y"]
        H, centre = psbgv_gadget(D, y, params["k"])
        return H, {"y": y, "center": centre}
    if kind == "hat":
        Dh, s = hat(params["D"])
        return Dh, {"s": s}
    if kind == "random":
        return random_digraph(params["n"], params["p"], seed), {}
    if kind == "random-dag":
        return random_dag(params["n"], params["p"], seed), {}
    if kind == "hub":
        return random_hub_digraph(params["n"], params["hubs"], params["p"], seed), {}
    raise ValueError(f"unknown generator kind {kind!r}")
