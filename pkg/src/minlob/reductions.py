"""Minimum path cover and maximum internal out-tree, both solved through out-branchings."""

from __future__ import annotations

from dataclasses import dataclass

from .branching import OutTree
from .dag_matching import minleaf_dag
from .digraph import Digraph, hat, is_acyclic, restrict_reachable, root_candidates
from .exact import solve_pbgv


@dataclass(frozen=True)
class PathCover:
    paths: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.paths)

    def problems(self, D: Digraph) -> list[str]:
        out = []
        seen: list[int] = [v for p in self.paths for v in p]
        if len(seen) != len(set(seen)):
            out.append("paths are not vertex-disjoint")
        if set(seen) != set(D.vertices):
            out.append("paths do not cover every vertex")
        for p in self.paths:
            if not p:
                out.append("empty path")
            for a, b in zip(p, p[1:]):
                if not D.has_arc(a, b):
                    out.append(f"path step ({a}, {b}) is not an arc")
        return out


def path_cover_from_branching(T: OutTree, source: int) -> PathCover:
    """Split an out-branching of a hat digraph into one path per leaf.

    Repeatedly takes the smallest remaining leaf and walks up while the
    parent has a single remaining child, then deletes that path. The added
    source ``source`` (the root) is never part of a path.
    """
    if T.root != source:
        raise ValueError(f"tree must be rooted at the added source {source}")
    remaining = {v: T.out_degree(v) for v in T.covered}
    leaves = sorted(v for v in T.covered if remaining[v] == 0 and v != source)
    paths = []
    while leaves:
        leaf = leaves.pop(0)
        path = [leaf]
        v = leaf
        while True:
            p = T.parent[v]
            if p == source or remaining[p] != 1:
                break
            path.append(p)
            v = p
        top_parent = T.parent[v]
        remaining[top_parent] -= 1
        if remaining[top_parent] == 0 and top_parent != source:
            # cannot happen: the parent kept another child
            raise AssertionError("peeling exposed a new leaf")
        paths.append(tuple(reversed(path)))
    if remaining[source] != 0:
        raise AssertionError("source still has children after peeling")
    return PathCover(tuple(sorted(paths)))


@dataclass(frozen=True)
class PathCoverAnswer:
    yes: bool
    k: int
    cover: PathCover | None = None


def min_path_cover(D: Digraph, k: int) -> PathCoverAnswer:
    """Decide ``pc(D) <= n - k`` through the hat digraph with parameter ``k + 1``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    Dh, s = hat(D)
    answer = solve_pbgv(Dh, k + 1)
    if not answer.yes:
        return PathCoverAnswer(yes=False, k=k)
    return PathCoverAnswer(yes=True, k=k, cover=path_cover_from_branching(answer.witness, s))


def _best_out_branching(Dv: Digraph, floor: int) -> tuple[int, OutTree] | None:
    """Max-internal out-branching of ``Dv`` (rooted at 0) if it beats ``floor - 1``."""
    if Dv.n == 1:
        tree = OutTree(root=0, parent={}, covered=frozenset({0}))
        return (0, tree) if floor <= 0 else None
    if is_acyclic(Dv):
        tree = minleaf_dag(Dv)
        return (tree.internal_count, tree) if tree.internal_count >= floor else None
    best = None
    target = max(floor, 1)
    while True:
        answer = solve_pbgv(Dv, target)
        if not answer.yes:
            return best
        best = (answer.witness.internal_count, answer.witness)
        target = best[0] + 1


def maximum_internal_out_tree(D: Digraph, floor: int = 0) -> OutTree | None:
    """An out-tree of ``D`` with the most internal vertices, if that is ``>= floor``.

    Only roots in source components matter; for each such ``v`` the best
    out-branching of ``D_v`` is found, exactly and in polynomial time when
    ``D_v`` is acyclic.
    """
    best: tuple[int, OutTree] | None = None
    for v in sorted(root_candidates(D)):
        Dv, old_ids = restrict_reachable(D, v)
        found = _best_out_branching(Dv, floor if best is None else best[0] + 1)
        if found is not None:
            best = (found[0], found[1].relabel(old_ids))
    return None if best is None else best[1]


def max_internal_out_tree(D: Digraph, k: int) -> OutTree | None:
    """An optimal out-tree when it has at least ``k`` internal vertices, else ``None``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return maximum_internal_out_tree(D, floor=k)
