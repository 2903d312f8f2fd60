"""Out-trees, the 1-change move and leaf-minimising local search."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .digraph import Digraph


class InvalidTreeError(ValueError):
    pass


class OneChangeError(ValueError):
    pass


class ArcInTreeError(OneChangeError):
    pass


class RootChangeError(OneChangeError):
    pass


class BackwardArcError(OneChangeError):
    pass


class NotMinimalError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OutTree:
    """Rooted out-tree given by a parent map over its covered vertices."""

    root: int
    parent: Mapping[int, int]
    covered: frozenset[int]

    def __post_init__(self):
        if self.root not in self.covered:
            raise InvalidTreeError(f"root {self.root} not covered")
        if self.root in self.parent:
            raise InvalidTreeError("root must not have a parent")
        if set(self.parent) != self.covered - {self.root}:
            raise InvalidTreeError("parent map must be defined exactly off the root")
        for v, p in self.parent.items():
            if p not in self.covered:
                raise InvalidTreeError(f"parent {p} of {v} not covered")
        depth = {self.root: 0}
        for v in self.parent:
            path = []
            x = v
            while x not in depth:
                path.append(x)
                x = self.parent[x]
                if len(path) > len(self.covered):
                    raise InvalidTreeError(f"cycle through vertex {v}")
            d = depth[x]
            for y in reversed(path):
                d += 1
                depth[y] = d
        object.__setattr__(self, "_depth", depth)

    @classmethod
    def from_arcs(cls, root: int, arcs: Iterable[tuple[int, int]]) -> OutTree:
        parent = {}
        for u, v in arcs:
            if v in parent:
                raise InvalidTreeError(f"vertex {v} has two parents")
            parent[v] = u
        covered = frozenset(parent) | frozenset(parent.values()) | {root}
        return cls(root=root, parent=parent, covered=covered)

    def __eq__(self, other):
        if not isinstance(other, OutTree):
            return NotImplemented
        return (
            self.root == other.root
            and dict(self.parent) == dict(other.parent)
            and self.covered == other.covered
        )

    def __hash__(self):
        return hash((self.root, frozenset(self.parent.items())))

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        ch: dict[int, list[int]] = {v: [] for v in self.covered}
        for v, p in self.parent.items():
            ch[p].append(v)
        return {v: tuple(sorted(c)) for v, c in ch.items()}

    def out_degree(self, v: int) -> int:
        return len(self.children[v])

    @cached_property
    def leaves(self) -> frozenset[int]:
        return frozenset(v for v, c in self.children.items() if not c)

    @cached_property
    def internal(self) -> frozenset[int]:
        return self.covered - self.leaves

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    @property
    def internal_count(self) -> int:
        return len(self.internal)

    def depth(self, v: int) -> int:
        return self._depth[v]

    def arcs(self) -> list[tuple[int, int]]:
        return sorted((p, v) for v, p in self.parent.items())

    def is_ancestor(self, x: int, y: int) -> bool:
        """True when ``x`` lies strictly above ``y`` (a tree path ``x -> y`` exists)."""
        if x == y:
            return False
        dx = self._depth[x]
        while self._depth[y] > dx:
            y = self.parent[y]
        return y == x

    def spans(self, D: Digraph) -> bool:
        return self.covered == frozenset(D.vertices)

    def problems(self, D: Digraph, spanning: bool = True) -> list[str]:
        """Reasons this tree is not an out-tree (or out-branching) of ``D``."""
        out = []
        if spanning and not self.spans(D):
            out.append("tree does not span the digraph")
        for v in self.covered:
            if not 0 <= v < D.n:
                out.append(f"vertex {v} outside the digraph")
        for p, v in self.arcs():
            if not D.has_arc(p, v):
                out.append(f"tree arc ({p}, {v}) missing from the digraph")
        return out

    def relabel(self, old_ids) -> OutTree:
        """Map vertex ``i`` to ``old_ids[i]``."""
        return OutTree(
            root=old_ids[self.root],
            parent={old_ids[v]: old_ids[p] for v, p in self.parent.items()},
            covered=frozenset(old_ids[v] for v in self.covered),
        )


@dataclass(frozen=True)
class VertexCover:
    members: frozenset[int]

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members

    def covers(self, D: Digraph) -> bool:
        return is_vertex_cover(D, self.members)


def is_vertex_cover(D: Digraph, members) -> bool:
    return all(u in members or v in members for (u, v) in D.arcs)


def _require_spanning(D: Digraph, T: OutTree) -> None:
    if T.problems(D):
        raise InvalidTreeError("; ".join(T.problems(D)))


def one_change(D: Digraph, T: OutTree, arc: tuple[int, int]) -> OutTree:
    """Replace the tree arc into ``v`` by ``(u, v)``."""
    u, v = arc
    if not D.has_arc(u, v):
        raise OneChangeError(f"({u}, {v}) is not an arc of the digraph")
    if v == T.root:
        raise RootChangeError(f"{v} is the root")
    if T.parent[v] == u:
        raise ArcInTreeError(f"({u}, {v}) already belongs to the tree")
    if T.is_ancestor(v, u):
        raise BackwardArcError(f"({u}, {v}) is backward: {v} is above {u}")
    parent = dict(T.parent)
    parent[v] = u
    return OutTree(root=T.root, parent=parent, covered=T.covered)


@dataclass(frozen=True)
class MinimalityCheck:
    minimal: bool
    violation: tuple[int, int] | None = None

    def __bool__(self):
        return self.minimal


class _WorkingTree:
    """Mutable parent array with child counts, for the local-search loop."""

    def __init__(self, T: OutTree, n: int):
        self.root = T.root
        self.parent = [-1] * n
        for v, p in T.parent.items():
            self.parent[v] = p
        self.kids = [0] * n
        for p in T.parent.values():
            self.kids[p] += 1

    def is_ancestor(self, x: int, y: int) -> bool:
        # walk up from y; terminates at the root
        y = self.parent[y]
        while y != -1:
            if y == x:
                return True
            y = self.parent[y]
        return False

    def first_violation(self, D: Digraph) -> tuple[int, int] | None:
        parent, kids = self.parent, self.kids
        for u in range(D.n):
            if kids[u]:
                continue
            # u is a leaf, so no arc out of u lies in the tree
            for v in D.out_adj[u]:
                if v == self.root or kids[parent[v]] < 2:
                    continue
                if not self.is_ancestor(v, u):
                    return (u, v)
        return None

    def apply(self, u: int, v: int) -> None:
        self.kids[self.parent[v]] -= 1
        self.kids[u] += 1
        self.parent[v] = u

    def freeze(self, covered: frozenset[int]) -> OutTree:
        parent = {v: p for v, p in enumerate(self.parent) if p != -1}
        return OutTree(root=self.root, parent=parent, covered=covered)


def is_minimal(D: Digraph, T: OutTree) -> MinimalityCheck:
    """No 1-change lowers the leaf count.

    Equivalently, every non-backward non-tree arc ``(u, v)`` has ``u``
    internal or a tree parent of ``v`` with a single child. On failure the
    lexicographically smallest violating arc is reported.
    """
    _require_spanning(D, T)
    violation = _WorkingTree(T, D.n).first_violation(D)
    return MinimalityCheck(violation is None, violation)


def improvement_steps(D: Digraph, T: OutTree) -> Iterator[tuple[tuple[int, int], OutTree]]:
    """Yield ``(arc, tree)`` after every leaf-decreasing 1-change until minimal."""
    _require_spanning(D, T)
    work = _WorkingTree(T, D.n)
    while True:
        arc = work.first_violation(D)
        if arc is None:
            return
        work.apply(*arc)
        yield arc, work.freeze(T.covered)


def minimalize(D: Digraph, T: OutTree) -> OutTree:
    _require_spanning(D, T)
    work = _WorkingTree(T, D.n)
    steps = 0
    while True:
        arc = work.first_violation(D)
        if arc is None:
            break
        work.apply(*arc)
        steps += 1
    if steps == 0:
        return T
    return work.freeze(T.covered)


def extract_cover(D: Digraph, T: OutTree) -> VertexCover:
    """Internal vertices, only-child leaves, and the in-degree-0 vertex if any."""
    check = is_minimal(D, T)
    if not check:
        raise NotMinimalError(f"tree is not minimal: arc {check.violation} improves it")
    members = set(T.internal)
    for v in T.leaves:
        if v != T.root and T.out_degree(T.parent[v]) == 1:
            members.add(v)
    members.update(v for v in D.vertices if D.in_degree(v) == 0)
    return VertexCover(frozenset(members))
