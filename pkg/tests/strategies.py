"""Hypothesis strategies and seeded corpora shared by the tests."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from minlob.digraph import build_digraph, has_out_branching


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 7, max_p: float = 1.0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    p = draw(st.floats(0.0, max_p))
    mask = draw(st.lists(st.floats(0.0, 1.0), min_size=len(pairs), max_size=len(pairs)))
    return build_digraph(n, [a for a, x in zip(pairs, mask) if x < p])


@st.composite
def branching_digraphs(draw, min_n: int = 1, max_n: int = 7):
    """Digraphs that have an out-branching: a random spanning out-tree plus extra arcs."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    arcs = set()
    for i in range(1, n):
        parent = order[draw(st.integers(0, i - 1))]
        arcs.add((parent, order[i]))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in arcs]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_digraph(n, sorted(arcs | set(extra)))


def random_instance(rng: random.Random, n: int, p: float):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    return build_digraph(n, [a for a in pairs if rng.random() < p])


def seeded_corpus(count: int, n_range=(2, 9), seed: int = 2024, need_branching: bool = True):
    """Deterministic list of random digraphs, mixing sparse and dense ones."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*n_range)
        p = rng.choice([0.15, 0.25, 0.35, 0.5, 0.7])
        D = random_instance(rng, n, p)
        if need_branching and not has_out_branching(D):
            continue
        out.append(D)
    return out
