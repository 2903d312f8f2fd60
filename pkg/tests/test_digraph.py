import networkx as nx
import pytest
from hypothesis import given

from minlob.branching import OutTree
from minlob.digraph import (
    DuplicateArcError,
    LoopError,
    NoOutBranchingError,
    UnreachableError,
    VertexRangeError,
    build_digraph,
    dfs_out_branching,
    generate,
    has_out_branching,
    hat,
    is_acyclic,
    out_branching_root,
    pn_gadget,
    psbgv_gadget,
    random_dag,
    random_digraph,
    random_hub_digraph,
    reachable_from,
    restrict_reachable,
    root_candidates,
    star,
    strongly_connected_components,
    topological_order,
)
from oracles import min_leaves_brute
from strategies import digraphs

P3 = build_digraph(3, [(0, 1), (1, 2)])
DIAMOND = build_digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
CYCLE3 = build_digraph(3, [(0, 1), (1, 2), (2, 0)])


class TestBuild:
    def test_single_vertex(self):
        D = build_digraph(1, [])
        assert (D.n, D.m) == (1, 0)

    def test_path(self):
        assert P3.sorted_arcs() == [(0, 1), (1, 2)]
        assert P3.out_adj == ((1,), (2,), ())
        assert P3.in_adj == ((), (0,), (1,))

    def test_duplicate(self):
        with pytest.raises(DuplicateArcError):
            build_digraph(3, [(0, 1), (0, 1)])

    def test_loop(self):
        with pytest.raises(LoopError):
            build_digraph(2, [(1, 1)])

    @pytest.mark.parametrize("arc", [(0, 3), (-1, 0)])
    def test_range(self, arc):
        with pytest.raises(VertexRangeError):
            build_digraph(3, [arc])

    def test_error_kinds_are_distinct(self):
        assert len({LoopError, DuplicateArcError, VertexRangeError}) == 3
        assert not issubclass(LoopError, DuplicateArcError)

    @given(digraphs())
    def test_adjacency_matches_arcs(self, D):
        from_out = {(u, v) for u in D.vertices for v in D.out_adj[u]}
        from_in = {(u, v) for v in D.vertices for u in D.in_adj[v]}
        assert from_out == from_in == set(D.arcs)

    def test_induced_keeps_order(self):
        H, old = DIAMOND.induced([3, 0, 1])
        assert old == [0, 1, 3]
        assert H.sorted_arcs() == [(0, 1), (1, 2)]


class TestRoots:
    def test_path(self):
        assert root_candidates(P3) == {0}

    def test_two_isolated(self):
        D = build_digraph(2, [])
        assert root_candidates(D) == {0, 1}
        assert not has_out_branching(D)
        with pytest.raises(NoOutBranchingError):
            out_branching_root(D)

    def test_cycle(self):
        assert root_candidates(CYCLE3) == {0, 1, 2}
        assert has_out_branching(CYCLE3)

    @given(digraphs(max_n=8))
    def test_scc_against_networkx(self, D):
        G = nx.DiGraph()
        G.add_nodes_from(D.vertices)
        G.add_edges_from(D.arcs)
        scc = strongly_connected_components(D)
        ours = sorted(sorted(c) for c in scc.components)
        theirs = sorted(sorted(c) for c in nx.strongly_connected_components(G))
        assert ours == theirs
        cond = nx.condensation(G)
        sources = sorted(
            sorted(cond.nodes[c]["members"]) for c in cond if cond.in_degree(c) == 0
        )
        assert sorted(sorted(scc.components[i]) for i in scc.source_components) == sources

    @given(digraphs(max_n=7))
    def test_existence_criterion(self, D):
        S = root_candidates(D)
        assert len(S) >= 1
        found = min_leaves_brute(D) > 0
        assert has_out_branching(D) == found
        for r in S:
            if found:
                T = dfs_out_branching(D, r)
                assert T.spans(D) and not T.problems(D)
            else:
                with pytest.raises(UnreachableError):
                    dfs_out_branching(D, r)


class TestDfs:
    def test_path(self):
        T = dfs_out_branching(P3, 0)
        assert dict(T.parent) == {1: 0, 2: 1}
        assert T.leaf_count == 1

    def test_star(self):
        T = dfs_out_branching(star(4), 0)
        assert T.leaf_count == 3

    def test_diamond(self):
        T = dfs_out_branching(DIAMOND, 0)
        assert dict(T.parent) == {1: 0, 3: 1, 2: 0}
        assert T.leaf_count == 2
        assert min_leaves_brute(DIAMOND) == 2

    def test_unreachable_reports_set(self):
        D = build_digraph(4, [(0, 1), (2, 3)])
        with pytest.raises(UnreachableError) as exc:
            dfs_out_branching(D, 0)
        assert exc.value.unreachable == frozenset({2, 3})

    def test_returns_out_tree(self):
        assert isinstance(dfs_out_branching(P3, 0), OutTree)


class TestRestrictReachable:
    def test_cycle(self):
        Dv, old = restrict_reachable(CYCLE3, 0)
        assert old == [0, 1, 2]
        assert Dv.sorted_arcs() == [(0, 1), (1, 2)]

    def test_path_suffix(self):
        Dv, old = restrict_reachable(P3, 1)
        assert old == [1, 2]
        assert Dv.sorted_arcs() == [(0, 1)]

    def test_unreachable_dropped(self):
        D = build_digraph(4, [(0, 1), (2, 0), (3, 2)])
        Dv, old = restrict_reachable(D, 0)
        assert old == [0, 1]

    @given(digraphs(max_n=8))
    def test_properties(self, D):
        for v in D.vertices:
            Dv, old = restrict_reachable(D, v)
            assert old[0] == v and Dv.in_degree(0) == 0
            assert reachable_from(Dv, 0) == set(Dv.vertices)
            assert set(old) == reachable_from(D, v)
            for a, b in Dv.arcs:
                assert D.has_arc(old[a], old[b])


class TestAcyclic:
    def test_topological(self):
        order = topological_order(DIAMOND)
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in DIAMOND.arcs)
        assert topological_order(CYCLE3) is None

    @given(digraphs(max_n=8))
    def test_against_networkx(self, D):
        G = nx.DiGraph(list(D.arcs))
        G.add_nodes_from(D.vertices)
        assert is_acyclic(D) == nx.is_directed_acyclic_graph(G)


class TestGenerators:
    def test_star(self):
        D = star(4)
        assert D.sorted_arcs() == [(0, 1), (0, 2), (0, 3)]
        assert min_leaves_brute(D) == 3

    def test_star_rejects(self):
        with pytest.raises(ValueError):
            star(0)

    def test_hat_of_path(self):
        Dh, s = hat(P3)
        assert (Dh.n, s) == (4, 3)
        assert set(Dh.arcs) == {(3, 0), (3, 1), (3, 2), (0, 1), (1, 2)}

    @given(digraphs(max_n=7))
    def test_hat_single_source(self, D):
        Dh, s = hat(D)
        assert Dh.n == D.n + 1
        assert [v for v in Dh.vertices if Dh.in_degree(v) == 0] == [s]

    def test_pn_gadget_path(self):
        G = pn_gadget(P3, 2, 2)
        assert G.n == 5
        assert set(G.arcs) == {(0, 1), (1, 2), (2, 3), (2, 4)}
        assert min_leaves_brute(G) == 2

    def test_pn_rejects(self):
        with pytest.raises(ValueError):
            pn_gadget(P3, 0, 0)
        with pytest.raises(VertexRangeError):
            pn_gadget(P3, 3, 1)

    def test_psbgv_gadget(self):
        D = build_digraph(4, [(0, 1), (1, 2), (2, 3)])
        H, centre = psbgv_gadget(D, 0, 3)
        assert (H.n, centre) == (6, 4)
        assert set(H.arcs) == set(D.arcs) | {(4, 5), (4, 0)}

    @pytest.mark.parametrize("k", [1, 0])
    def test_psbgv_rejects_small_k(self, k):
        with pytest.raises(ValueError):
            psbgv_gadget(P3, 0, k)

    def test_psbgv_rejects_empty_star(self):
        with pytest.raises(ValueError):
            psbgv_gadget(P3, 0, 5)

    @pytest.mark.parametrize("p", [-0.1, 1.5])
    def test_probability_checked(self, p):
        with pytest.raises(ValueError):
            random_digraph(4, p, 0)
        with pytest.raises(ValueError):
            random_dag(4, p, 0)

    def test_deterministic(self):
        assert random_digraph(12, 0.3, 5) == random_digraph(12, 0.3, 5)
        assert random_dag(12, 0.3, 5) == random_dag(12, 0.3, 5)
        assert generate("random", seed=3, n=9, p=0.4) == generate("random", seed=3, n=9, p=0.4)
        assert random_digraph(12, 0.3, 5) != random_digraph(12, 0.3, 6)

    def test_random_dag_acyclic(self):
        for seed in range(20):
            assert is_acyclic(random_dag(10, 0.5, seed))

    def test_hub_digraph(self):
        for seed in range(20):
            D = random_hub_digraph(30, 3, 0.2, seed)
            assert has_out_branching(D) and 0 in root_candidates(D)
            assert not any(u >= 3 and v >= 3 for u, v in D.arcs)

    def test_generate_dispatch(self):
        D, marks = generate("star", p=3)
        assert marks == {"center": 0} and D.m == 2
        D, marks = generate("hat", D=P3)
        assert marks == {"s": 3}
        D, marks = generate("psbgv", D=P3, y=1, k=2)
        assert marks == {"y": 1, "center": 3}
        with pytest.raises(ValueError):
            generate("nope")
