import pytest
from hypothesis import given
from hypothesis import strategies as st

from minlob.branching import VertexCover, extract_cover, minimalize
from minlob.dag_matching import minleaf_dag
from minlob.digraph import (
    NoOutBranchingError,
    build_digraph,
    dfs_out_branching,
    out_branching_root,
    random_dag,
    star,
)
from minlob.exact import (
    OracleLimitError,
    PipelineStats,
    TreeDecomposition,
    _set_partitions,
    decomposition_problems,
    exact_internal_number,
    oracle_internal_number,
    oracle_minleaf,
    solve_pbgv,
    star_tree_decomposition,
)
from minlob.kernelization import CoverError
from oracles import min_leaves_brute
from strategies import branching_digraphs, digraphs

DIAMOND = build_digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def path(n):
    return build_digraph(n, [(i, i + 1) for i in range(n - 1)])


def minimal_cover(D):
    T = minimalize(D, dfs_out_branching(D, out_branching_root(D)))
    return extract_cover(D, T)


class TestOracle:
    def test_path(self):
        leaves, T = oracle_minleaf(path(3))
        assert leaves == 1 and dict(T.parent) == {1: 0, 2: 1}

    def test_isolated(self):
        assert oracle_minleaf(build_digraph(2, [])) == (0, None)

    def test_diamond(self):
        leaves, T = oracle_minleaf(DIAMOND)
        assert leaves == 2 == minleaf_dag(DIAMOND).leaf_count
        assert not T.problems(DIAMOND)

    def test_limit(self):
        with pytest.raises(OracleLimitError):
            oracle_minleaf(path(10))
        assert oracle_minleaf(path(10), max_n=10)[0] == 1

    def test_fixed_root(self):
        D = build_digraph(3, [(0, 1), (1, 2), (2, 0), (0, 2)])
        assert oracle_minleaf(D, fixed_root=1)[0] == 1
        assert oracle_minleaf(path(3), fixed_root=1) == (0, None)

    @given(digraphs(max_n=6))
    def test_against_plain_enumeration(self, D):
        leaves, T = oracle_minleaf(D)
        assert leaves == min_leaves_brute(D)
        if T is not None:
            assert not T.problems(D) and T.leaf_count == leaves
        for r in D.vertices:
            assert oracle_minleaf(D, fixed_root=r)[0] == min_leaves_brute(D, root=r)


class TestDecomposition:
    def test_two_cover_vertices(self):
        D = build_digraph(4, [(0, 1), (0, 2), (1, 3), (0, 3)])
        td = star_tree_decomposition(D, frozenset({0, 1}))
        assert td.bags == (frozenset({0, 1}), frozenset({0, 1, 2}), frozenset({0, 1, 3}))
        assert td.width == 2 and decomposition_problems(D, td) == []

    def test_whole_vertex_set(self):
        td = star_tree_decomposition(DIAMOND, frozenset(range(4)))
        assert len(td.bags) == 1 and td.width == 3

    def test_star(self):
        assert star_tree_decomposition(star(4), frozenset({0})).width == 1

    def test_rejects_non_cover(self):
        with pytest.raises(CoverError):
            star_tree_decomposition(path(3), frozenset({0}))

    def test_detects_broken_decompositions(self):
        D = path(3)
        bad = TreeDecomposition((frozenset({0, 1}), frozenset({2})), ((0, 1),))
        assert any("arc" in p for p in decomposition_problems(D, bad))
        split = TreeDecomposition(
            (frozenset({1, 2}), frozenset({0, 1}), frozenset({1})), ((0, 2), (2, 1))
        )
        assert decomposition_problems(D, split) == []
        gap = TreeDecomposition(
            (frozenset({0, 1}), frozenset({1, 2}), frozenset({0})), ((0, 1), (1, 2))
        )
        assert any("not connected" in p for p in decomposition_problems(D, gap))
        forest = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2})), ())
        assert any("tree" in p for p in decomposition_problems(D, forest))

    @given(branching_digraphs(min_n=2, max_n=8))
    def test_axioms_on_extracted_covers(self, D):
        U = minimal_cover(D)
        td = star_tree_decomposition(D, U)
        assert decomposition_problems(D, td) == []
        assert td.width <= len(U)


class TestExactInternalNumber:
    @pytest.mark.parametrize("n", [2, 4, 7])
    def test_path(self, n):
        D = path(n)
        t, T = exact_internal_number(D, frozenset(range(n)))
        assert t == n - 1 == T.internal_count

    @pytest.mark.parametrize("p", [2, 5, 9])
    def test_star(self, p):
        t, _ = exact_internal_number(star(p), frozenset({0}))
        assert t == 1

    def test_single_vertex(self):
        assert exact_internal_number(build_digraph(1, []), frozenset({0}))[0] == 0

    def test_errors(self):
        with pytest.raises(NoOutBranchingError):
            exact_internal_number(build_digraph(2, []), frozenset({0, 1}))
        with pytest.raises(CoverError):
            exact_internal_number(path(3), frozenset({0}))

    def test_root_outside_cover(self):
        # 3 -> 0 -> 4 -> 1: root 3 lies outside the cover {0, 1}
        D = build_digraph(5, [(3, 0), (0, 4), (4, 1), (0, 2), (1, 2)])
        t, T = exact_internal_number(D, frozenset({0, 1}))
        assert t == oracle_internal_number(D) == 4
        assert T.root == 3

    def test_shared_connector(self):
        # the only way to reach 1 and 2 is through the single outside vertex 3
        D = build_digraph(4, [(0, 3), (3, 1), (3, 2)])
        t, T = exact_internal_number(D, frozenset({0, 1, 2}))
        assert t == 2 == oracle_internal_number(D)
        assert T.parent[1] == T.parent[2] == 3

    @given(branching_digraphs(min_n=1, max_n=8))
    def test_matches_oracle_on_extracted_cover(self, D):
        U = minimal_cover(D) if D.n > 1 else VertexCover(frozenset({0}))
        t, T = exact_internal_number(D, U)
        assert t == D.n - oracle_minleaf(D)[0]
        assert not T.problems(D) and T.internal_count == t

    @given(branching_digraphs(min_n=2, max_n=8), st.data())
    def test_any_cover_works(self, D, data):
        U = set(minimal_cover(D).members)
        extra = data.draw(st.sets(st.sampled_from(range(D.n))))
        t, T = exact_internal_number(D, frozenset(U | extra))
        assert t == oracle_internal_number(D)


class TestSolvePbgv:
    def test_path(self):
        ans = solve_pbgv(path(6), 5)
        assert ans.yes and ans.witness.internal_count == 5

    def test_star(self):
        ans = solve_pbgv(star(6), 2)
        assert not ans.yes and ans.witness is None
        assert ans.internal_number == 1

    def test_precondition(self):
        with pytest.raises(NoOutBranchingError):
            solve_pbgv(build_digraph(3, []), 1)

    def test_stats(self):
        stats = PipelineStats()
        solve_pbgv(star(6), 2, stats)
        assert stats.kernel_n is not None and stats.kernel_time >= 0

    @given(branching_digraphs(min_n=1, max_n=8), st.integers(1, 4))
    def test_matches_oracle(self, D, k):
        ans = solve_pbgv(D, k)
        assert ans.yes == (oracle_internal_number(D) >= k)
        if ans.yes:
            assert not ans.witness.problems(D)
            assert ans.witness.internal_count >= k

    def test_dag_lift(self):
        for seed in range(30):
            D = random_dag(8, 0.3, seed)
            if minleaf_dag(D) is None:
                continue
            best = D.n - minleaf_dag(D).leaf_count
            for k in (1, 3, 5):
                assert solve_pbgv(D, k).yes == (best >= k)


def test_set_partitions_count():
    # Bell numbers
    assert [sum(1 for _ in _set_partitions(list(range(n)))) for n in range(6)] == [
        1, 1, 2, 5, 15, 52
    ]
