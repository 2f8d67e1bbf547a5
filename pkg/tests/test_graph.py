import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from strategies import connected_graphs, graphs
from vdbkit.errors import DuplicateEdge, GraphFormatError, IndexOutOfRange, InvalidMove, NotConnected, SelfLoop
from vdbkit.extremal import construct_minimizer
from vdbkit.graph import (
    SwapCheck,
    SwapMove,
    apply_swap,
    check_swap_shape,
    cyclomatic_number,
    degree_profile,
    edge_class_counts,
    from_edge_list,
    from_edge_list_text,
    is_chemical,
    is_connected,
    iter_swap_candidates,
    to_edge_list_text,
    validate_swap,
)


def star(n):
    return from_edge_list(n, [(0, i) for i in range(1, n)])


def path(n):
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


class TestConstruction:
    def test_c4(self, c4):
        assert c4.n == 4 and c4.m == 4
        assert c4.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]

    def test_single_vertex(self):
        g = from_edge_list(1, [])
        assert g.n == 1 and g.m == 0

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            from_edge_list(4, [(0, 0)])

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            from_edge_list(3, [(0, 3)])
        with pytest.raises(IndexOutOfRange):
            from_edge_list(3, [(-1, 2)])

    def test_duplicate_either_orientation(self):
        with pytest.raises(DuplicateEdge):
            from_edge_list(3, [(0, 1), (1, 0)])


class TestConnectivity:
    def test_examples(self, c4, k4):
        assert is_connected(c4)
        assert is_connected(k4)
        assert not is_connected(from_edge_list(4, [(0, 1), (2, 3)]))
        assert is_connected(from_edge_list(1, []))

    @given(graphs())
    def test_matches_networkx(self, g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        assert is_connected(g) == nx.is_connected(h)

    def test_cyclomatic(self, c4, k4):
        assert cyclomatic_number(c4) == 1
        assert cyclomatic_number(k4) == 3
        assert cyclomatic_number(path(7)) == 0
        assert cyclomatic_number(star(5)) == 0

    def test_cyclomatic_disconnected(self):
        with pytest.raises(NotConnected):
            cyclomatic_number(from_edge_list(4, [(0, 1), (2, 3)]))


class TestProfiles:
    def test_degree_profile_examples(self, k4, minimizer_10_3):
        p = degree_profile(k4)
        assert p.counts == {3: 4} and p.max_degree == p.min_degree == 3
        assert degree_profile(minimizer_10_3).counts == {2: 6, 3: 4}
        assert degree_profile(star(5)).counts == {1: 4, 4: 1}

    def test_edge_classes_examples(self, c4, minimizer_10_3):
        assert edge_class_counts(c4).counts == {(2, 2): 4}
        assert edge_class_counts(minimizer_10_3).counts == {(2, 2): 5, (2, 3): 2, (3, 3): 5}
        assert edge_class_counts(path(3)).counts == {(1, 2): 2}

    @given(graphs())
    def test_handshake_identities(self, g):
        prof = degree_profile(g)
        cls = edge_class_counts(g)
        assert sum(prof.counts.values()) == g.n
        assert sum(i * c for i, c in prof.counts.items()) == 2 * g.m
        assert cls.total == g.m
        for i in prof.counts:
            off = sum(c for (a, b), c in cls.counts.items() if (a == i) != (b == i))
            assert off + 2 * cls[i, i] == i * prof[i]

    @given(connected_graphs())
    def test_profile_recovered_from_classes(self, g):
        assert cls_profile(g) == degree_profile(g).counts

    def test_is_chemical(self, k4, minimizer_10_3):
        assert is_chemical(k4)
        assert not is_chemical(star(6))
        assert is_chemical(minimizer_10_3)


def cls_profile(g):
    return edge_class_counts(g).degree_profile().counts


def two_23_edges():
    """Two disjoint (2,3)-edges where swapping yields a (3,3) and a (2,2) edge.

    Vertices 0 and 2 have degree 3, 1 and 3 degree 2.
    """
    g = from_edge_list(8, [(0, 1), (2, 3), (0, 4), (0, 5), (2, 6), (2, 7), (1, 4), (3, 6), (5, 7)])
    return g, SwapMove(0, 1, 3, 2)


class TestSwap:
    def test_valid_swap_merges_two_mixed_edges(self):
        g, s = two_23_edges()
        # ux=(0,1) is a (3,2)-edge, vy=(3,2) a (2,3)-edge; u, y have degree 3
        assert validate_swap(g, s) is SwapCheck.VALID
        before = edge_class_counts(g)
        after = edge_class_counts(apply_swap(g, s))
        assert after[2, 3] - before[2, 3] == -2
        assert after[2, 2] - before[2, 2] == 1
        assert after[3, 3] - before[3, 3] == 1

    def test_disconnecting_swap(self):
        c6 = from_edge_list(6, [(i, (i + 1) % 6) for i in range(6)])
        s = SwapMove(0, 1, 3, 4)  # remove 01, 34; add 04, 31 -> cycles {0,4,5} and {1,2,3}
        assert validate_swap(c6, s) is SwapCheck.DISCONNECTS
        with pytest.raises(InvalidMove):
            apply_swap(c6, s)

    def test_reasons(self, c4):
        assert validate_swap(c4, SwapMove(0, 1, 0, 3)) is SwapCheck.VERTICES_NOT_DISTINCT
        assert validate_swap(c4, SwapMove(0, 2, 1, 3)) is SwapCheck.NOT_EDGE
        assert validate_swap(c4, SwapMove(0, 1, 2, 3)) is SwapCheck.ALREADY_EDGE
        g = from_edge_list(5, [(0, 1), (0, 2), (0, 3), (3, 4), (1, 4)])
        # d_u=1 (vertex 2) < d_v=2 (vertex 4)
        assert validate_swap(g, SwapMove(2, 0, 4, 3)) is SwapCheck.DEGREE_ORDER_VIOLATED

    def test_involution(self):
        g = from_edge_list(8, [(i, (i + 1) % 8) for i in range(8)])
        s = SwapMove(0, 1, 5, 4)
        assert validate_swap(g, s)
        h = apply_swap(g, s)
        back = apply_swap(h, SwapMove(0, 4, 5, 1))
        assert back == g

    @given(connected_graphs(min_n=4, extra=8), st.data())
    def test_swap_invariants(self, g, data):
        moves = list(iter_swap_candidates(g))
        if not moves:
            return
        s = data.draw(st.sampled_from(moves))
        if not validate_swap(g, s):
            return
        h = apply_swap(g, s)
        assert h.degrees() == g.degrees()
        assert (h.n, h.m) == (g.n, g.m)
        assert is_connected(h)
        assert cyclomatic_number(h) == cyclomatic_number(g)

    def test_candidates_are_exactly_shape_valid(self):
        g = construct_minimizer(10, 3)
        brute = [SwapMove(*t) for t in itertools.permutations(range(10), 4) if check_swap_shape(g, SwapMove(*t))]
        assert sorted(brute) == list(iter_swap_candidates(g))


class TestEdgeListText:
    def test_round_trip(self, minimizer_10_3):
        text = to_edge_list_text(minimizer_10_3)
        assert text.splitlines()[0] == "10 12"
        assert from_edge_list_text(text) == minimizer_10_3

    def test_count_mismatch(self):
        with pytest.raises(GraphFormatError):
            from_edge_list_text("3 2\n0 1\n")

    def test_garbage(self):
        with pytest.raises(GraphFormatError):
            from_edge_list_text("three edges\n")
