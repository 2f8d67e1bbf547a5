import itertools
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from strategies import connected_graphs
from vdbkit.errors import HypothesisViolated, Infeasible, InvalidMove, NotConnected
from vdbkit.extremal import (
    best_valid_move,
    check_certificate,
    construct_minimizer,
    greedy_descent,
    random_k_cyclic,
    swap_delta,
    trace_is_monotone,
)
from vdbkit.graph import (
    SwapMove,
    apply_swap,
    cyclomatic_number,
    degree_profile,
    edge_class_counts,
    from_edge_list,
    is_chemical,
    is_connected,
    iter_swap_candidates,
    validate_swap,
)
from vdbkit.property_lab import Verdict, check_property_p
from vdbkit.weights import closed_form_min, general_sombor, general_sum_connectivity, p_sombor, sombor, ti_value

SWAP_DELTA_MERGE = -0.14003473906250334  # sqrt(8) + sqrt(18) - 2 sqrt(13), mpmath

CERTIFIED = [sombor(), *(general_sombor(a) for a in (0.5, 0.6, 0.75, 0.9)),
             *(p_sombor(p) for p in (1.25, 1.5, 2.0)),
             *(general_sum_connectivity(a) for a in (0.25, 0.5, 0.75))]


class TestConstruct:
    def test_10_3(self):
        g = construct_minimizer(10, 3)
        assert (g.n, g.m) == (10, 12)
        assert degree_profile(g).counts == {2: 6, 3: 4}
        assert edge_class_counts(g).counts == {(2, 2): 5, (2, 3): 2, (3, 3): 5}

    def test_20_4(self):
        assert edge_class_counts(construct_minimizer(20, 4)).counts == {(2, 2): 13, (2, 3): 2, (3, 3): 8}

    @pytest.mark.parametrize("n, k", [(9, 3), (10, 2), (14, 4)])
    def test_hypotheses(self, n, k):
        with pytest.raises(HypothesisViolated):
            construct_minimizer(n, k)

    @given(st.integers(3, 12), st.integers(0, 30))
    def test_family_certifies(self, k, extra):
        n = 5 * (k - 1) + extra
        g = construct_minimizer(n, k)
        assert is_connected(g) and g.m == n + k - 1 and cyclomatic_number(g) == k
        cert = check_certificate(g, CERTIFIED)
        assert cert.passed, cert.to_dict()

    def test_deterministic(self):
        assert construct_minimizer(21, 5) == construct_minimizer(21, 5)


class TestCertificate:
    def test_sombor_10_3(self, minimizer_10_3):
        cert = check_certificate(minimizer_10_3, [sombor()])
        assert cert.passed
        assert cert.ti_values["sombor"] == pytest.approx(25 * math.sqrt(2) + 2 * math.sqrt(13), rel=1e-12)

    def test_gsc_13_3(self):
        cert = check_certificate(construct_minimizer(13, 3), [general_sum_connectivity(0.5)])
        assert cert.passed
        # 2 * 5^a + 8 * 4^a + 5 * 6^a at a = 1/2
        expect = 2 * math.sqrt(5) + 16 + 5 * math.sqrt(6)
        assert list(cert.ti_values.values())[0] == pytest.approx(expect, rel=1e-12)

    def test_cycle_fails(self):
        c10 = from_edge_list(10, [(i, (i + 1) % 10) for i in range(10)])
        cert = check_certificate(c10, [sombor()])
        assert not cert.passed
        assert not cert.degree_set_ok
        assert cert.k == 1
        assert cert.ti_matches_closed_form == {"sombor": False}

    def test_disconnected(self):
        with pytest.raises(NotConnected):
            check_certificate(from_edge_list(4, [(0, 1), (2, 3)]))

    def test_wrong_counts(self):
        # same (n, k) and degree set {2, 3}, but the degree-3 vertices are spread out
        g = from_edge_list(10, [(i, (i + 1) % 10) for i in range(10)] + [(0, 5), (2, 7)])
        cert = check_certificate(g, [sombor()])
        assert cert.degree_set_ok and not cert.counts_ok and not cert.passed
        assert json.loads(json.dumps(cert.to_dict()))["pass"] is False


def merge_configuration():
    g = from_edge_list(8, [(0, 1), (2, 3), (0, 4), (0, 5), (2, 6), (2, 7), (1, 4), (3, 6), (5, 7)])
    return g, SwapMove(0, 1, 3, 2)


class TestSwapDelta:
    def test_merge_two_mixed_edges(self):
        g, s = merge_configuration()
        d = swap_delta(g, s, sombor())
        assert d == pytest.approx(SWAP_DELTA_MERGE, rel=1e-12)
        assert d == pytest.approx(ti_value(apply_swap(g, s), sombor()) - ti_value(g, sombor()), abs=1e-9)

    def test_equal_degrees_zero(self):
        g = from_edge_list(8, [(i, (i + 1) % 8) for i in range(8)])
        assert swap_delta(g, SwapMove(0, 1, 5, 4), sombor()) == 0.0

    def test_invalid(self, c4):
        with pytest.raises(InvalidMove):
            swap_delta(c4, SwapMove(0, 1, 2, 3), sombor())

    @settings(max_examples=40)
    @given(connected_graphs(min_n=5, max_n=10, extra=8), st.data())
    def test_local_equals_full_and_nonpositive(self, g, data):
        moves = [s for s in iter_swap_candidates(g) if validate_swap(g, s)]
        if not moves:
            return
        s = data.draw(st.sampled_from(moves))
        degs = g.degrees()
        for w in (sombor(), general_sombor(0.75), p_sombor(1.5), general_sum_connectivity(0.5)):
            d = swap_delta(g, s, w)
            full = ti_value(apply_swap(g, s), w) - ti_value(g, w)
            assert d == pytest.approx(full, abs=1e-9)
            assert d <= 1e-12
            if degs[s.u] != degs[s.v] and degs[s.x] != degs[s.y]:
                assert d < -1e-12  # strict P weights give strict decrease


class TestDescent:
    def test_minimizer_is_swap_stable_by_brute_force(self, minimizer_10_3):
        w = sombor()
        worst = 0.0
        for t in itertools.permutations(range(10), 4):
            s = SwapMove(*t)
            if validate_swap(minimizer_10_3, s):
                worst = min(worst, swap_delta(minimizer_10_3, s, w))
        assert worst >= -1e-9
        final, trace = greedy_descent(minimizer_10_3, w)
        assert len(trace) == 1 and final == minimizer_10_3
        assert trace[0].ti == pytest.approx(42.566441610255355, rel=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_trace_invariants(self, seed):
        g = random_k_cyclic(30, 3, seed, chemical=True)
        w = sombor()
        final, trace = greedy_descent(g, w)
        assert trace_is_monotone(trace)
        assert trace[-1].ti == pytest.approx(ti_value(final, w), rel=1e-12)
        assert final.degrees() == g.degrees()
        assert is_connected(final) and cyclomatic_number(final) == 3
        assert final.m == g.m
        assert trace[-1].ti >= closed_form_min(30, 3, w) - 1e-9
        assert best_valid_move(final, w) is None
        for a, b in zip(trace, trace[1:]):
            assert b.delta < 0 and b.ti == pytest.approx(a.ti + b.delta, abs=1e-9)
            json.loads(b.to_json())

    def test_disconnected_start(self):
        with pytest.raises(NotConnected):
            greedy_descent(from_edge_list(4, [(0, 1), (2, 3)]), sombor())

    def test_reproducible(self):
        g = random_k_cyclic(20, 4, 11, chemical=True)
        assert greedy_descent(g, sombor()) == greedy_descent(g, sombor())

    def test_weights_used_have_property_p(self):
        for w in CERTIFIED:
            assert check_property_p(w).verdict is Verdict.PASS


class TestRandom:
    def test_10_3(self):
        g = random_k_cyclic(10, 3, 1)
        assert is_connected(g) and g.m == 12 and cyclomatic_number(g) == 3

    def test_tree(self):
        g = random_k_cyclic(5, 0, 2)
        assert is_connected(g) and g.m == 4

    def test_seeded(self):
        assert random_k_cyclic(15, 4, 9) == random_k_cyclic(15, 4, 9)
        assert random_k_cyclic(15, 4, 9) != random_k_cyclic(15, 4, 10)

    def test_chemical(self):
        for seed in range(20):
            assert is_chemical(random_k_cyclic(12, 6, seed, chemical=True))

    def test_4_4_chemical_infeasible(self):
        # 7 edges do not fit in K4's 6
        with pytest.raises(Infeasible):
            random_k_cyclic(4, 4, 0, chemical=True)

    def test_chemical_degree_bound(self):
        with pytest.raises(Infeasible):
            random_k_cyclic(8, 10, 0, chemical=True)

    def test_small(self):
        with pytest.raises(Infeasible):
            random_k_cyclic(2, 0, 0)
