import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from strategies import connected_graphs, graphs
from vdbkit.errors import DomainError, HypothesisViolated, IndexOverflow, ParameterError
from vdbkit.graph import edge_class_counts, from_edge_list
from vdbkit.weights import (
    WeightFunction,
    closed_form_min,
    compute_exponential_ti,
    compute_ti,
    compute_ti_by_classes,
    custom,
    eval_weight,
    exponential_of,
    extremal_counts,
    from_identity,
    general_randic,
    general_sombor,
    general_sum_connectivity,
    p_sombor,
    sombor,
    ti_from_counts,
    ti_value,
    weight_from_cli,
)

# high-precision oracle values, computed once with mpmath at 50 digits
C4_EXP_SOMBOR = 67.67531471423159  # 4 * exp(sqrt(8))
GSOMBOR_075_10_3 = 81.17105183775962  # 2*13^.75 + 5*8^.75 + 5*18^.75
PSOMBOR_15_10_3 = 47.70140428458134

BUILTINS = [
    sombor(),
    general_sombor(0.5), general_sombor(0.75), general_sombor(-0.5),
    p_sombor(1.5), p_sombor(2.0), p_sombor(-1.0),
    general_sum_connectivity(0.5), general_sum_connectivity(-1.0),
    general_randic(0.5), general_randic(-0.5),
]


class TestEval:
    def test_sombor_23(self):
        assert eval_weight(sombor(), 2, 3) == pytest.approx(math.sqrt(13), rel=1e-15)

    @pytest.mark.parametrize("x, y", [(0.5, 2), (2, 0), (-1, -1)])
    def test_domain(self, x, y):
        with pytest.raises(DomainError):
            eval_weight(sombor(), x, y)

    @pytest.mark.parametrize("ctor", [general_sombor, p_sombor, general_sum_connectivity, general_randic])
    def test_zero_parameter_rejected(self, ctor):
        with pytest.raises(ParameterError):
            ctor(0.0)

    def test_equivalent_families_on_grid(self):
        xs = np.linspace(1, 64, 127)
        X, Y = np.meshgrid(xs, xs)
        s = sombor()(X, Y)
        assert np.allclose(general_sombor(0.5)(X, Y), s, rtol=1e-12, atol=0)
        assert np.allclose(p_sombor(2.0)(X, Y), s, rtol=1e-12, atol=0)

    @pytest.mark.parametrize("w", BUILTINS, ids=lambda w: w.label())
    def test_symmetric_and_positive(self, w):
        rng = np.random.default_rng(7)
        x = rng.uniform(1, 64, 2000)
        y = rng.uniform(1, 64, 2000)
        a, b = w(x, y), w(y, x)
        assert np.all(a > 0)
        assert np.allclose(a, b, rtol=1e-13, atol=0)

    def test_scalar_and_array_agree(self):
        w = general_sombor(0.75)
        assert float(w(np.array([2.0]), np.array([3.0]))[0]) == pytest.approx(eval_weight(w, 2, 3), rel=1e-15)


class TestIndex:
    def test_c4_sombor(self, c4):
        assert compute_ti(c4, sombor()).value == pytest.approx(8 * math.sqrt(2), rel=1e-12)

    def test_minimizer_sombor(self, minimizer_10_3):
        assert compute_ti(minimizer_10_3, sombor()).value == pytest.approx(
            25 * math.sqrt(2) + 2 * math.sqrt(13), rel=1e-12)

    def test_k4_gsc1(self, k4):
        assert compute_ti(k4, general_sum_connectivity(1.0)).value == pytest.approx(36.0, rel=1e-15)

    def test_edgeless(self):
        g = from_edge_list(3, [])
        assert compute_ti(g, sombor()).value == 0.0
        assert compute_exponential_ti(g, sombor()).value == 0.0

    def test_identity_and_digest(self, c4):
        v = compute_ti(c4, general_sombor(0.75))
        assert v.index_id == {"family": "general_sombor", "alpha": 0.75}
        assert v.graph_digest == c4.digest()

    @given(graphs(max_n=10))
    def test_edge_and_class_paths_agree(self, g):
        w = general_sombor(0.75)
        a = compute_ti(g, w).value
        b = compute_ti_by_classes(g, w).value
        assert math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)

    @given(connected_graphs(max_n=10), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        w = p_sombor(1.5)
        assert math.isclose(ti_value(g.relabel(perm), w), ti_value(g, w), rel_tol=1e-12)


class TestExponential:
    def test_c4(self, c4):
        assert compute_exponential_ti(c4, sombor()).value == pytest.approx(C4_EXP_SOMBOR, rel=1e-12)

    def test_single_edge(self):
        g = from_edge_list(2, [(0, 1)])
        assert compute_exponential_ti(g, general_sum_connectivity(1.0)).value == pytest.approx(math.e ** 2, rel=1e-15)

    def test_matches_composed_weight(self, minimizer_10_3):
        w = p_sombor(1.5)
        assert compute_exponential_ti(minimizer_10_3, w).value == compute_ti(minimizer_10_3, exponential_of(w)).value

    def test_overflow_is_reported(self):
        g = from_edge_list(2, [(0, 1)])
        with pytest.raises(IndexOverflow):
            compute_exponential_ti(g, general_sum_connectivity(12.0))


class TestClosedForm:
    def test_sombor_10_3(self):
        assert closed_form_min(10, 3, sombor()) == pytest.approx(25 * math.sqrt(2) + 2 * math.sqrt(13), rel=1e-12)

    def test_general_sombor_10_3(self):
        assert closed_form_min(10, 3, general_sombor(0.75)) == pytest.approx(GSOMBOR_075_10_3, rel=1e-12)

    def test_p_sombor_10_3(self):
        assert closed_form_min(10, 3, p_sombor(1.5)) == pytest.approx(PSOMBOR_15_10_3, rel=1e-12)

    def test_gsc_half_10_3(self):
        # (x + y)^a on the (3,3) class is 6^a
        expect = 2 * math.sqrt(5) + 5 * 2 + 5 * math.sqrt(6)
        assert closed_form_min(10, 3, general_sum_connectivity(0.5)) == pytest.approx(expect, rel=1e-12)

    @given(st.integers(3, 40), st.integers(0, 200))
    def test_sombor_identity(self, k, extra):
        n = 5 * (k - 1) + extra
        expect = (2 * n + 5 * k - 10) * math.sqrt(2) + 2 * math.sqrt(13)
        assert math.isclose(closed_form_min(n, k, sombor()), expect, rel_tol=1e-9)

    @pytest.mark.parametrize("n, k", [(9, 3), (10, 2), (14, 4)])
    def test_hypotheses(self, n, k):
        with pytest.raises(HypothesisViolated):
            closed_form_min(n, k, sombor())

    def test_counts_sum_to_m(self):
        for k in range(3, 8):
            n = 5 * (k - 1) + 3
            assert sum(extremal_counts(n, k).values()) == n + k - 1


class TestCustomAndIdentity:
    def test_custom_table(self, c4):
        tbl = [[1, 2, 3], [2, 5, 6], [3, 6, 9]]
        w = custom(tbl)
        assert eval_weight(w, 2, 2) == 5.0
        assert compute_ti(c4, w).value == 20.0
        with pytest.raises(DomainError):
            eval_weight(w, 2.5, 2)
        with pytest.raises(DomainError):
            eval_weight(w, 4, 1)

    def test_custom_asymmetric(self):
        with pytest.raises(ParameterError):
            custom([[1, 2], [3, 4]])

    @pytest.mark.parametrize("w", BUILTINS + [exponential_of(sombor()), custom([[1, 2], [2, 3]])],
                             ids=lambda w: w.label())
    def test_identity_round_trip(self, w):
        assert from_identity(w.identity()) == w

    def test_cli_names(self):
        assert weight_from_cli("gsc", alpha=0.5) == general_sum_connectivity(0.5)
        assert weight_from_cli("exp:psombor", p=1.5) == exponential_of(p_sombor(1.5))
        with pytest.raises(ParameterError):
            weight_from_cli("sombor", alpha=1.0)
        with pytest.raises(ParameterError):
            weight_from_cli("gsombor")
        with pytest.raises(ParameterError):
            weight_from_cli("wiener")

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            WeightFunction("harmonic")

    def test_counts_dict_path(self, minimizer_10_3):
        w = sombor()
        d = dict(edge_class_counts(minimizer_10_3).counts)
        assert ti_from_counts(d, w) == ti_from_counts(edge_class_counts(minimizer_10_3), w)
