from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

import oracles
from monores import UsageError
from monores.analytic import (boundary_count, count_monomials, cutoff, expected_W, expected_Wa,
                              expected_Y, expected_Ya, facet_count, formula_rows, interior_count,
                              lemma_a_max, prob_nonscarf_lcm, prob_nonscarf_lcm_exact,
                              prob_witness_lcm, thresholds, to_decimal)
from monores.experiments import restricted_witness_counts
from monores.sampler import ModelParams, derive_seed, sample_ideal

F = Fraction


class TestCounts:
    def test_examples(self):
        assert count_monomials(3, 2) == 6
        assert count_monomials(4, -1) == 0

    def test_two_variable_simplification(self):
        for a in range(2, 30):
            assert count_monomials(2, a - 2) == a - 1

    def test_simplex_partition(self):
        for n in range(2, 6):
            for a in range(0, 12):
                parts = n * facet_count(n, a) + interior_count(n, a) + boundary_count(n, a)
                assert parts == count_monomials(n, a)
                assert boundary_count(n, a) >= 0


class TestWitnessProbability:
    def test_two_variables_closed_form(self):
        for a in range(1, 20):
            for p in (F(1, 10), F(1, 3), F(7, 8)):
                assert prob_witness_lcm(2, a, p) == p**2 * (1 - p) ** (a - 1)

    def test_p_zero(self):
        assert prob_witness_lcm(3, 4, 0) == 0

    def test_needs_two_variables(self):
        with pytest.raises(UsageError):
            prob_witness_lcm(1, 3, F(1, 2))

    @pytest.mark.parametrize("alpha,a", [((4, 6), 1), ((4, 6), 3), ((5, 5), 4),
                                         ((3, 4, 3), 2), ((4, 5, 4), 3)])
    @pytest.mark.parametrize("p", [F(1, 10), F(1, 2)])
    def test_exact_enumeration(self, alpha, a, p):
        n = len(alpha)
        want = oracles.exact_event_probability(alpha, a, p, lambda S: oracles.is_witness_lcm(S, alpha))
        assert prob_witness_lcm(n, a, p) == want

    def test_monotone_for_small_p(self):
        for n, a in [(2, 3), (3, 3), (3, 5), (4, 4)]:
            grid = [F(k, 1000) for k in range(1, 40)]
            vals = [prob_witness_lcm(n, a, p) for p in grid]
            assert vals == sorted(vals)


class TestNonScarfProbability:
    @pytest.mark.parametrize("alpha,a", [((4, 6), 2), ((5, 5), 4), ((3, 4, 3), 2),
                                         ((4, 5, 4), 3)])
    @pytest.mark.parametrize("p", [F(1, 10), F(1, 2)])
    def test_corrected_form_is_exact(self, alpha, a, p):
        n = len(alpha)
        want = oracles.exact_event_probability(
            alpha, a, p, lambda S: oracles.is_nonscarf_witness_lcm(S, alpha))
        assert prob_nonscarf_lcm_exact(n, a, p) == want
        # the facet-only form is the probability of a sub-event
        assert prob_nonscarf_lcm(n, a, p) <= want

    def test_forms_agree_in_two_variables(self):
        for a in range(0, 15):
            assert prob_nonscarf_lcm(2, a, F(1, 7)) == prob_nonscarf_lcm_exact(2, a, F(1, 7))

    def test_bracket_nonnegative(self):
        for n in (2, 3, 4, 5):
            for a in range(0, 14):
                for k in range(1, 20):
                    p = F(k, 20)
                    assert prob_nonscarf_lcm(n, a, p) >= 0
                    assert prob_nonscarf_lcm(n, a, p) <= prob_witness_lcm(n, a, p)

    def test_p_zero(self):
        assert expected_Y(3, 30, 0).total == 0
        assert prob_nonscarf_lcm(3, 4, 0) == 0


class TestSums:
    def test_cutoff(self):
        # A = floor((p/2)^(-1/(n-1))) - n, checked against a direct search
        for n in (2, 3, 4):
            for p in (F(1, 100), F(1, 20), F(3, 7), F(1)):
                k = max(k for k in range(0, 10_000) if F(k) ** (n - 1) * p <= 2)
                assert cutoff(n, p) == k - n
        assert lemma_a_max(3, F(1, 16)) == 4

    def test_empty_range_at_p_one(self):
        for n in (2, 3, 4):
            s = expected_W(n, 10, 1)
            assert s.total == 0 and s.empty and not s.terms

    def test_two_variable_terms(self):
        n, D, p = 2, 50, F(1, 20)
        s = expected_W(n, D, p)
        assert min(s.terms) == 1 and max(s.terms) == cutoff(n, p)
        for a, v in s.terms.items():
            assert v == (D - a + 1) * p**2 * (1 - p) ** (a - 1)
        assert s.total == sum(s.terms.values())

    def test_exact_and_order_free(self):
        s = expected_W(3, 40, F(1, 50))
        assert sum(reversed(list(s.terms.values())), F(0)) == s.total
        y = expected_Y(3, 40, F(1, 30))
        assert sum(sorted(y.terms.values()), F(0)) == y.total

    def test_y_range_parameter(self):
        full = expected_Y(4, 30, F(1, 2000))
        lemma = expected_Y(4, 30, F(1, 2000), a_min=3)
        assert min(full.terms) == 2 and min(lemma.terms) == 3
        # a = 2 contributes nothing for n = 4 (no facet-interior points)
        assert full.total == lemma.total

    def test_terms_are_count_times_probability(self):
        assert expected_Wa(3, 20, 4, F(1, 9)) == count_monomials(3, 20 + 4 - 12) * prob_witness_lcm(3, 4, F(1, 9))
        assert expected_Ya(3, 20, 4, F(1, 9)) == count_monomials(3, 12) * prob_nonscarf_lcm(3, 4, F(1, 9))


class TestThresholds:
    def test_three_variables(self):
        t = thresholds(3)
        assert t.exponents() == (F(-2), F(-3, 2), F(-4, 3))
        assert t.p_pdim(10) == pytest.approx(0.01)

    def test_ordering_and_twilight_zone(self):
        for n in range(2, 30):
            t = thresholds(n)
            assert t.pdim < t.generic <= t.scarf
            if n >= 3:
                # D^(-n+3/2) << D^(-n+2-1/n): the band between them is nonempty
                assert t.generic < t.scarf
                assert t.p_generic(1e6) < t.p_scarf(1e6)


def test_formula_rows():
    rows = formula_rows(3, 20, "0.05", a_values=[2, 3])
    q = {(r["quantity"], r["a"]): r for r in rows}
    assert q[("m_n(D)", "")]["value_fraction"] == "231"
    w = q[("prob_witness_lcm", 3)]
    assert F(w["value_fraction"]) == prob_witness_lcm(3, 3, F(1, 20))
    assert to_decimal(F(1, 3), 5) == "0.33333"


def _mc_mean(n, D, p, trials, which):
    vals = []
    for t in range(trials):
        M = sample_ideal(ModelParams(n, D, p, derive_seed(99, t)))
        vals.append(restricted_witness_counts(M, p)[which])
    vals = np.array(vals, dtype=float)
    return vals.mean(), vals.std(ddof=1) / sqrt(trials)


@pytest.mark.slow
def test_expected_W_monte_carlo():
    n, D, p = 3, 30, F(1, 50)
    mean, se = _mc_mean(n, D, p, 10_000, 0)
    want = float(expected_W(n, D, p).total)
    assert abs(mean - want) <= 4 * se


@pytest.mark.slow
def test_expected_Y_monte_carlo_facet_form():
    # the facet-only form misses extra divisors on lower-dimensional faces
    n, D, p = 3, 30, F(1, 20)
    mean, se = _mc_mean(n, D, p, 10_000, 1)
    want = float(expected_Y(n, D, p).total)
    assert abs(mean - want) <= 4 * se, f"MC {mean:.5f} +- {se:.5f} vs formula {want:.5f}"


@pytest.mark.slow
def test_expected_Y_monte_carlo_corrected_form():
    n, D, p = 3, 30, F(1, 20)
    mean, se = _mc_mean(n, D, p, 10_000, 1)
    want = float(expected_Y(n, D, p, exact=True).total)
    assert abs(mean - want) <= 4 * se, f"MC {mean:.5f} +- {se:.5f} vs formula {want:.5f}"
