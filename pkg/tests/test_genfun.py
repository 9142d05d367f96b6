import pytest
from hypothesis import given
from hypothesis import strategies as st

from oddunimodal.enumeration import count_table
from oddunimodal.genfun import (FORMS, GFForm, andrews_pair, bailey_check, gf, hecke2_exponent, ou_counts,
                                ou_hecke, ou_pair, oustar_counts, perturbed_ou_pair, qq_pair, standard_pairs)
from oddunimodal.genfun.lemmas import (jackson_sides, lemma_identities, oustar_monotonicity_sides,
                                       partial_fraction_polynomial, positivity_check_strict, q_binomial_sides)

ORDER = 60


@pytest.fixture(scope="module")
def series():
    return {(fam, form): gf(fam, form, ORDER) for fam, forms in FORMS.items() for form in forms}


class TestForms:
    @pytest.mark.parametrize("family", sorted(FORMS))
    def test_cross_form_equality(self, series, family):
        forms = FORMS[family]
        ref = series[(family, forms[0])]
        for form in forms[1:]:
            assert series[(family, form)] == ref, (family, form)

    def test_small_coefficients(self, series):
        ou = series[("ou", "direct")]
        assert [sum(ou[n].values()) for n in range(1, 7)] == [1, 2, 4, 6, 9, 14]
        assert series[("oustar", "direct")][4] == {-1: 1, 1: 1}

    def test_rank_bound_and_symmetry(self, series):
        for f in series.values():
            assert f.within_rank_bound()
            for n in range(ORDER + 1):
                row = f[n]
                assert all(row.get(-m) == c for m, c in row.items())

    def test_coefficients_are_exact_ints(self, series):
        for f in series.values():
            assert all(type(c) is int for n in range(ORDER + 1) for c in f[n].values())

    def test_constant_term_vanishes(self, series):
        assert all(f[0] == {} for f in series.values())

    def test_matches_enumeration_ranks(self, series):
        for fam, kind in (("ou", "ou"), ("oustar", "ou*")):
            t = count_table(kind, 25, with_ranks=True)
            f = series[(fam, "direct")]
            assert all(f[n] == t.rank_counts[n] for n in range(26))

    def test_fast_counts_agree(self, series):
        assert ou_counts(ORDER) == series[("ou", "direct")].specialize()
        assert oustar_counts(ORDER) == series[("oustar", "direct")].specialize()

    def test_unknown_selectors(self):
        with pytest.raises(ValueError):
            GFForm("ou", "appell", 5)
        with pytest.raises(ValueError):
            GFForm("nope", "direct", 5)
        with pytest.raises(ValueError):
            GFForm("ou", "direct", -1)

    def test_zero_order(self):
        assert gf("ou", "hecke", 0).is_zero()

    def test_single_prefactor_reading_fails(self):
        assert ou_hecke(30, prefactor_power=1) != ou_hecke(30)


class TestHecke2Exponent:
    @given(st.integers(-60, 60), st.integers(-30, 30))
    def test_integral_on_same_parity(self, r, k):
        s = r + 2 * k
        assert isinstance(hecke2_exponent(r, s), int)

    @given(st.integers(-60, 60), st.integers(-30, 30))
    def test_rejects_mixed_parity(self, r, k):
        with pytest.raises(ArithmeticError):
            hecke2_exponent(r, r + 2 * k + 1)


class TestBailey:
    @pytest.mark.parametrize("pair", standard_pairs(), ids=lambda p: p.name)
    def test_relation_holds(self, pair):
        assert bailey_check(pair, 12, 80).ok

    @pytest.mark.parametrize("w", [(1, 1, 1), (-1, -1, 1), (1, 0, 1), (-1, 1, 0)])
    def test_other_andrews_parameters(self, w):
        assert bailey_check(andrews_pair(w), 8, 40).ok

    def test_qq_pair_other_step(self):
        assert bailey_check(qq_pair(1), 8, 40).ok

    def test_perturbation_detected(self):
        res = bailey_check(perturbed_ou_pair(), 12, 60)
        assert not res.ok
        assert res.failed[0] == 2

    def test_perturbing_alpha0_breaks_beta0(self):
        res = bailey_check(ou_pair().perturbed(0), 4, 30)
        assert 0 in res.failed

    def test_invalid_andrews_parameter(self):
        with pytest.raises(ValueError):
            andrews_pair((1, 0, 2))


@pytest.fixture(scope="module")
def report():
    return lemma_identities(80)


class TestLemmas:
    def test_all_hold(self, report):
        assert report.ok, report.failed()

    def test_report_covers_everything(self, report):
        assert len(report.results) == 13
        assert report["jackson_transformation"].ok

    @pytest.mark.parametrize("r", range(6))
    def test_partial_fraction_polynomial(self, r):
        assert partial_fraction_polynomial(r)

    def test_q_binomial_zero_length(self):
        lhs, rhs = q_binomial_sides(0, (1, 1, 0), 1, 20)
        assert lhs == rhs

    @pytest.mark.parametrize("m", [0, 3])
    def test_jackson_three_forms(self, m):
        a, b, c = jackson_sides(m, 40)
        assert a == b == c

    def test_monotonicity_prefactor(self):
        lhs, rhs = oustar_monotonicity_sides(40)
        assert lhs == rhs
        lhs2, rhs2 = oustar_monotonicity_sides(40, prefactor_exponent=2)
        assert lhs2 != rhs2

    def test_positivity(self):
        assert positivity_check_strict(60)
        with pytest.raises(ValueError):
            positivity_check_strict(5)
