"""Probabilistic-language pair: normalization, supports, sampling, and the
likelihood-ratio contrast.

Golden divergence values were computed from the closed forms obtained by the
geometric parity sums (odd/even mass splits 1/2, 1/2 and 5/6, 1/6):
KL(P1||P2) = ln(9/5)/2 and KL(P2||P1) = (5/6) ln(5/3) + (1/6) ln(1/3).
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from identlim.games import run_simulation, support_adversary
from identlim.languages import Alphabet, FiniteLanguage, UnaryThresholdLanguage
from identlim.problang import (
    PMF_P1,
    PMF_P2,
    ProbLanguage,
    accuracy_by_sample_size,
    embed_deterministic,
    kl_truncated,
    likelihood_ratio_classify,
    make_prob_learner,
    p1_language,
    p2_language,
    partial_mass,
    pmf_p1,
    pmf_p2,
    sample,
    support_equal_up_to,
    verification_report,
)

UNARY = Alphabet(("x",))

KL12_GOLDEN = 0.293893  # ln(9/5)/2, six significant digits
KL21_GOLDEN = 0.242586  # (5/6) ln(5/3) + (1/6) ln(1/3)


class TestPmfValues:
    @pytest.mark.parametrize(
        "n, expected",
        [(1, Fraction(3, 8)), (2, Fraction(3, 8)), (3, Fraction(3, 32))],
    )
    def test_p1(self, n, expected):
        assert pmf_p1(n) == expected

    @pytest.mark.parametrize(
        "n, expected",
        [(1, Fraction(5, 8)), (2, Fraction(1, 8)), (3, Fraction(5, 32))],
    )
    def test_p2(self, n, expected):
        assert pmf_p2(n) == expected

    def test_rejects_nonpositive_length(self):
        with pytest.raises(ValueError):
            pmf_p1(0)
        with pytest.raises(ValueError):
            pmf_p2(-1)

    def test_positivity_up_to_60(self):
        for n in range(1, 61):
            assert pmf_p1(n) > 0
            assert pmf_p2(n) > 0


class TestPartialMass:
    def test_small_prefixes(self):
        assert partial_mass(PMF_P1, 2) == Fraction(3, 4)
        assert partial_mass(PMF_P2, 2) == Fraction(3, 4)

    def test_near_one_at_60(self):
        for pmf in (PMF_P1, PMF_P2):
            mass = partial_mass(pmf, 60)
            assert abs(1 - float(mass)) < 1e-9
            assert 1 - mass <= Fraction(1, 2**58)  # exact-rational tail bound

    def test_monotone_and_bounded(self):
        prev = Fraction(0)
        for n in range(1, 61):
            cur = partial_mass(PMF_P1, n)
            assert prev < cur <= 1
            prev = cur

    def test_tail_within_geometric_envelope(self):
        for pmf in (PMF_P1, PMF_P2):
            for n in (5, 17, 40, 60):
                assert 1 - partial_mass(pmf, n) <= Fraction(4, 2**n)


class TestSupports:
    def test_pair_supports_agree_to_60(self):
        assert support_equal_up_to(p1_language(), p2_language(), 60)

    def test_embedding_misses_long_strings(self):
        p = p1_language()
        e = embed_deterministic(UnaryThresholdLanguage(UNARY, 3), 10)
        assert not support_equal_up_to(p, e, 10)
        assert p.prob("xxxx") > 0 and e.prob("xxxx") == 0

    def test_reflexive(self):
        p = p1_language()
        assert support_equal_up_to(p, p, 30)


class TestEmbedding:
    def test_uniform_over_threshold(self):
        e = embed_deterministic(UnaryThresholdLanguage(UNARY, 2), 10)
        assert e.prob("x") == Fraction(1, 2)
        assert e.prob("xx") == Fraction(1, 2)

    def test_point_mass(self):
        ab = Alphabet(("a", "b"))
        e = embed_deterministic(FiniteLanguage(ab, frozenset({"a"})), 5)
        assert e.prob("a") == 1

    def test_support_matches_truncation(self):
        e = embed_deterministic(UnaryThresholdLanguage(UNARY, 9), 4)
        assert e.support.enumerate_up_to(9) == ["x", "xx", "xxx", "xxxx"]


class TestSampling:
    def test_reproducible(self):
        p = p1_language()
        assert sample(p, 7, 50) == sample(p, 7, 50)

    def test_point_mass_sampling(self):
        e = embed_deterministic(UnaryThresholdLanguage(UNARY, 1), 5)
        assert sample(e, 123, 5) == ["x"] * 5

    def test_empirical_length_frequencies(self):
        n = 100_000
        freq1 = sample(p1_language(), 42, n).count("x") / n
        freq2 = sample(p2_language(), 42, n).count("x") / n
        assert freq1 == pytest.approx(0.375, abs=0.01)
        assert freq2 == pytest.approx(0.625, abs=0.01)

    def test_unnormalized_pmf_rejected(self):
        from identlim.languages import UnaryAllLanguage

        half = ProbLanguage(
            UnaryAllLanguage(UNARY), lambda s: pmf_p1(len(s)) / 2, "half-mass", 60
        )
        with pytest.raises(ValueError):
            sample(half, 0, 1)


class TestKl:
    def test_self_divergence_zero(self):
        p = p1_language()
        assert kl_truncated(p, p, 60) == 0

    def test_golden_values(self):
        p, q = p1_language(), p2_language()
        kl12 = kl_truncated(p, q, 60)
        kl21 = kl_truncated(q, p, 60)
        assert kl12 == pytest.approx(KL12_GOLDEN, abs=5e-7)
        assert kl21 == pytest.approx(KL21_GOLDEN, abs=5e-7)
        # Cross-check against the independent closed forms.
        assert kl12 == pytest.approx(math.log(9 / 5) / 2, abs=1e-12)
        assert kl21 == pytest.approx((5 / 6) * math.log(5 / 3) + math.log(1 / 3) / 6, abs=1e-12)

    def test_positive_and_asymmetric(self):
        p, q = p1_language(), p2_language()
        assert kl_truncated(p, q, 60) > 0
        assert kl_truncated(q, p, 60) > 0
        assert kl_truncated(p, q, 60) != kl_truncated(q, p, 60)


class TestClassifier:
    def test_single_samples(self):
        p, q = p1_language(), p2_language()
        assert likelihood_ratio_classify(["x"], p, q) == 2  # 3/8 < 5/8
        assert likelihood_ratio_classify(["xx"], p, q) == 1  # 3/8 > 1/8

    def test_tie_goes_to_one(self):
        p = p1_language()
        assert likelihood_ratio_classify(["x", "xx", "xxx"], p, p) == 1

    def test_support_exclusion_shortcuts(self):
        p = p1_language()
        e = embed_deterministic(UnaryThresholdLanguage(UNARY, 2), 10)
        assert likelihood_ratio_classify(["xxxx"], p, e) == 1
        assert likelihood_ratio_classify(["xxxx"], e, p) == 2

    def test_accuracy_grid_monotone_within_noise(self):
        trials = 200
        acc = accuracy_by_sample_size((1, 10, 50, 200), trials, seed=99)
        sizes = sorted(acc)
        for a, b in zip(sizes, sizes[1:]):
            sigma = math.sqrt(max(acc[a] * (1 - acc[a]), 0.25 / trials) / trials)
            assert acc[b] >= acc[a] - 2 * sigma
        assert acc[200] >= 0.99


class TestProbLearner:
    def test_shared_support_keeps_both_alive(self):
        learner = make_prob_learner([p1_language(), p2_language()])
        for n in range(1, 10):
            assert learner.observe("x" * n) == 0  # lowest-index argmax
        dist = learner.hypothesis_distribution()
        assert dist.weights == (Fraction(1, 2), Fraction(1, 2))
        assert dist.argmax_index() == 0

    def test_support_exclusion_eliminates(self):
        learner = make_prob_learner(
            [p1_language(), embed_deterministic(UnaryThresholdLanguage(UNARY, 3), 10, name="L3")]
        )
        learner.observe("x")
        assert learner.observe("xxxx") == 0
        assert learner.hypothesis_distribution().weights == (Fraction(1), Fraction(0))

    def test_uniform_before_any_observation(self):
        learner = make_prob_learner([p1_language(), p2_language()])
        assert learner.hypothesis_distribution().weights == (
            Fraction(1, 2),
            Fraction(1, 2),
        )

    def test_forced_error_in_support_game(self):
        learner = make_prob_learner([p1_language(), p2_language()])
        report = run_simulation(support_adversary(), learner, 40)
        assert report.hypothesis_names[-1] == "P1"
        assert report.target == "P2"
        assert not report.final_correct
        assert report.consistency_violations == ()


def test_verification_report_shape():
    report = verification_report(n_max=40, sample_sizes=(1, 10), trials=20, seed=1)
    assert report["checks_pass"]
    assert report["support_equal"]
    assert set(report["classifier_accuracy_by_m"]) == {"1", "10"}
    assert report["partial_mass_p1"] == pytest.approx(1.0, abs=1e-9)
