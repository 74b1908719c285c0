import numpy as np
import pytest

from oracles import auc_oracle, roc_counts_oracle, tnr_threshold_oracle, youden_oracle
from wdfp.errors import (
    DegenerateLabelsError,
    LengthMismatchError,
    ZeroNormFingerprintError,
)
from wdfp.matcher import (
    ScoredPair,
    build_roc,
    cosine,
    threshold_at_tnr,
    threshold_report,
    youden_threshold,
)


def make_pairs(pos_scores, neg_scores):
    pairs = [
        ScoredPair(id_a=f"p{i}a", id_b=f"p{i}b", same_source=True, score=s)
        for i, s in enumerate(pos_scores)
    ]
    pairs += [
        ScoredPair(id_a=f"n{i}a", id_b=f"n{i}b", same_source=False, score=s)
        for i, s in enumerate(neg_scores)
    ]
    return pairs


class TestCosine:
    def test_self_similarity(self):
        rng = np.random.default_rng(50)
        f = rng.standard_normal(100)
        # The contract allows +-1e-12 rounding drift around the ideal value.
        assert cosine(f, f) == pytest.approx(1.0, abs=1e-12)
        assert cosine(f, f) <= 1.0

    def test_orthogonal(self):
        assert cosine([1.0, 0.0], [0.0, 1.0]) == 0.0

    def test_antipodal(self):
        rng = np.random.default_rng(51)
        f = rng.standard_normal(64)
        assert cosine(f, -f) == pytest.approx(-1.0, abs=1e-12)
        assert cosine(f, -f) >= -1.0

    def test_scale_invariance(self):
        rng = np.random.default_rng(52)
        a, b = rng.standard_normal((2, 128))
        assert cosine(a, b) == pytest.approx(cosine(3.7 * a, b), abs=1e-12)
        assert cosine(a, b) == pytest.approx(cosine(a, 0.002 * b), abs=1e-12)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(53)
        a, b = rng.standard_normal((2, 128))
        perm = rng.permutation(128)
        assert cosine(a, b) == pytest.approx(cosine(a[perm], b[perm]), abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            cosine([1.0, 2.0], [1.0, 2.0, 3.0])

    def test_zero_norm(self):
        with pytest.raises(ZeroNormFingerprintError):
            cosine(np.zeros(8), np.ones(8))


class TestBuildRoc:
    def test_perfect_separation(self):
        roc = build_roc(make_pairs([0.9, 0.8], [0.1, 0.2]))
        assert roc.auc == 1.0
        # the swept curve passes through the ideal corner (FPR 0, TPR 1)
        assert any(t == 1.0 and f == 0.0 for t, f in zip(roc.tpr, roc.fpr))

    def test_all_scores_equal(self):
        roc = build_roc(make_pairs([0.5, 0.5], [0.5, 0.5, 0.5]))
        assert roc.auc == 0.5

    def test_partial_overlap(self):
        # Concordance: 3 of 4 pos-neg pairs concordant, no ties.
        roc = build_roc(make_pairs([0.9, 0.4], [0.5, 0.1]))
        assert roc.auc == 0.75

    def test_counts_match_direct_counting(self):
        rng = np.random.default_rng(54)
        pos = list(rng.integers(0, 6, 13) / 5.0)
        neg = list(rng.integers(0, 6, 17) / 5.0)
        roc = build_roc(make_pairs(pos, neg))
        for i, lam in enumerate(roc.thresholds):
            if np.isinf(lam):
                continue
            tp, fp = roc_counts_oracle(pos, neg, lam)
            assert roc.tp[i] == tp and roc.fp[i] == fp

    def test_monotone_and_endpoints(self):
        rng = np.random.default_rng(55)
        roc = build_roc(make_pairs(rng.normal(1, 1, 20), rng.normal(0, 1, 30)))
        assert np.all(np.diff(roc.tpr) <= 0) and np.all(np.diff(roc.fpr) <= 0)
        assert roc.tpr[0] == 1.0 and roc.fpr[0] == 1.0
        assert roc.tpr[-1] == 0.0 and roc.fpr[-1] == 0.0

    def test_single_class_rejected(self):
        with pytest.raises(DegenerateLabelsError):
            build_roc(make_pairs([0.5, 0.6], []))


class TestYouden:
    def test_perfect_separation(self):
        roc = build_roc(make_pairs([0.9, 0.8], [0.1, 0.2]))
        lam, tpr, tnr = youden_threshold(roc)
        assert (lam, tpr, tnr) == (0.8, 1.0, 1.0)

    def test_all_equal_takes_highest_tpr(self):
        roc = build_roc(make_pairs([0.5, 0.5], [0.5]))
        lam, tpr, tnr = youden_threshold(roc)
        assert (lam, tpr, tnr) == (0.5, 1.0, 0.0)

    def test_tie_prefers_higher_tpr(self):
        # J = 0.5 at both 0.4 and 0.9; the 0.4 threshold keeps TPR = 1.
        roc = build_roc(make_pairs([0.9, 0.4], [0.5, 0.1]))
        lam, tpr, tnr = youden_threshold(roc)
        assert (lam, tpr, tnr) == (0.4, 1.0, 0.5)


class TestThresholdAtTnr:
    def test_perfect_separation(self):
        roc = build_roc(make_pairs([0.9, 0.8], [0.1, 0.2]))
        lam, tpr, tnr = threshold_at_tnr(roc, 0.99)
        assert tpr == 1.0 and tnr == 1.0

    def test_all_equal_scores_only_reject_everything_qualifies(self):
        roc = build_roc(make_pairs([0.5, 0.5], [0.5]))
        lam, tpr, tnr = threshold_at_tnr(roc, 0.99)
        assert lam == np.inf and tpr == 0.0 and tnr == 1.0

    def test_bad_target(self):
        roc = build_roc(make_pairs([0.9], [0.1]))
        with pytest.raises(ValueError):
            threshold_at_tnr(roc, 1.0)


def _random_score_set(rng):
    n_pos = int(rng.integers(1, 40))
    n_neg = int(rng.integers(1, 60))
    if rng.random() < 0.5:
        # Discrete grid to force ties and exact rational coincidences.
        denom = int(rng.integers(2, 12))
        pos = list(rng.integers(0, denom + 1, n_pos) / denom)
        neg = list(rng.integers(0, denom + 1, n_neg) / denom)
    else:
        pos = list(rng.normal(0.6, 0.4, n_pos))
        neg = list(rng.normal(0.0, 0.4, n_neg))
    return pos, neg


def test_exact_agreement_with_brute_force_on_random_sets():
    rng = np.random.default_rng(56)
    for _ in range(60):
        pos, neg = _random_score_set(rng)
        roc = build_roc(make_pairs(pos, neg))
        assert roc.auc == float(auc_oracle(pos, neg))
        lam, tpr, tnr = youden_threshold(roc)
        lam_o, tpr_o, tnr_o = youden_oracle(pos, neg)
        assert lam == lam_o and tpr == float(tpr_o) and tnr == float(tnr_o)
        target = float(rng.choice([0.99, 0.9, 0.5, rng.random() * 0.98 + 0.01]))
        lam, tpr, _ = threshold_at_tnr(roc, target)
        lam_o, tpr_o, _ = tnr_threshold_oracle(pos, neg, target)
        assert lam == lam_o and tpr == float(tpr_o)


def test_threshold_report_bundles_both_rules():
    roc = build_roc(make_pairs([0.9, 0.8], [0.1, 0.2]))
    report = threshold_report(roc, 0.95)
    assert report.lambda_youden == 0.8
    assert report.tpr_at_tnr == 1.0
    assert report.tnr_target == 0.95
