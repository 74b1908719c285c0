"""Fingerprint comparison, ROC analysis and threshold selection.

Scores are cosine similarities; a pair is called same-source when its
score is >= the threshold. ROC quantities are computed from integer
true/false-positive counts so that AUC and both threshold selectors are
exact: AUC is the trapezoidal area over the swept step curve, which
reduces to (concordant + ties/2) / (positives * negatives) in integer
arithmetic, and tie-breaking never depends on float rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateLabelsError, LengthMismatchError, ZeroNormFingerprintError
from .pipelines import Fingerprint


def _vector(f) -> np.ndarray:
    values = f.values if isinstance(f, Fingerprint) else f
    return np.asarray(values).ravel()


def cosine(f1, f2) -> float:
    """Cosine similarity of two fingerprints (or plain vectors), in [-1, 1]."""
    v1, v2 = _vector(f1), _vector(f2)
    if v1.size != v2.size:
        raise LengthMismatchError(f"fingerprint lengths differ: {v1.size} vs {v2.size}")
    n1 = float(np.linalg.norm(v1))
    n2 = float(np.linalg.norm(v2))
    if n1 == 0.0 or n2 == 0.0:
        raise ZeroNormFingerprintError(
            "zero-norm fingerprint; degenerate (constant?) source image"
        )
    score = float(np.dot(v1, v2)) / (n1 * n2)
    return min(1.0, max(-1.0, score))


@dataclass(frozen=True)
class ScoredPair:
    """One compared image pair with its ground truth."""

    id_a: str
    id_b: str
    same_source: bool
    score: float


@dataclass
class RocCurve:
    """Swept ROC curve: distinct scores plus -inf/+inf sentinels.

    ``thresholds`` ascend; ``tp``/``fp`` are the integer counts of pairs
    scoring >= each threshold, and ``tpr``/``fpr`` their rates. TPR and
    FPR are nonincreasing in the threshold, from (1, 1) down to (0, 0).
    """

    thresholds: np.ndarray
    tp: np.ndarray
    fp: np.ndarray
    n_pos: int
    n_neg: int
    auc: float

    @property
    def tpr(self) -> np.ndarray:
        return self.tp / self.n_pos

    @property
    def fpr(self) -> np.ndarray:
        return self.fp / self.n_neg


@dataclass(frozen=True)
class ThresholdReport:
    """Operating points selected from a ROC curve."""

    lambda_youden: float
    tpr_youden: float
    tnr_youden: float
    lambda_at_tnr: float
    tpr_at_tnr: float
    tnr_target: float


def build_roc(pairs: list[ScoredPair]) -> RocCurve:
    """Sweep all distinct scores (plus sentinels) and tabulate exact counts."""
    pos = np.sort([p.score for p in pairs if p.same_source])
    neg = np.sort([p.score for p in pairs if not p.same_source])
    n_pos, n_neg = len(pos), len(neg)
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError(
            f"need both classes for a ROC curve (got {n_pos} positive, "
            f"{n_neg} negative pairs)"
        )
    scores = np.unique(np.concatenate([pos, neg]))
    thresholds = np.concatenate([[-np.inf], scores, [np.inf]])
    # Pairs scoring >= lambda; searchsorted('left') counts strictly-below.
    tp = n_pos - np.searchsorted(pos, thresholds, side="left")
    fp = n_neg - np.searchsorted(neg, thresholds, side="left")

    # Trapezoid over the step curve, kept in integers: sum of
    # (fp_i - fp_{i+1}) * (tp_i + tp_{i+1}) equals 2*concordant + ties.
    d_fp = fp[:-1] - fp[1:]
    s_tp = tp[:-1] + tp[1:]
    auc_num = int(np.dot(d_fp, s_tp))
    auc = auc_num / (2 * n_pos * n_neg)
    return RocCurve(
        thresholds=thresholds, tp=tp, fp=fp, n_pos=n_pos, n_neg=n_neg, auc=auc
    )


def youden_threshold(roc: RocCurve) -> tuple[float, float, float]:
    """Threshold maximizing TPR - FPR over the swept score values.

    Ties prefer the higher TPR, then the smaller threshold. Returns
    (threshold, tpr, tnr). Comparison is exact: J is compared as the
    integer tp * n_neg - fp * n_pos.
    """
    best = None
    # Skip the -inf/+inf sentinels: only actual score values are candidates.
    for i in range(1, len(roc.thresholds) - 1):
        tp, fp = int(roc.tp[i]), int(roc.fp[i])
        j_num = tp * roc.n_neg - fp * roc.n_pos
        key = (j_num, tp)
        if best is None or key > best[0]:
            best = (key, i)
    i = best[1]
    tp, fp = int(roc.tp[i]), int(roc.fp[i])
    return float(roc.thresholds[i]), tp / roc.n_pos, (roc.n_neg - fp) / roc.n_neg


def threshold_at_tnr(roc: RocCurve, target: float) -> tuple[float, float, float]:
    """Smallest swept threshold whose TNR reaches ``target``.

    Returns (threshold, tpr, tnr); the threshold may be +inf when only
    the reject-everything point qualifies. No interpolation: the
    achieved TNR is always >= target.
    """
    if not 0.0 < target < 1.0:
        raise ValueError(f"TNR target must lie in (0, 1), got {target}")
    target_frac = Fraction(target)
    for i in range(len(roc.thresholds)):
        fp = int(roc.fp[i])
        if Fraction(roc.n_neg - fp, roc.n_neg) >= target_frac:
            tp = int(roc.tp[i])
            return float(roc.thresholds[i]), tp / roc.n_pos, (roc.n_neg - fp) / roc.n_neg
    raise AssertionError("unreachable: FPR at +inf is 0, so TNR is 1")


def threshold_report(roc: RocCurve, tnr_target: float = 0.99) -> ThresholdReport:
    """Assemble both operating points for a curve."""
    lam_y, tpr_y, tnr_y = youden_threshold(roc)
    lam_r, tpr_r, _ = threshold_at_tnr(roc, tnr_target)
    return ThresholdReport(
        lambda_youden=lam_y,
        tpr_youden=tpr_y,
        tnr_youden=tnr_y,
        lambda_at_tnr=lam_r,
        tpr_at_tnr=tpr_r,
        tnr_target=tnr_target,
    )
