"""m-TOPSIS ranking of alternatives, all criteria minimized."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass
class RankingResult:
    normalized: np.ndarray  # (n, k) vector-normalized criteria
    weighted: np.ndarray
    d_plus: np.ndarray  # distance to the ideal (column minima)
    d_minus: np.ndarray  # distance to the anti-ideal (column maxima)
    score: np.ndarray  # smaller is better (closeness under the classic flag is negated)
    rank: np.ndarray  # 1 = best
    weights: np.ndarray
    classic: bool = False

    @property
    def order(self) -> np.ndarray:
        return np.argsort(self.rank, kind="stable")

    @property
    def best(self) -> int:
        return int(self.order[0])

    def to_dict(self) -> dict:
        return {
            "method": "topsis" if self.classic else "m-topsis",
            "weights": self.weights.tolist(),
            "alternatives": [
                {"index": i, "rank": int(self.rank[i]), "score": float(self.score[i]),
                 "d_plus": float(self.d_plus[i]), "d_minus": float(self.d_minus[i]),
                 "normalized": self.normalized[i].tolist(), "weighted": self.weighted[i].tolist()}
                for i in range(len(self.rank))
            ],
        }


def mtopsis_rank(points, weights=None, classic: bool = False, cost_column: int = 0) -> RankingResult:
    """Rank rows of ``points`` (alternatives x criteria).

    The m-TOPSIS score is the distance of (D+, D-) from (min D+, max D-);
    ``classic=True`` ranks by the closeness D- / (D+ + D-) instead.  Ties go
    to the lower value in ``cost_column``, then to input order.
    """
    X = np.asarray(points, float)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ValueError("need a 2-D matrix with at least one alternative")
    if not np.all(np.isfinite(X)):
        raise ValueError("criteria must be finite")
    n, k = X.shape
    w = np.ones(k) if weights is None else np.asarray(weights, float)
    if w.shape != (k,) or np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise ValueError(f"need {k} positive weights, got {weights!r}")
    w = w / w.sum()

    R = np.zeros_like(X)
    for j in range(k):
        col = X[:, j]
        if n > 1 and np.all(col == col[0]):
            warnings.warn(f"criterion column {j} is constant and carries no information", stacklevel=2)
            continue
        norm = np.linalg.norm(col)
        if norm > 0:
            R[:, j] = col / norm
    V = R * w
    d_plus = np.linalg.norm(V - V.min(axis=0), axis=1)
    d_minus = np.linalg.norm(V - V.max(axis=0), axis=1)
    if classic:
        total = d_plus + d_minus
        closeness = np.divide(d_minus, total, out=np.ones(n), where=total > 0)
        score = -closeness
    else:
        score = np.hypot(d_plus - d_plus.min(), d_minus - d_minus.max())
    order = np.lexsort((np.arange(n), X[:, cost_column], score))
    rank = np.empty(n, int)
    rank[order] = np.arange(1, n + 1)
    return RankingResult(R, V, d_plus, d_minus, score, rank, w, classic)
