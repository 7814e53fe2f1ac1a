"""Multiclass soft-margin SVM with an RBF kernel.

Binary subproblems are solved by sequential minimal optimization with
maximal-violating-pair working-set selection; the multiclass scheme is
one-vs-one with majority voting, ties going to the smallest class id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class SvmParams:
    c: float = 4.0
    gamma: float = 4.0
    tolerance: float = 1e-3
    max_iterations: int = 10_000_000

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


class ConvergenceError(Exception):
    """SMO hit the iteration cap; carries the best model found so far."""

    def __init__(self, message, model=None):
        super().__init__(message)
        self.model = model


def rbf_kernel(x, y, gamma: float) -> float:
    """exp(-gamma * ||x - y||^2); always in (0, 1]."""
    d = np.asarray(x, dtype=np.float64) - np.asarray(y, dtype=np.float64)
    return float(np.exp(-gamma * np.dot(d, d)))


def rbf_matrix(xa: np.ndarray, xb: np.ndarray, gamma: float) -> np.ndarray:
    xa = np.asarray(xa, dtype=np.float64)
    xb = np.asarray(xb, dtype=np.float64)
    sq = (
        np.sum(xa * xa, axis=1)[:, None]
        + np.sum(xb * xb, axis=1)[None, :]
        - 2.0 * (xa @ xb.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


@dataclass(frozen=True)
class BinaryModel:
    """One trained binary decision function f(x) = sum(coef_i K(sv_i, x)) + bias.

    ``class_pair`` is (a, b) with a < b; f(x) <= 0 votes for a, f(x) > 0 for b.
    """

    support_vectors: np.ndarray
    dual_coefs: np.ndarray
    bias: float
    class_pair: tuple

    def decision_value(self, x, gamma: float) -> float:
        if len(self.support_vectors) == 0:
            return self.bias
        k = rbf_matrix(self.support_vectors, np.atleast_2d(np.asarray(x, dtype=np.float64)), gamma)
        return float(self.dual_coefs @ k[:, 0] + self.bias)

    def decision_values_many(self, xs: np.ndarray, gamma: float) -> np.ndarray:
        if len(self.support_vectors) == 0:
            return np.full(len(xs), self.bias)
        k = rbf_matrix(self.support_vectors, xs, gamma)
        return self.dual_coefs @ k + self.bias


@dataclass(frozen=True)
class SvmModel:
    classes: tuple
    binaries: tuple  # one BinaryModel per pair, in combinations(classes, 2) order
    params: SvmParams = field(default_factory=SvmParams)


def _smo(q: np.ndarray, y: np.ndarray, c: float, tol: float, max_iter: int):
    """Solve min 1/2 a'Qa - e'a s.t. 0 <= a <= C, y'a = 0.

    Returns (alpha, grad, converged). ``q`` is the y-signed kernel matrix
    Q_ij = y_i y_j K_ij.
    """
    n = len(y)
    alpha = np.zeros(n)
    grad = -np.ones(n)  # grad_t = sum_s a_s Q_ts - 1
    yg = y.astype(np.float64)  # reused sign vector

    for _ in range(max_iter):
        nyg = -yg * grad
        up = ((yg > 0) & (alpha < c)) | ((yg < 0) & (alpha > 0))
        low = ((yg > 0) & (alpha > 0)) | ((yg < 0) & (alpha < c))
        if not up.any() or not low.any():
            return alpha, grad, True
        up_vals = np.where(up, nyg, -np.inf)
        low_vals = np.where(low, nyg, np.inf)
        i = int(np.argmax(up_vals))
        j = int(np.argmin(low_vals))
        if up_vals[i] - low_vals[j] <= tol:
            return alpha, grad, True

        quad = q[i, i] + q[j, j] - 2.0 * yg[i] * yg[j] * q[i, j]
        if quad <= 0:
            quad = 1e-12
        delta = (nyg[i] - nyg[j]) / quad
        # step alpha_i += y_i*delta, alpha_j -= y_j*delta, clipped to the box
        lo, hi = -np.inf, np.inf
        for idx, sign in ((i, yg[i]), (j, -yg[j])):
            if sign > 0:
                lo = max(lo, -alpha[idx])
                hi = min(hi, c - alpha[idx])
            else:
                lo = max(lo, alpha[idx] - c)
                hi = min(hi, alpha[idx])
        delta = min(max(delta, lo), hi)
        if delta == 0.0:
            return alpha, grad, True
        da_i = yg[i] * delta
        da_j = -yg[j] * delta
        alpha[i] += da_i
        alpha[j] += da_j
        grad += q[:, i] * da_i + q[:, j] * da_j
    return alpha, grad, False


def _compute_bias(alpha, grad, y, c):
    nyg = -y * grad  # equals y_t - f_nobias(x_t)
    free = (alpha > 1e-12 * c) & (alpha < c * (1 - 1e-12))
    if free.any():
        return float(np.mean(nyg[free]))
    up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
    low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < c))
    hi = nyg[up].max() if up.any() else 0.0
    lo = nyg[low].min() if low.any() else 0.0
    return float((hi + lo) / 2.0)


def _train_binary(xa, xb, pair, params: SvmParams):
    x = np.vstack([xa, xb])
    y = np.concatenate([-np.ones(len(xa)), np.ones(len(xb))])
    k = rbf_matrix(x, x, params.gamma)
    q = (y[:, None] * y[None, :]) * k
    alpha, grad, converged = _smo(q, y, params.c, params.tolerance, params.max_iterations)
    bias = _compute_bias(alpha, grad, y, params.c)
    sv = alpha > 1e-12
    model = BinaryModel(
        support_vectors=x[sv].copy(),
        dual_coefs=(alpha * y)[sv].copy(),
        bias=bias,
        class_pair=pair,
    )
    return model, converged


def train(samples: np.ndarray, labels, params: SvmParams = SvmParams()) -> SvmModel:
    """Train the one-vs-one ensemble. Labels are integer class ids >= 1."""
    samples = np.asarray(samples, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if len(samples) != len(labels):
        raise ValueError("samples and labels length mismatch")
    if np.any(labels < 1):
        raise ValueError("class ids must be >= 1")
    classes = tuple(int(c) for c in np.unique(labels))
    if len(classes) < 2:
        raise ValueError("fewer than 2 classes: nothing to separate")

    by_class = {c: samples[labels == c] for c in classes}
    binaries = []
    failed = []
    for a, b in combinations(classes, 2):
        model, converged = _train_binary(by_class[a], by_class[b], (a, b), params)
        binaries.append(model)
        if not converged:
            failed.append((a, b))
    model = SvmModel(classes=classes, binaries=tuple(binaries), params=params)
    if failed:
        raise ConvergenceError(
            f"SMO hit the iteration cap for class pairs {failed}", model=model
        )
    return model


def decision_values(model: SvmModel, x) -> list:
    """Raw per-binary decision values [((a, b), f(x)), ...] in pair order."""
    return [(b.class_pair, b.decision_value(x, model.params.gamma)) for b in model.binaries]


def predict(model: SvmModel, x) -> int:
    return int(predict_many(model, np.atleast_2d(np.asarray(x, dtype=np.float64)))[0])


def predict_many(model: SvmModel, xs: np.ndarray) -> np.ndarray:
    """Majority vote over all binaries; ties go to the smallest class id."""
    xs = np.asarray(xs, dtype=np.float64)
    class_index = {c: i for i, c in enumerate(model.classes)}
    votes = np.zeros((len(xs), len(model.classes)), dtype=np.int64)
    for binary in model.binaries:
        a, b = binary.class_pair
        f = binary.decision_values_many(xs, model.params.gamma)
        votes[f <= 0, class_index[a]] += 1
        votes[f > 0, class_index[b]] += 1
    # argmax takes the first maximum; classes are sorted ascending
    winners = np.argmax(votes, axis=1)
    return np.asarray(model.classes, dtype=np.int64)[winners]


# ---------------------------------------------------------------------------
# Serialization

FORMAT_VERSION = 1


def model_to_json(model: SvmModel) -> str:
    payload = {
        "version": FORMAT_VERSION,
        "params": {
            "c": model.params.c,
            "gamma": model.params.gamma,
            "tolerance": model.params.tolerance,
            "max_iterations": model.params.max_iterations,
        },
        "classes": list(model.classes),
        "binaries": [
            {
                "class_pair": list(b.class_pair),
                "support_vectors": b.support_vectors.tolist(),
                "dual_coefs": b.dual_coefs.tolist(),
                "bias": b.bias,
            }
            for b in model.binaries
        ],
    }
    return json.dumps(payload)


def model_from_json(text: str) -> SvmModel:
    payload = json.loads(text)
    if payload.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {payload.get('version')}")
    params = SvmParams(**payload["params"])
    binaries = tuple(
        BinaryModel(
            support_vectors=np.asarray(b["support_vectors"], dtype=np.float64).reshape(-1, 5),
            dual_coefs=np.asarray(b["dual_coefs"], dtype=np.float64),
            bias=float(b["bias"]),
            class_pair=tuple(b["class_pair"]),
        )
        for b in payload["binaries"]
    )
    return SvmModel(classes=tuple(payload["classes"]), binaries=binaries, params=params)
