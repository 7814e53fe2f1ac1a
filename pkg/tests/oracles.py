"""Independent reference implementations used to freeze expected values.

Everything here is deliberately brute-force and shares no code with the
package's own algorithms.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize


# ---------------------------------------------------------------------------
# Dense QP oracle for the binary SVM dual

def dense_qp_dual(x, y, c, gamma):
    """Solve the C-SVM dual with a generic constrained optimizer.

    Returns (alpha, objective, bias) where objective is the maximized dual
    value sum(a) - 1/2 a'Qa.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = len(y)
    sq = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=2)
    k = np.exp(-gamma * sq)
    q = np.outer(y, y) * k

    def neg_obj(a):
        return 0.5 * a @ q @ a - a.sum()

    def jac(a):
        return q @ a - 1.0

    res = minimize(
        neg_obj,
        x0=np.full(n, min(c, 1.0) / 2),
        jac=jac,
        bounds=[(0.0, c)] * n,
        constraints=[{"type": "eq", "fun": lambda a: a @ y, "jac": lambda a: y}],
        method="SLSQP",
        options={"maxiter": 1000, "ftol": 1e-14},
    )
    alpha = np.clip(res.x, 0.0, c)
    # re-project onto the equality constraint (SLSQP satisfies it to ~1e-12)
    obj = alpha.sum() - 0.5 * alpha @ q @ alpha
    bias = qp_bias(alpha, x, y, c, gamma)
    return alpha, obj, bias


def qp_bias(alpha, x, y, c, gamma):
    sq = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=2)
    k = np.exp(-gamma * sq)
    f_nob = (alpha * y) @ k
    free = (alpha > 1e-6 * c) & (alpha < c * (1 - 1e-6))
    if free.any():
        return float(np.mean(y[free] - f_nob[free]))
    return float(np.median(y - f_nob))


def qp_decision(alpha, bias, x, y, gamma, probe):
    probe = np.atleast_2d(np.asarray(probe, dtype=np.float64))
    sq = np.sum((np.asarray(x)[:, None, :] - probe[None, :, :]) ** 2, axis=2)
    k = np.exp(-gamma * sq)
    return (alpha * y) @ k + bias


# ---------------------------------------------------------------------------
# Exact-color connected components (4- or 8-connectivity)

def color_components(pixels, connectivity=8):
    """Label connected regions of exactly equal color by flood fill."""
    h, w = pixels.shape[:2]
    labels = np.full((h, w), -1, dtype=np.int32)
    if connectivity == 8:
        neigh = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    else:
        neigh = [(-1, 0), (0, -1), (0, 1), (1, 0)]
    next_id = 0
    for sy in range(h):
        for sx in range(w):
            if labels[sy, sx] != -1:
                continue
            color = tuple(pixels[sy, sx])
            stack = [(sy, sx)]
            labels[sy, sx] = next_id
            while stack:
                y, x = stack.pop()
                for dy, dx in neigh:
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and labels[ny, nx] == -1 \
                            and tuple(pixels[ny, nx]) == color:
                        labels[ny, nx] = next_id
                        stack.append((ny, nx))
            next_id += 1
    return labels, next_id


# ---------------------------------------------------------------------------
# Brute-force metric evaluators

def pixel_agreement_pct(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    hits = sum(1 for p, q in zip(a.ravel(), b.ravel()) if p == q)
    return 100.0 * hits / a.size


def border_pixels(labels):
    """Crisp internal border: any 4-neighbor differs."""
    labels = np.asarray(labels)
    h, w = labels.shape
    out = set()
    for y in range(h):
        for x in range(w):
            for dy, dx in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                ny, nx = y + dy, x + dx
                if 0 <= ny < h and 0 <= nx < w and labels[ny, nx] != labels[y, x]:
                    out.add((y, x))
                    break
    return out


def fuzzy_membership(border, shape, radius):
    """membership(p) = max(0, 1 - d(p, border)/(radius+1)), Euclidean d."""
    h, w = shape
    out = np.zeros((h, w))
    if not border:
        return out
    pts = np.array(sorted(border), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            d = np.sqrt(((pts - (y, x)) ** 2).sum(axis=1)).min()
            out[y, x] = max(0.0, 1.0 - d / (radius + 1))
    return out


def boundary_accuracy_bruteforce(result, gt, radius):
    bg = fuzzy_membership(border_pixels(gt), np.asarray(gt).shape, radius)
    bm = fuzzy_membership(border_pixels(result), np.asarray(result).shape, radius)
    num = np.minimum(bg, bm).sum()
    den = np.maximum(bg, bm).sum()
    return 100.0 if den == 0 else 100.0 * num / den


def dice_bruteforce(result, gt):
    result = np.asarray(result)
    gt = np.asarray(gt)
    classes = range(1, max(result.max(), gt.max()) + 1)
    scores = []
    for c in classes:
        r = {i for i, v in enumerate(result.ravel()) if v == c}
        g = {i for i, v in enumerate(gt.ravel()) if v == c}
        if not r and not g:
            scores.append(100.0)
        else:
            scores.append(100.0 * 2 * len(r & g) / (len(r) + len(g)))
    return float(np.mean(scores))


def disc_pixels(cx, cy, radius, width, height):
    """All in-bounds pixels within Euclidean distance radius of (cx, cy)."""
    out = set()
    for y in range(height):
        for x in range(width):
            if (x - cx) ** 2 + (y - cy) ** 2 <= radius * radius:
                out.add((x, y))
    return out
