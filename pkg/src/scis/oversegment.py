"""Superpixel over-segmentation: graph-based merging and SLIC clustering.

Both algorithms produce a :class:`SuperpixelMap` whose ids are dense and
assigned in row-major first-occurrence order, so identical inputs always
yield identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.ndimage import gaussian_filter

from .raster import DimensionMismatchError, LabelMap, RasterImage, check_same_shape

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is expected in the env
    njit = None


@dataclass(frozen=True)
class FhParams:
    """Graph-merge parameters: threshold constant, minimum region size, smoothing."""

    k: float = 24.0
    min_size: int = 20
    smoothing_sigma: float = 0.8

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("k must be positive")
        if self.min_size < 1:
            raise ValueError("min_size must be >= 1")
        if self.smoothing_sigma < 0:
            raise ValueError("smoothing_sigma must be >= 0")


@dataclass(frozen=True)
class SlicParams:
    avg_size: int = 100
    compactness: float = 10.0
    iterations: int = 10

    def __post_init__(self):
        if self.avg_size < 1:
            raise ValueError("avg_size must be >= 1")
        if self.compactness <= 0:
            raise ValueError("compactness must be positive")


@dataclass(frozen=True)
class SuperpixelMap:
    """A partition of the image into connected superpixels.

    ``assignment`` has shape (height, width) with values in [0, num_superpixels);
    every id occurs at least once.
    """

    assignment: np.ndarray
    num_superpixels: int

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int32)
        if a.ndim != 2:
            raise ValueError("assignment must be 2-D")
        object.__setattr__(self, "assignment", a)
        a.setflags(write=False)

    @property
    def width(self) -> int:
        return self.assignment.shape[1]

    @property
    def height(self) -> int:
        return self.assignment.shape[0]

    @cached_property
    def pixel_lists(self) -> list:
        """Flat pixel indices of each superpixel, indexed by superpixel id."""
        flat = self.assignment.ravel()
        order = np.argsort(flat, kind="stable")
        counts = np.bincount(flat, minlength=self.num_superpixels)
        return np.split(order, np.cumsum(counts)[:-1])

    def boundary_mask(self) -> np.ndarray:
        """Boolean mask of pixels whose right or bottom neighbor differs."""
        a = self.assignment
        mask = np.zeros(a.shape, dtype=bool)
        mask[:, :-1] |= a[:, :-1] != a[:, 1:]
        mask[:-1, :] |= a[:-1, :] != a[1:, :]
        return mask


def _dense_relabel(flat_ids: np.ndarray, shape) -> SuperpixelMap:
    # Relabel to 0..S-1 in row-major first-occurrence order.
    _, first, inverse = np.unique(flat_ids, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    dense = order[inverse]
    return SuperpixelMap(dense.reshape(shape).astype(np.int32), int(order.size))


# ---------------------------------------------------------------------------
# Felzenszwalb-style graph merging

def _merge_edges_py(parent, rank, size, thresh, ea, eb, w, k, min_size):
    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(a, b):
        # union by rank; on equal rank the smaller index stays root
        if rank[a] < rank[b]:
            a, b = b, a
        elif rank[a] == rank[b] and b < a:
            a, b = b, a
        parent[b] = a
        if rank[a] == rank[b]:
            rank[a] += 1
        size[a] += size[b]
        return a

    for i in range(len(w)):
        a = find(ea[i])
        b = find(eb[i])
        if a == b:
            continue
        wi = w[i]
        if wi <= thresh[a] and wi <= thresh[b]:
            r = union(a, b)
            thresh[r] = wi + k / size[r]

    for i in range(len(w)):
        a = find(ea[i])
        b = find(eb[i])
        if a != b and (size[a] < min_size or size[b] < min_size):
            union(a, b)

    roots = np.empty(len(parent), dtype=np.int64)
    for x in range(len(parent)):
        roots[x] = find(x)
    return roots


if njit is not None:
    _merge_edges = njit(cache=True)(_merge_edges_py)
else:  # pragma: no cover
    _merge_edges = _merge_edges_py


def _grid_edges(img: np.ndarray):
    """8-connected edge list with Euclidean RGB weights, sorted by
    (weight, source, target)."""
    h, w = img.shape[:2]
    idx = np.arange(h * w).reshape(h, w)

    pairs = []
    # right, down, down-right, down-left neighbors
    pairs.append((idx[:, :-1], idx[:, 1:]))
    pairs.append((idx[:-1, :], idx[1:, :]))
    pairs.append((idx[:-1, :-1], idx[1:, 1:]))
    pairs.append((idx[:-1, 1:], idx[1:, :-1]))

    ea = np.concatenate([p[0].ravel() for p in pairs])
    eb = np.concatenate([p[1].ravel() for p in pairs])
    flat = img.reshape(-1, 3)
    diff = flat[ea] - flat[eb]
    weights = np.sqrt(np.einsum("ij,ij->i", diff, diff))

    order = np.lexsort((eb, ea, weights))
    return ea[order], eb[order], weights[order]


def felzenszwalb_segment(image: RasterImage, params: FhParams = FhParams()) -> SuperpixelMap:
    """Graph-based region merging on the 8-connected pixel grid.

    Components C1, C2 merge when the connecting edge weight does not exceed
    min(Int(Ci) + k/|Ci|); afterwards components smaller than ``min_size``
    are merged with the neighbor reached by the cheapest connecting edge.
    """
    img = image.pixels.astype(np.float64)
    if params.smoothing_sigma > 0:
        img = gaussian_filter(img, sigma=(params.smoothing_sigma, params.smoothing_sigma, 0))

    ea, eb, w = _grid_edges(img)
    n = image.num_pixels
    parent = np.arange(n, dtype=np.int64)
    rank = np.zeros(n, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    thresh = np.full(n, params.k, dtype=np.float64)

    roots = _merge_edges(parent, rank, size, thresh, ea, eb, w,
                         float(params.k), int(params.min_size))
    return _dense_relabel(roots, (image.height, image.width))


# ---------------------------------------------------------------------------
# SLIC

def slic_segment(image: RasterImage, params: SlicParams = SlicParams()) -> SuperpixelMap:
    """k-means-style clustering in joint (RGB, xy) space on a regular seed grid.

    The joint distance is sqrt(d_color^2 + (compactness/step)^2 * d_xy^2).
    A connectivity pass afterwards reassigns stray fragments so the output
    is a partition into connected superpixels.
    """
    h, w = image.height, image.width
    m = h * w
    if params.avg_size > m:
        raise ValueError(f"avg_size {params.avg_size} exceeds pixel count {m}")

    step = max(1, int(round(math.sqrt(params.avg_size))))
    img = image.pixels.astype(np.float64)
    xs, ys = np.meshgrid(np.arange(w, dtype=np.float64), np.arange(h, dtype=np.float64))

    cy0 = np.arange(step // 2, h, step, dtype=np.float64)
    cx0 = np.arange(step // 2, w, step, dtype=np.float64)
    centers_xy = np.array([(x, y) for y in cy0 for x in cx0])
    centers_rgb = np.array([img[int(y), int(x)] for x, y in centers_xy])
    n_clusters = len(centers_xy)

    spatial_w = (params.compactness / step) ** 2
    for _ in range(params.iterations):
        best = np.full((h, w), np.inf)
        assign = np.zeros((h, w), dtype=np.int32)
        for c in range(n_clusters):
            cx, cy = centers_xy[c]
            x0, x1 = max(0, int(cx) - step), min(w, int(cx) + step + 1)
            y0, y1 = max(0, int(cy) - step), min(h, int(cy) + step + 1)
            dc = img[y0:y1, x0:x1] - centers_rgb[c]
            d2 = np.einsum("ijk,ijk->ij", dc, dc)
            d2 = d2 + spatial_w * ((xs[y0:y1, x0:x1] - cx) ** 2 + (ys[y0:y1, x0:x1] - cy) ** 2)
            win_best = best[y0:y1, x0:x1]
            better = d2 < win_best
            win_best[better] = d2[better]
            assign[y0:y1, x0:x1][better] = c
        flat = assign.ravel()
        counts = np.bincount(flat, minlength=n_clusters).astype(np.float64)
        nonempty = counts > 0
        sum_x = np.bincount(flat, weights=xs.ravel(), minlength=n_clusters)
        sum_y = np.bincount(flat, weights=ys.ravel(), minlength=n_clusters)
        centers_xy[nonempty, 0] = sum_x[nonempty] / counts[nonempty]
        centers_xy[nonempty, 1] = sum_y[nonempty] / counts[nonempty]
        for ch in range(3):
            s = np.bincount(flat, weights=img[:, :, ch].ravel(), minlength=n_clusters)
            centers_rgb[nonempty, ch] = s[nonempty] / counts[nonempty]

    assign = _enforce_connectivity(assign, min_fragment=max(1, params.avg_size // 4))
    return _dense_relabel(assign.ravel(), (h, w))


def _enforce_connectivity(assign: np.ndarray, min_fragment: int) -> np.ndarray:
    """Split disconnected clusters into components; absorb tiny fragments
    into the previously-scanned 4-neighbor component."""
    from scipy.ndimage import label as cc_label

    h, w = assign.shape
    comp = np.full((h, w), -1, dtype=np.int32)
    next_id = 0
    for c in np.unique(assign):
        mask = assign == c
        lab, n = cc_label(mask)  # 4-connectivity by default
        for i in range(1, n + 1):
            comp[lab == i] = next_id
            next_id += 1

    sizes = np.bincount(comp.ravel(), minlength=next_id)
    out = comp.copy()
    # scan row-major; small fragments take the label of the left/up neighbor
    remap = np.arange(next_id, dtype=np.int32)
    for y in range(h):
        for x in range(w):
            c = comp[y, x]
            if sizes[c] >= min_fragment:
                continue
            if x > 0 and sizes[comp[y, x - 1]] >= min_fragment:
                remap[c] = remap[comp[y, x - 1]]
            elif y > 0 and sizes[comp[y - 1, x]] >= min_fragment:
                remap[c] = remap[comp[y - 1, x]]
    # resolve chains (a fragment may point at another remapped fragment)
    while not np.array_equal(remap, remap[remap]):
        remap = remap[remap]
    return remap[out]


# ---------------------------------------------------------------------------
# Over-segmentation quality

def oversegmentation_error(sp: SuperpixelMap, gt: LabelMap) -> float:
    """Percentage of pixels not belonging to their superpixel's majority
    ground-truth class. Majority ties go to the smaller class id."""
    check_same_shape(sp, gt)
    if not gt.is_total:
        raise ValueError("ground truth contains void labels")
    a = sp.assignment.ravel().astype(np.int64)
    g = gt.labels.ravel().astype(np.int64) - 1
    k = gt.num_classes
    counts = np.bincount(a * k + g, minlength=sp.num_superpixels * k)
    counts = counts.reshape(sp.num_superpixels, k)
    majority = counts.max(axis=1)  # argmax ties resolve to the smaller id
    wrong = a.size - int(majority.sum())
    return 100.0 * wrong / a.size
