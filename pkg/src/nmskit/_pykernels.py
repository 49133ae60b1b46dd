"""Pure numpy implementations of the suppression kernels.

Fallback used when the compiled extension (:mod:`nmskit._kernels`) is not
available. Both backends expose the same four functions and evaluate IoU
with the exact operation order of :func:`nmskit.geometry.iou`, so keep/delete
decisions are bit-identical across backends.

All kernels take float64 arrays: ``boxes`` with shape (n, 4) in corner form,
pre-sorted by the caller (descending rank for greedy/weighted, ascending for
inverted; any order for soft, which picks via ``tie``).
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def _row_iou(box: np.ndarray, area: float, boxes: np.ndarray, areas: np.ndarray) -> np.ndarray:
    """IoU of one box against many, mirroring the scalar formula elementwise."""
    iw = np.minimum(box[2], boxes[:, 2]) - np.maximum(box[0], boxes[:, 0])
    ih = np.minimum(box[3], boxes[:, 3]) - np.maximum(box[1], boxes[:, 1])
    inter = np.where((iw > 0.0) & (ih > 0.0), iw * ih, 0.0)
    positive = inter > 0.0
    union = np.where(positive, area + areas - inter, 1.0)
    return np.where(positive, inter / union, 0.0)


def _areas(boxes: np.ndarray) -> np.ndarray:
    return (boxes[:, 2] - boxes[:, 0]) * (boxes[:, 3] - boxes[:, 1])


def greedy_keep(boxes: np.ndarray, nt: float) -> np.ndarray:
    """Keep mask for greedy suppression over boxes sorted by descending rank."""
    n = boxes.shape[0]
    keep = np.zeros(n, dtype=bool)
    areas = _areas(boxes)
    live = np.arange(n)
    while live.size:
        i = live[0]
        keep[i] = True
        rest = live[1:]
        if not rest.size:
            break
        overlaps = _row_iou(boxes[i], areas[i], boxes[rest], areas[rest])
        live = rest[overlaps < nt]
    return keep


def inverted_keep(boxes: np.ndarray, nt: float) -> np.ndarray:
    """Keep mask for inverted-order suppression over boxes sorted ascending.

    Row i survives iff no later row (the full list, deleted rows included)
    overlaps it at IoU >= nt.
    """
    n = boxes.shape[0]
    keep = np.ones(n, dtype=bool)
    areas = _areas(boxes)
    for i in range(n - 1):
        rest = slice(i + 1, n)
        overlaps = _row_iou(boxes[i], areas[i], boxes[rest], areas[rest])
        if np.any(overlaps >= nt):
            keep[i] = False
    return keep


def soft_rescores(
    boxes: np.ndarray,
    scores: np.ndarray,
    tie: np.ndarray,
    nt: float,
    sigma: float,
    linear: bool,
) -> np.ndarray:
    """Final soft-NMS scores, aligned with the input rows.

    Traversal picks the highest current score (ties: smallest ``tie`` value),
    then decays the remaining rows: linear multiplies by (1 - iou) when
    iou >= nt; Gaussian multiplies by exp(-iou^2 / sigma) with no gate.
    """
    n = boxes.shape[0]
    boxes = boxes.copy()
    scores = scores.astype(np.float64, copy=True)
    tie = tie.copy()
    rows = np.arange(n)
    areas = _areas(boxes)
    for i in range(n):
        seg = scores[i:]
        top = np.flatnonzero(seg == seg.max())
        m = i + top[np.argmin(tie[i:][top])]
        if m != i:
            for arr in (scores, tie, rows, areas):
                arr[[i, m]] = arr[[m, i]]
            boxes[[i, m]] = boxes[[m, i]]
        rest = slice(i + 1, n)
        if i + 1 == n:
            break
        overlaps = _row_iou(boxes[i], areas[i], boxes[rest], areas[rest])
        if linear:
            factor = np.where(overlaps >= nt, 1.0 - overlaps, 1.0)
        else:
            factor = np.where(
                overlaps > 0.0, np.exp(-(overlaps * overlaps) / sigma), 1.0
            )
        scores[rest] *= factor
    out = np.empty(n, dtype=np.float64)
    out[rows] = scores
    return out


def weighted_merge(boxes: np.ndarray, scores: np.ndarray, nt: float) -> tuple[np.ndarray, np.ndarray]:
    """Keep mask and merged coordinates for weighted suppression.

    Boxes arrive sorted by descending rank. Each pick absorbs the remaining
    boxes overlapping it at IoU >= nt; its coordinates become the weighted
    mean of the cluster with weights s_j * iou(pick, b_j) (self weight s_pick).
    """
    n = boxes.shape[0]
    keep = np.zeros(n, dtype=bool)
    merged = boxes.copy()
    areas = _areas(boxes)
    live = np.arange(n)
    while live.size:
        i = live[0]
        keep[i] = True
        rest = live[1:]
        if not rest.size:
            break
        overlaps = _row_iou(boxes[i], areas[i], boxes[rest], areas[rest])
        in_cluster = overlaps >= nt
        cluster = rest[in_cluster]
        if cluster.size:
            weights = scores[cluster] * overlaps[in_cluster]
            total = scores[i] + weights.sum()
            if total > 0.0:
                acc = scores[i] * boxes[i] + (weights[:, None] * boxes[cluster]).sum(axis=0)
                merged[i] = acc / total
        live = rest[~in_cluster]
    return keep, merged
