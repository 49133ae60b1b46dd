# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled suppression kernels.

Same contract as nmskit._pykernels; see that module for the semantics.
IoU uses the exact operation order of nmskit.geometry.iou so both backends
make bit-identical keep/delete decisions.
"""

from libc.math cimport exp

import numpy as np

BACKEND_NAME = "compiled"


cdef inline double dmin(double a, double b) noexcept nogil:
    return a if a <= b else b


cdef inline double dmax(double a, double b) noexcept nogil:
    return a if a >= b else b


cdef inline double pair_iou(
    const double[:, ::1] b, const double[::1] areas, Py_ssize_t i, Py_ssize_t j
) noexcept nogil:
    cdef double iw = dmin(b[i, 2], b[j, 2]) - dmax(b[i, 0], b[j, 0])
    if iw <= 0.0:
        return 0.0
    cdef double ih = dmin(b[i, 3], b[j, 3]) - dmax(b[i, 1], b[j, 1])
    if ih <= 0.0:
        return 0.0
    cdef double inter = iw * ih
    return inter / (areas[i] + areas[j] - inter)


def _prep(boxes_obj):
    boxes = np.ascontiguousarray(boxes_obj, dtype=np.float64)
    areas = (boxes[:, 2] - boxes[:, 0]) * (boxes[:, 3] - boxes[:, 1])
    return boxes, np.ascontiguousarray(areas)


def greedy_keep(boxes_obj, double nt):
    """Keep mask for greedy suppression over boxes sorted by descending rank."""
    boxes, areas_arr = _prep(boxes_obj)
    cdef const double[:, ::1] b = boxes
    cdef const double[::1] areas = areas_arr
    cdef Py_ssize_t n = b.shape[0]
    keep_arr = np.zeros(n, dtype=bool)
    supp_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] keep = keep_arr.view(np.uint8)
    cdef unsigned char[::1] supp = supp_arr
    cdef Py_ssize_t i, j
    for i in range(n):
        if supp[i]:
            continue
        keep[i] = 1
        for j in range(i + 1, n):
            if supp[j]:
                continue
            if pair_iou(b, areas, i, j) >= nt:
                supp[j] = 1
    return keep_arr


def inverted_keep(boxes_obj, double nt):
    """Keep mask for inverted-order suppression over boxes sorted ascending.

    Row i survives iff no later row (deleted rows included) overlaps it at
    IoU >= nt.
    """
    boxes, areas_arr = _prep(boxes_obj)
    cdef const double[:, ::1] b = boxes
    cdef const double[::1] areas = areas_arr
    cdef Py_ssize_t n = b.shape[0]
    keep_arr = np.ones(n, dtype=bool)
    cdef unsigned char[::1] keep = keep_arr.view(np.uint8)
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(i + 1, n):
            if pair_iou(b, areas, i, j) >= nt:
                keep[i] = 0
                break
    return keep_arr


def soft_rescores(boxes_obj, scores_obj, tie_obj, double nt, double sigma, bint linear):
    """Final soft-NMS scores aligned with the input rows.

    Picks the highest current score (ties: smallest tie value), then decays
    the remaining rows: linear multiplies by (1 - iou) when iou >= nt;
    Gaussian multiplies by exp(-iou^2 / sigma) with no gate.
    """
    boxes = np.array(boxes_obj, dtype=np.float64, order="C", copy=True)
    areas_arr = np.ascontiguousarray((boxes[:, 2] - boxes[:, 0]) * (boxes[:, 3] - boxes[:, 1]))
    scores = np.array(scores_obj, dtype=np.float64, copy=True)
    tie = np.array(tie_obj, dtype=np.int64, copy=True)
    cdef Py_ssize_t n = boxes.shape[0]
    rows_arr = np.arange(n, dtype=np.int64)
    cdef double[:, ::1] b = boxes
    cdef double[::1] areas = areas_arr
    cdef double[::1] s = scores
    cdef long long[::1] t = tie
    cdef long long[::1] rows = rows_arr
    cdef Py_ssize_t i, j, k, m
    cdef double v, tmp
    cdef long long ltmp
    for i in range(n):
        m = i
        for k in range(i + 1, n):
            if s[k] > s[m] or (s[k] == s[m] and t[k] < t[m]):
                m = k
        if m != i:
            for k in range(4):
                tmp = b[i, k]; b[i, k] = b[m, k]; b[m, k] = tmp
            tmp = s[i]; s[i] = s[m]; s[m] = tmp
            tmp = areas[i]; areas[i] = areas[m]; areas[m] = tmp
            ltmp = t[i]; t[i] = t[m]; t[m] = ltmp
            ltmp = rows[i]; rows[i] = rows[m]; rows[m] = ltmp
        for j in range(i + 1, n):
            v = pair_iou(b, areas, i, j)
            if linear:
                if v >= nt:
                    s[j] *= 1.0 - v
            elif v > 0.0:
                s[j] *= exp(-(v * v) / sigma)
    out = np.empty(n, dtype=np.float64)
    out[rows_arr] = scores
    return out


def weighted_merge(boxes_obj, scores_obj, double nt):
    """Keep mask and merged coordinates for weighted suppression.

    Boxes arrive sorted by descending rank. Each pick absorbs the remaining
    boxes overlapping it at IoU >= nt; its coordinates become the weighted
    mean of the cluster with weights s_j * iou(pick, b_j) (self weight s_pick).
    """
    boxes, areas_arr = _prep(boxes_obj)
    merged_arr = boxes.copy()
    scores = np.ascontiguousarray(scores_obj, dtype=np.float64)
    cdef const double[:, ::1] b = boxes
    cdef const double[::1] areas = areas_arr
    cdef const double[::1] s = scores
    cdef double[:, ::1] merged = merged_arr
    cdef Py_ssize_t n = b.shape[0]
    keep_arr = np.zeros(n, dtype=bool)
    supp_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] keep = keep_arr.view(np.uint8)
    cdef unsigned char[::1] supp = supp_arr
    cdef Py_ssize_t i, j, k
    cdef double v, w, wsum
    cdef double acc[4]
    cdef bint any_cluster
    for i in range(n):
        if supp[i]:
            continue
        keep[i] = 1
        wsum = s[i]
        for k in range(4):
            acc[k] = s[i] * b[i, k]
        any_cluster = False
        for j in range(i + 1, n):
            if supp[j]:
                continue
            v = pair_iou(b, areas, i, j)
            if v >= nt:
                supp[j] = 1
                any_cluster = True
                w = s[j] * v
                wsum += w
                for k in range(4):
                    acc[k] += w * b[j, k]
        if any_cluster and wsum > 0.0:
            for k in range(4):
                merged[i, k] = acc[k] / wsum
    return keep_arr, merged_arr
