"""Bounding-box suppression: greedy, inverted, soft (linear/Gaussian), weighted.

All five algorithms operate on one image's detection list and are pure
functions: per-image calls are independent and may run in parallel.

Ordering and tie-breaking (the determinism contract):

* Rank order is descending score; equal scores rank the detection with the
  smaller ``input_index`` higher.
* Greedy, soft and weighted traversals pick the highest-ranked remaining
  detection. Inverted traversal walks the same ranking from the bottom up
  and deletes a detection as soon as any higher-ranked one (deleted or not)
  overlaps it at IoU >= the threshold.
* Results are sorted by final score descending, ties by ascending
  ``input_index``.

The O(n^2) IoU loops run in a compiled extension when available; pass
``backend="python"`` to force the pure numpy fallback (see
:mod:`nmskit.backends`).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .backends import get_backend
from .geometry import BoundingBox

__all__ = [
    "Method",
    "Detection",
    "SuppressionConfig",
    "SuppressionResult",
    "greedy_nms",
    "inverted_nms",
    "soft_nms",
    "weighted_nms",
    "suppress",
]


class Method(Enum):
    """Suppression algorithm selector (declaration order is the report order)."""

    GREEDY = "greedy"
    INVERTED = "inverted"
    SOFT_LINEAR = "soft-linear"
    SOFT_GAUSSIAN = "soft-gaussian"
    WEIGHTED = "weighted"

    @classmethod
    def from_name(cls, name: str) -> "Method":
        for m in cls:
            if m.value == name:
                return m
        raise ValueError(f"unknown method {name!r}; expected one of "
                         f"{', '.join(m.value for m in cls)}")


#: Best thresholds per method family: 0.3 for the soft variants, 0.6 otherwise.
def default_threshold(method: Method) -> float:
    if method in (Method.SOFT_LINEAR, Method.SOFT_GAUSSIAN):
        return 0.3
    return 0.6


@dataclass(frozen=True)
class Detection:
    """One predicted box with its confidence and position in the input list."""

    box: BoundingBox
    score: float
    input_index: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "score", float(self.score))
        object.__setattr__(self, "input_index", int(self.input_index))
        if not math.isfinite(self.score):
            raise ValueError(f"detection score must be finite, got {self.score!r}")
        if not 0.0 <= self.score <= 1.0:
            warnings.warn(
                f"detection score {self.score} outside [0, 1]", stacklevel=2
            )


@dataclass(frozen=True)
class SuppressionConfig:
    """Method plus thresholds.

    ``nms_threshold`` of None resolves to the method's default (0.3 for soft
    variants, 0.6 otherwise). ``sigma`` is the Gaussian soft-NMS width and
    ``score_floor`` the post-rescoring discard threshold; both are ignored by
    the non-soft methods.
    """

    method: Method
    nms_threshold: float | None = None
    sigma: float = 0.5
    score_floor: float = 0.001

    def __post_init__(self) -> None:
        nt = self.nms_threshold
        if nt is None:
            nt = default_threshold(self.method)
        nt = float(nt)
        if not 0.0 < nt < 1.0:
            raise ValueError(f"nms_threshold must be in (0, 1), got {nt}")
        object.__setattr__(self, "nms_threshold", nt)
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.score_floor < 0.0:
            raise ValueError(f"score_floor must be >= 0, got {self.score_floor}")


@dataclass(frozen=True)
class SuppressionResult:
    """Kept detections (score descending, ties by input_index) and the delete count."""

    kept: tuple[Detection, ...]
    deleted_count: int


def _check_input(dets: list[Detection]) -> None:
    seen: set[int] = set()
    for d in dets:
        if d.input_index in seen:
            raise ValueError(f"duplicate input_index {d.input_index}")
        seen.add(d.input_index)


def _as_arrays(dets: list[Detection]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    boxes = np.array(
        [(d.box.x1, d.box.y1, d.box.x2, d.box.y2) for d in dets], dtype=np.float64
    ).reshape(len(dets), 4)
    scores = np.array([d.score for d in dets], dtype=np.float64)
    idx = np.array([d.input_index for d in dets], dtype=np.int64)
    return boxes, scores, idx


def _descending_order(scores: np.ndarray, idx: np.ndarray) -> np.ndarray:
    # lexsort: last key is primary. Score descending, ties by ascending index.
    return np.lexsort((idx, -scores))


def _require(cfg: SuppressionConfig, *methods: Method) -> None:
    if cfg.method not in methods:
        expected = " or ".join(m.value for m in methods)
        raise ValueError(f"config method is {cfg.method.value!r}, expected {expected}")


def _empty() -> SuppressionResult:
    return SuppressionResult(kept=(), deleted_count=0)


def greedy_nms(
    dets: list[Detection], cfg: SuppressionConfig, *, backend: str | None = None
) -> SuppressionResult:
    """Classic suppression: repeatedly keep the top-ranked remaining detection
    and delete every remaining one overlapping it at IoU >= the threshold."""
    _require(cfg, Method.GREEDY)
    _check_input(dets)
    if not dets:
        return _empty()
    kern = get_backend(backend)
    boxes, scores, idx = _as_arrays(dets)
    order = _descending_order(scores, idx)
    keep = kern.greedy_keep(boxes[order], cfg.nms_threshold)
    kept = tuple(dets[order[p]] for p in np.flatnonzero(keep))
    return SuppressionResult(kept=kept, deleted_count=len(dets) - len(kept))


def inverted_nms(
    dets: list[Detection], cfg: SuppressionConfig, *, backend: str | None = None
) -> SuppressionResult:
    """Ascending-order suppression.

    Walking the ranking from the lowest score up, a detection is deleted iff
    any higher-ranked detection (including ones that are themselves deleted)
    overlaps it at IoU >= the threshold. Scores and coordinates are never
    modified.
    """
    _require(cfg, Method.INVERTED)
    _check_input(dets)
    if not dets:
        return _empty()
    kern = get_backend(backend)
    boxes, scores, idx = _as_arrays(dets)
    # Ascending rank: score ascending, equal scores place the larger
    # input_index first so the earlier-input detection sits higher.
    order = np.lexsort((-idx, scores))
    keep = kern.inverted_keep(boxes[order], cfg.nms_threshold)
    # Reversing the ascending walk yields the result order directly.
    kept = tuple(dets[order[p]] for p in np.flatnonzero(keep)[::-1])
    return SuppressionResult(kept=kept, deleted_count=len(dets) - len(kept))


def soft_nms(
    dets: list[Detection], cfg: SuppressionConfig, *, backend: str | None = None
) -> SuppressionResult:
    """Greedy traversal that decays overlapping scores instead of deleting.

    Linear: s_j *= (1 - iou) when iou >= the threshold. Gaussian:
    s_j *= exp(-iou^2 / sigma), ungated. Detections whose final score falls
    below ``score_floor`` are discarded after the traversal; kept detections
    retain their rescored values.
    """
    _require(cfg, Method.SOFT_LINEAR, Method.SOFT_GAUSSIAN)
    _check_input(dets)
    if not dets:
        return _empty()
    kern = get_backend(backend)
    boxes, scores, idx = _as_arrays(dets)
    final = kern.soft_rescores(
        boxes,
        scores,
        idx,
        cfg.nms_threshold,
        cfg.sigma,
        cfg.method is Method.SOFT_LINEAR,
    )
    kept = [
        replace(dets[r], score=float(final[r]))
        for r in np.flatnonzero(final >= cfg.score_floor)
    ]
    kept.sort(key=lambda d: (-d.score, d.input_index))
    return SuppressionResult(kept=tuple(kept), deleted_count=len(dets) - len(kept))


def weighted_nms(
    dets: list[Detection], cfg: SuppressionConfig, *, backend: str | None = None
) -> SuppressionResult:
    """Greedy traversal that merges each pick with its overlap cluster.

    The pick M absorbs the remaining detections with iou(M, .) >= the
    threshold; its coordinates become the weighted mean of the cluster with
    weights s_j * iou(M, b_j) (M itself weighs s_M), its score stays s_M.
    """
    _require(cfg, Method.WEIGHTED)
    _check_input(dets)
    if not dets:
        return _empty()
    kern = get_backend(backend)
    boxes, scores, idx = _as_arrays(dets)
    order = _descending_order(scores, idx)
    keep, merged = kern.weighted_merge(boxes[order], scores[order], cfg.nms_threshold)
    kept = []
    for p in np.flatnonzero(keep):
        src = dets[order[p]]
        x1, y1, x2, y2 = (float(v) for v in merged[p])
        kept.append(Detection(BoundingBox(x1, y1, x2, y2), src.score, src.input_index))
    return SuppressionResult(kept=tuple(kept), deleted_count=len(dets) - len(kept))


_DISPATCH = {
    Method.GREEDY: greedy_nms,
    Method.INVERTED: inverted_nms,
    Method.SOFT_LINEAR: soft_nms,
    Method.SOFT_GAUSSIAN: soft_nms,
    Method.WEIGHTED: weighted_nms,
}


def suppress(
    dets: list[Detection], cfg: SuppressionConfig, *, backend: str | None = None
) -> SuppressionResult:
    """Run the suppression algorithm selected by ``cfg.method``."""
    return _DISPATCH[cfg.method](dets, cfg, backend=backend)
