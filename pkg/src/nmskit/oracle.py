"""Slow, obviously-correct reference suppression plus a seeded scene generator.

Used by the tests and the benchmark harness only. The oracles restate the
suppression procedures as literal loops over :func:`nmskit.geometry.iou`
with no sorting tricks or early exits, so they stay independent of the fast
kernels they are checked against.

Scene determinism contract
--------------------------
``generate_scene`` must produce identical output across runs, platforms and
reimplementations, so it is pinned to a named PRNG and documented draw
sequence rather than any platform default:

* Source of randomness: the Mersenne Twister (MT19937) as exposed by
  ``random.Random(seed)``, consuming ONLY ``random()`` calls (53-bit uniform
  doubles in [0, 1); this is the one stdlib stream with a cross-version
  stability guarantee).
* Gaussian draws use one Box-Muller cosine transform per value:
  ``z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)`` consumes exactly two uniforms.
* Draw order: first, for each cluster, (center_x, center_y, base_size) via
  ``cx = u*W``, ``cy = u*H``, ``base = 8 + u * min(W, H) / 8``. Then per box:
  cluster choice ``min(int(u * n_clusters), n_clusters - 1)``, two Gaussian
  center offsets scaled by ``cluster_spread``, size factor ``0.7 + 0.6 * u``,
  aspect ``0.8 + 0.4 * u``, and score ``low + u * (high - low)``.
* Box k covers ``center +- (base * size_factor) / 2`` (width additionally
  multiplied by the aspect), clipped to the image; clipping may produce
  zero-area boxes, which are valid. ``input_index`` is k.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .geometry import BoundingBox, iou
from .suppression import Detection

__all__ = ["SceneSpec", "generate_scene", "oracle_greedy", "oracle_inverted"]


@dataclass(frozen=True)
class SceneSpec:
    """Parameters for one synthetic clustered scene."""

    seed: int
    n_boxes: int
    n_clusters: int = 5
    cluster_spread: float = 12.0
    image_size: tuple[float, float] = (640.0, 480.0)
    score_range: tuple[float, float] = (0.05, 1.0)

    def __post_init__(self) -> None:
        if self.n_boxes < 0:
            raise ValueError("n_boxes must be >= 0")
        if self.n_clusters < 1:
            raise ValueError("n_clusters must be >= 1")
        if self.cluster_spread < 0:
            raise ValueError("cluster_spread must be >= 0")
        w, h = self.image_size
        if not (w > 0 and h > 0):
            raise ValueError("image dimensions must be positive")
        lo, hi = self.score_range
        if lo > hi:
            raise ValueError("score_range low must be <= high")


def generate_scene(spec: SceneSpec) -> list[Detection]:
    """Deterministic clustered detections; see the module docstring for the
    exact draw sequence."""
    rng = random.Random(spec.seed)
    u = rng.random

    def gauss() -> float:
        return math.sqrt(-2.0 * math.log(1.0 - u())) * math.cos(2.0 * math.pi * u())

    width, height = spec.image_size
    lo, hi = spec.score_range
    clusters = [
        (u() * width, u() * height, 8.0 + u() * min(width, height) / 8.0)
        for _ in range(spec.n_clusters)
    ]
    dets = []
    for k in range(spec.n_boxes):
        cx, cy, base = clusters[min(int(u() * spec.n_clusters), spec.n_clusters - 1)]
        bx = cx + gauss() * spec.cluster_spread
        by = cy + gauss() * spec.cluster_spread
        size = base * (0.7 + 0.6 * u())
        aspect = 0.8 + 0.4 * u()
        half_w = size * aspect / 2.0
        half_h = size / 2.0
        box = BoundingBox(
            min(max(bx - half_w, 0.0), width),
            min(max(by - half_h, 0.0), height),
            min(max(bx + half_w, 0.0), width),
            min(max(by + half_h, 0.0), height),
        )
        dets.append(Detection(box, lo + u() * (hi - lo), input_index=k))
    return dets


def _higher_ranked(a: Detection, b: Detection) -> bool:
    """True if a outranks b: higher score, or equal score and earlier input."""
    return a.score > b.score or (a.score == b.score and a.input_index < b.input_index)


def oracle_inverted(dets: list[Detection], nt: float) -> set[int]:
    """Input indices kept by inverted suppression, by the literal predicate:
    a detection survives iff no higher-ranked detection overlaps it at
    IoU >= nt."""
    kept = set()
    for d in dets:
        deleted = False
        for e in dets:
            if _higher_ranked(e, d) and iou(d.box, e.box) >= nt:
                deleted = True
        if not deleted:
            kept.add(d.input_index)
    return kept


def oracle_greedy(dets: list[Detection], nt: float) -> set[int]:
    """Input indices kept by greedy suppression, by literal list deletion."""
    remaining = list(dets)
    kept = set()
    while remaining:
        best = remaining[0]
        for d in remaining[1:]:
            if _higher_ranked(d, best):
                best = d
        kept.add(best.input_index)
        remaining = [
            d for d in remaining if d is not best and iou(best.box, d.box) < nt
        ]
    return kept
