"""Exact axis-aligned rectangle arithmetic: areas, intersections, IoU.

Coordinates are continuous reals in corner form (x1, y1) = top-left,
(x2, y2) = bottom-right; there is no pixel-inclusive "+1" convention.
All operations are pure functions on immutable values and are safe to
call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["BoundingBox", "area", "intersection_area", "iou"]


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned rectangle. Zero-area boxes are allowed, inverted corners are not."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        for name in ("x1", "y1", "x2", "y2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"BoundingBox.{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.x2 < self.x1 or self.y2 < self.y1:
            raise ValueError(
                f"inverted corners: ({self.x1}, {self.y1}, {self.x2}, {self.y2})"
            )

    @property
    def width(self) -> float:
        return self.x2 - self.x1

    @property
    def height(self) -> float:
        return self.y2 - self.y1


def area(b: BoundingBox) -> float:
    """Area in square pixels; zero for degenerate boxes."""
    return (b.x2 - b.x1) * (b.y2 - b.y1)


def intersection_area(b1: BoundingBox, b2: BoundingBox) -> float:
    """Overlap area of two boxes, clamped to zero when they are disjoint."""
    iw = min(b1.x2, b2.x2) - max(b1.x1, b2.x1)
    ih = min(b1.y2, b2.y2) - max(b1.y1, b2.y1)
    if iw <= 0.0 or ih <= 0.0:
        return 0.0
    return iw * ih


def iou(b1: BoundingBox, b2: BoundingBox) -> float:
    """Intersection over union in [0, 1].

    Two degenerate (zero-area) boxes have IoU 0 by definition; a zero-area
    box matches nothing, and this avoids 0/0.
    """
    inter = intersection_area(b1, b2)
    if inter <= 0.0:
        return 0.0
    union = area(b1) + area(b2) - inter
    return inter / union
