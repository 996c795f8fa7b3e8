"""Independent oracles the tests check the real implementations against.

Nothing in here may import algorithm internals from the package: each
oracle is a deliberately-simple second implementation (winding number,
linear scan, brute-force sort) kept separate from the code paths it
verifies.
"""

from __future__ import annotations

import math
import random

import numpy as np

Ring = list[tuple[float, float]]   # closed: first == last


# --- point in polygon: winding number ----------------------------------------

def _is_left(px, py, x0, y0, x1, y1):
    return (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0)


def winding_number(ring: Ring, px: float, py: float) -> int:
    wn = 0
    for (x0, y0), (x1, y1) in zip(ring, ring[1:]):
        if y0 <= py:
            if y1 > py and _is_left(px, py, x0, y0, x1, y1) > 0:
                wn += 1
        elif y1 <= py and _is_left(px, py, x0, y0, x1, y1) < 0:
            wn -= 1
    return wn


def winding_contains(exterior: Ring, holes: list[Ring], px: float, py: float) -> bool:
    """Inside the exterior and inside no hole, by winding number."""
    if winding_number(exterior, px, py) == 0:
        return False
    return all(winding_number(h, px, py) == 0 for h in holes)


# --- vectorized even-odd test for Monte Carlo sampling ------------------------

def contains_mask(ring: Ring, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Crossing-count containment for many points at once."""
    inside = np.zeros(px.shape, dtype=bool)
    for (x0, y0), (x1, y1) in zip(ring, ring[1:]):
        crosses = (y0 > py) != (y1 > py)
        if not crosses.any():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            x_cross = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
        inside ^= crosses & (px < x_cross)
    return inside


# --- random simple polygons ---------------------------------------------------

def star_polygon(rng: random.Random, cx: float, cy: float,
                 n: int, r_max: float) -> Ring:
    """Simple (star-shaped) polygon: sorted angles, random radii, CCW.

    Simplicity holds only when the anchor is interior, i.e. the vertex
    angles wind the whole circle; draws are retried until every circular
    gap stays below pi.
    """
    while True:
        angles = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(n))
        gaps = [b - a for a, b in zip(angles, angles[1:])]
        gaps.append(angles[0] + 2.0 * math.pi - angles[-1])
        if max(gaps) < math.pi - 0.05:
            break
    ring = [(cx + r * math.cos(a), cy + r * math.sin(a))
            for a, r in ((a, rng.uniform(0.15 * r_max, r_max)) for a in angles)]
    ring.append(ring[0])
    return ring


# --- spatial index: linear scan -----------------------------------------------

def scan_bbox(entries: list[tuple[str, tuple[float, float, float, float]]],
              window: tuple[float, float, float, float]) -> list[str]:
    wx0, wy0, wx1, wy1 = window
    hits = []
    for fid, (x0, y0, x1, y1) in entries:
        if not (x1 < wx0 or wx1 < x0 or y1 < wy0 or wy1 < y0):
            hits.append(fid)
    return sorted(hits)


# --- choropleth: brute-force nearest-rank classification ----------------------

def classify(values: dict[str, float | None], k: int):
    """Reference classification.

    Returns (breaks, classes, method, insufficient) following the stated
    rule: nearest-rank quantile breaks over the nonzero multiset; fall
    back to equal intervals when fewer than k distinct nonzero values
    exist or duplicates collapse the breaks; a single distinct value
    widens the interval to [0, max].
    """
    nonzero = sorted(v for v in values.values() if v)
    n = len(nonzero)
    breaks = None
    method, insufficient = "quantile", False
    if len(set(nonzero)) >= k:
        candidate = [nonzero[math.ceil(i * n / k) - 1] for i in range(1, k)]
        if all(a < b for a, b in zip(candidate, candidate[1:])):
            breaks = candidate
    if breaks is None:
        method, insufficient = "equal_interval", True
        if not nonzero:
            breaks = []
        else:
            lo, hi = nonzero[0], nonzero[-1]
            if lo == hi:
                lo = 0.0
            breaks = [lo + i * (hi - lo) / k for i in range(1, k)]
    classes = {}
    for did, v in values.items():
        value = v or 0.0
        cls = 0
        for b in breaks:
            if b <= value:
                cls += 1
        classes[did] = cls
    return breaks, classes, method, insufficient
