"""Immutable STR-packed R-tree over feature bounding boxes.

The district set is loaded once at startup and never mutated, so the tree
is bulk-loaded with Sort-Tile-Recursive packing: deterministic for a given
input (ties broken by feature_id), uniform leaf depth, no rebalancing
machinery.  Reads are lock-free; the structure never changes after build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import DuplicateEntryId
from .geometry import (
    BBox,
    Coordinate,
    Geometry,
    bbox_contains,
    bbox_intersects,
    bbox_union,
    contains_point,
)

DEFAULT_NODE_CAPACITY = 8


@dataclass(frozen=True)
class IndexEntry:
    feature_id: str
    bbox: BBox


class _Node:
    __slots__ = ("bbox", "children", "entries", "min_id")

    def __init__(self, bbox: BBox, children=None, entries=None, min_id=""):
        self.bbox = bbox
        self.children: list[_Node] | None = children
        self.entries: list[IndexEntry] | None = entries
        self.min_id = min_id

    @property
    def is_leaf(self) -> bool:
        return self.entries is not None


def _center(b: BBox) -> tuple[float, float]:
    return ((b.min_lon + b.max_lon) / 2.0, (b.min_lat + b.max_lat) / 2.0)


def _union_all(boxes: list[BBox]) -> BBox:
    result = boxes[0]
    for b in boxes[1:]:
        result = bbox_union(result, b)
    return result


def _pack_level(nodes: list[_Node], capacity: int) -> list[_Node]:
    # One STR pass: sort by x-center into ceil(sqrt(P)) vertical slices,
    # then by y-center within each slice, chunking runs of `capacity`.
    leaf_count = math.ceil(len(nodes) / capacity)
    slice_count = math.ceil(math.sqrt(leaf_count))
    slice_size = slice_count * capacity
    nodes = sorted(nodes, key=lambda n: (_center(n.bbox)[0], n.min_id))
    parents: list[_Node] = []
    for s in range(0, len(nodes), slice_size):
        column = sorted(nodes[s:s + slice_size],
                        key=lambda n: (_center(n.bbox)[1], n.min_id))
        for c in range(0, len(column), capacity):
            group = column[c:c + capacity]
            parents.append(_Node(
                bbox=_union_all([n.bbox for n in group]),
                children=group,
                min_id=min(n.min_id for n in group)))
    return parents


class SpatialIndex:
    """Static R-tree; use :func:`build` to construct one."""

    def __init__(self, root: _Node | None, count: int, node_capacity: int):
        self._root = root
        self._count = count
        self.node_capacity = node_capacity

    def __len__(self) -> int:
        return self._count

    def query_bbox(self, window: BBox) -> list[str]:
        """Ids of entries whose bbox intersects the window (closed boundary),
        sorted by feature_id."""
        hits: list[str] = []
        if self._root is not None:
            _collect_bbox(self._root, window, hits)
        hits.sort()
        return hits

    def query_point(self, p: Coordinate,
                    resolve: Callable[[str], Geometry]) -> list[str]:
        """Ids whose geometry contains the point, sorted by feature_id.

        Bbox candidates from the tree are confirmed with the exact
        containment test on the geometry returned by ``resolve``.
        """
        candidates: list[str] = []
        if self._root is not None:
            _collect_point(self._root, p, candidates)
        candidates.sort()
        return [fid for fid in candidates if contains_point(resolve(fid), p)]

    def structure(self):
        """Nested tuples describing the packed tree; stable across runs."""
        def describe(node: _Node):
            box = (node.bbox.min_lon, node.bbox.min_lat,
                   node.bbox.max_lon, node.bbox.max_lat)
            if node.is_leaf:
                return ("leaf", box, tuple(e.feature_id for e in node.entries))
            return ("node", box, tuple(describe(c) for c in node.children))
        return None if self._root is None else describe(self._root)


def _collect_bbox(node: _Node, window: BBox, hits: list[str]) -> None:
    if not bbox_intersects(node.bbox, window):
        return
    if node.is_leaf:
        hits.extend(e.feature_id for e in node.entries
                    if bbox_intersects(e.bbox, window))
    else:
        for child in node.children:
            _collect_bbox(child, window, hits)


def _collect_point(node: _Node, p: Coordinate, hits: list[str]) -> None:
    if not bbox_contains(node.bbox, p):
        return
    if node.is_leaf:
        hits.extend(e.feature_id for e in node.entries
                    if bbox_contains(e.bbox, p))
    else:
        for child in node.children:
            _collect_point(child, p, hits)


def build(entries: Iterable[IndexEntry],
          node_capacity: int = DEFAULT_NODE_CAPACITY) -> SpatialIndex:
    """STR bulk load.  Empty input builds a valid empty index."""
    if node_capacity < 2:
        raise ValueError(f"node_capacity must be >= 2, got {node_capacity}")
    entries = list(entries)
    seen: set[str] = set()
    for e in entries:
        if e.feature_id in seen:
            raise DuplicateEntryId(f"duplicate entry id {e.feature_id!r}")
        seen.add(e.feature_id)
    if not entries:
        return SpatialIndex(None, 0, node_capacity)

    leaf_count = math.ceil(len(entries) / node_capacity)
    slice_count = math.ceil(math.sqrt(leaf_count))
    slice_size = slice_count * node_capacity
    ordered = sorted(entries,
                     key=lambda e: (_center(e.bbox)[0], e.feature_id))
    leaves: list[_Node] = []
    for s in range(0, len(ordered), slice_size):
        column = sorted(ordered[s:s + slice_size],
                        key=lambda e: (_center(e.bbox)[1], e.feature_id))
        for c in range(0, len(column), node_capacity):
            group = column[c:c + node_capacity]
            leaves.append(_Node(
                bbox=_union_all([e.bbox for e in group]),
                entries=group,
                min_id=min(e.feature_id for e in group)))

    level = leaves
    while len(level) > 1:
        level = _pack_level(level, node_capacity)
    return SpatialIndex(level[0], len(entries), node_capacity)
