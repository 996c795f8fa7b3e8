"""Planar computational geometry over longitude/latitude polygons.

All predicates run in plain lon/lat space (WGS84 degrees, no projection),
which is adequate at county scale and keeps every operation exactly
testable.  Areas in km^2 use a per-ring equirectangular scale factor and
are documented as approximate.

Everything here is a pure function over immutable values; safe to call
concurrently without synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CoordinateOutOfRange, InvalidRing, ZeroAreaGeometry

# Mean Earth radius (IUGG), used for the equirectangular km^2 conversion.
EARTH_RADIUS_KM = 6371.0088

# Rings with planar area below this (square degrees) are degenerate.
DEGENERATE_RING_AREA = 1e-12

_KM_PER_DEGREE = math.pi * EARTH_RADIUS_KM / 180.0


@dataclass(frozen=True, slots=True)
class Coordinate:
    """A WGS84 position: degrees east, degrees north."""

    lon: float
    lat: float

    def __post_init__(self):
        if not (math.isfinite(self.lon) and math.isfinite(self.lat)):
            raise CoordinateOutOfRange(
                f"coordinate must be finite, got ({self.lon}, {self.lat})",
                value=(self.lon, self.lat))
        if not -180.0 <= self.lon <= 180.0:
            raise CoordinateOutOfRange(
                f"longitude {self.lon} outside [-180, 180]", value=self.lon)
        if not -90.0 <= self.lat <= 90.0:
            raise CoordinateOutOfRange(
                f"latitude {self.lat} outside [-90, 90]", value=self.lat)


@dataclass(frozen=True, slots=True)
class BBox:
    min_lon: float
    min_lat: float
    max_lon: float
    max_lat: float

    def __post_init__(self):
        if self.min_lon > self.max_lon or self.min_lat > self.max_lat:
            raise ValueError(f"inverted bbox {self}")


@dataclass(frozen=True)
class LinearRing:
    """Closed ring of at least 4 positions; first equals last exactly."""

    positions: tuple[Coordinate, ...]
    # Flat coordinate tuples, precomputed once: containment and area tests
    # walk rings in hot loops.
    _lons: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _lats: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(self.positions)
        object.__setattr__(self, "positions", pts)
        if len(pts) < 4:
            raise InvalidRing(f"ring has {len(pts)} positions, need at least 4")
        first, last = pts[0], pts[-1]
        if first.lon != last.lon or first.lat != last.lat:
            raise InvalidRing("ring is not closed (first position != last)")
        for a, b in zip(pts, pts[1:]):
            if a.lon == b.lon and a.lat == b.lat:
                raise InvalidRing(
                    f"consecutive duplicate position ({a.lon}, {a.lat})")
        object.__setattr__(self, "_lons", tuple(p.lon for p in pts))
        object.__setattr__(self, "_lats", tuple(p.lat for p in pts))

    def reversed(self) -> "LinearRing":
        return LinearRing(tuple(reversed(self.positions)))


@dataclass(frozen=True)
class PolygonGeom:
    """One exterior ring plus zero or more holes."""

    exterior: LinearRing
    holes: tuple[LinearRing, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))

    @property
    def rings(self) -> tuple[LinearRing, ...]:
        return (self.exterior,) + self.holes


@dataclass(frozen=True)
class MultiPolygonGeom:
    parts: tuple[PolygonGeom, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise InvalidRing("MultiPolygon must have at least one part")


Geometry = PolygonGeom | MultiPolygonGeom


def _parts(poly: Geometry) -> tuple[PolygonGeom, ...]:
    if isinstance(poly, MultiPolygonGeom):
        return poly.parts
    return (poly,)


def ring_area_signed(ring: LinearRing) -> float:
    """Signed shoelace area in square degrees: positive when CCW."""
    lons, lats = ring._lons, ring._lats
    total = 0.0
    for i in range(len(lons) - 1):
        total += lons[i] * lats[i + 1] - lons[i + 1] * lats[i]
    return total / 2.0


def _ring_scale_km2(ring: LinearRing) -> float:
    # Equirectangular: square degrees -> km^2 at the ring's mean latitude.
    mean_lat = (min(ring._lats) + max(ring._lats)) / 2.0
    return _KM_PER_DEGREE ** 2 * math.cos(math.radians(mean_lat))


def polygon_area_km2(poly: Geometry) -> float:
    """Approximate metric area: exterior minus holes, never negative.

    Assumes normalized winding, so exterior rings contribute positive
    signed area and holes negative.
    """
    total = 0.0
    for part in _parts(poly):
        for ring in part.rings:
            total += ring_area_signed(ring) * _ring_scale_km2(ring)
    return max(total, 0.0)


def centroid(poly: Geometry) -> Coordinate:
    """Area-weighted centroid of the vertex polygon (holes subtract).

    Raises ZeroAreaGeometry when the net planar area is at or below the
    degeneracy threshold.  Accumulation runs in a bbox-centered frame:
    for sliver geometries the naive formula cancels catastrophically and
    can land outside the bbox.
    """
    box = bbox_of(poly)
    x0 = (box.min_lon + box.max_lon) / 2.0
    y0 = (box.min_lat + box.max_lat) / 2.0
    area2 = 0.0   # twice the signed area
    cx = 0.0
    cy = 0.0
    for part in _parts(poly):
        for ring in part.rings:
            lons, lats = ring._lons, ring._lats
            for i in range(len(lons) - 1):
                ax, ay = lons[i] - x0, lats[i] - y0
                bx, by = lons[i + 1] - x0, lats[i + 1] - y0
                cross = ax * by - bx * ay
                area2 += cross
                cx += (ax + bx) * cross
                cy += (ay + by) * cross
    if abs(area2 / 2.0) <= DEGENERATE_RING_AREA:
        raise ZeroAreaGeometry("cannot compute centroid of zero-area geometry")
    return Coordinate(x0 + cx / (3.0 * area2), y0 + cy / (3.0 * area2))


def bbox_of(geom: Geometry | LinearRing | Coordinate) -> BBox:
    """Tight axis-aligned hull of all vertices (holes included)."""
    if isinstance(geom, Coordinate):
        return BBox(geom.lon, geom.lat, geom.lon, geom.lat)
    if isinstance(geom, LinearRing):
        rings = (geom,)
    else:
        rings = tuple(r for part in _parts(geom) for r in part.rings)
    min_lon = min(min(r._lons) for r in rings)
    max_lon = max(max(r._lons) for r in rings)
    min_lat = min(min(r._lats) for r in rings)
    max_lat = max(max(r._lats) for r in rings)
    return BBox(min_lon, min_lat, max_lon, max_lat)


def bbox_union(a: BBox, b: BBox) -> BBox:
    return BBox(min(a.min_lon, b.min_lon), min(a.min_lat, b.min_lat),
                max(a.max_lon, b.max_lon), max(a.max_lat, b.max_lat))


def bbox_contains(b: BBox, p: Coordinate) -> bool:
    """Closed-interval containment: boundary points are inside."""
    return (b.min_lon <= p.lon <= b.max_lon
            and b.min_lat <= p.lat <= b.max_lat)


def bbox_intersects(a: BBox, b: BBox) -> bool:
    """Closed-boundary intersection: boxes touching at an edge intersect."""
    return not (a.max_lon < b.min_lon or b.max_lon < a.min_lon
                or a.max_lat < b.min_lat or b.max_lat < a.min_lat)


def _point_on_ring(ring: LinearRing, lon: float, lat: float) -> bool:
    # Exact arithmetic: on-segment iff collinear and within the segment box.
    lons, lats = ring._lons, ring._lats
    for i in range(len(lons) - 1):
        x1, y1, x2, y2 = lons[i], lats[i], lons[i + 1], lats[i + 1]
        if (x2 - x1) * (lat - y1) - (lon - x1) * (y2 - y1) != 0.0:
            continue
        if (min(x1, x2) <= lon <= max(x1, x2)
                and min(y1, y2) <= lat <= max(y1, y2)):
            return True
    return False


def _ray_cast(ring: LinearRing, lon: float, lat: float) -> bool:
    # Even-odd rule, half-open at vertices so crossings are counted once.
    lons, lats = ring._lons, ring._lats
    inside = False
    for i in range(len(lons) - 1):
        y1, y2 = lats[i], lats[i + 1]
        if (y1 > lat) != (y2 > lat):
            x1, x2 = lons[i], lons[i + 1]
            x_cross = x1 + (lat - y1) * (x2 - x1) / (y2 - y1)
            if lon < x_cross:
                inside = not inside
    return inside


def contains_point(poly: Geometry, p: Coordinate) -> bool:
    """Even-odd containment with boundary-inclusive semantics.

    A point exactly on any ring edge or vertex counts as inside: a map
    click on a shared district border must resolve to at least one
    district, never zero.
    """
    lon, lat = p.lon, p.lat
    for part in _parts(poly):
        for ring in part.rings:
            if _point_on_ring(ring, lon, lat):
                return True
        if not _ray_cast(part.exterior, lon, lat):
            continue
        if any(_ray_cast(hole, lon, lat) for hole in part.holes):
            continue
        return True
    return False


def normalize_winding(poly: Geometry) -> Geometry:
    """Reorient rings so exteriors are CCW and holes CW.  Idempotent."""
    if isinstance(poly, MultiPolygonGeom):
        return MultiPolygonGeom(tuple(normalize_winding(p) for p in poly.parts))
    exterior = poly.exterior
    if ring_area_signed(exterior) < 0:
        exterior = exterior.reversed()
    holes = tuple(h.reversed() if ring_area_signed(h) > 0 else h
                  for h in poly.holes)
    return PolygonGeom(exterior, holes)


def ring_is_degenerate(ring: LinearRing) -> bool:
    """True when the ring's planar area falls below the rejection threshold."""
    return abs(ring_area_signed(ring)) < DEGENERATE_RING_AREA


def _orient(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _segments_touch(p1, p2, p3, p4) -> bool:
    d1 = _orient(*p3, *p4, *p1)
    d2 = _orient(*p3, *p4, *p2)
    d3 = _orient(*p1, *p2, *p3)
    d4 = _orient(*p1, *p2, *p4)
    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0
            and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0):
        return True

    def on_segment(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    return ((d1 == 0 and on_segment(p3, p4, p1))
            or (d2 == 0 and on_segment(p3, p4, p2))
            or (d3 == 0 and on_segment(p1, p2, p3))
            or (d4 == 0 and on_segment(p1, p2, p4)))


def ring_is_simple(ring: LinearRing) -> bool:
    """False when any two non-adjacent edges cross or touch.

    Adjacent edges share a vertex by construction and are exempt; the
    first and last edge count as adjacent through the closure point.
    Quadratic in edge count, which is fine for desk-scale rings.
    """
    lons, lats = ring._lons, ring._lats
    edges = len(lons) - 1
    for i in range(edges):
        for j in range(i + 2, edges):
            if i == 0 and j == edges - 1:
                continue
            if _segments_touch((lons[i], lats[i]), (lons[i + 1], lats[i + 1]),
                               (lons[j], lats[j]), (lons[j + 1], lats[j + 1])):
                return False
    return True
