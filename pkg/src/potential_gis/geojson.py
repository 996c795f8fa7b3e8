"""Strict reader/writer for the GeoJSON subset used by district maps.

Supported: FeatureCollection, Feature, Polygon, MultiPolygon, Point.
Position order is [lon, lat] on both read and write.  Foreign members and
nested property objects are rejected rather than ignored, so fixture
typos surface immediately.  Serialization is canonical: fixed key order,
sorted property keys, numbers with at most 9 fractional digits; the same
input always produces the same bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import geometry as geom
from .errors import (
    CoordinateOutOfRange,
    DuplicateFeatureId,
    InvalidRing,
    MalformedDocument,
    UnsupportedGeometry,
)

PropertyValue = str | int | float | bool | None
FeatureGeometry = geom.PolygonGeom | geom.MultiPolygonGeom | geom.Coordinate

_FC_KEYS = {"type", "features"}
_FEATURE_KEYS = {"type", "id", "geometry", "properties"}
_GEOMETRY_KEYS = {"type", "coordinates"}
_GEOMETRY_TYPES = {"Polygon", "MultiPolygon", "Point"}


@dataclass(frozen=True)
class Feature:
    id: str
    geometry: FeatureGeometry
    properties: dict[str, PropertyValue]


@dataclass(frozen=True)
class FeatureCollection:
    features: tuple[Feature, ...]

    def __post_init__(self):
        feats = tuple(self.features)
        object.__setattr__(self, "features", feats)
        seen: set[str] = set()
        for f in feats:
            if f.id in seen:
                raise DuplicateFeatureId(
                    f"duplicate feature id {f.id!r}", feature_id=f.id)
            seen.add(f.id)


# --- parsing -----------------------------------------------------------------

def parse_feature_collection(text: str) -> FeatureCollection:
    """Parse and fully validate a FeatureCollection document.

    Raises a typed error naming the offending feature/ring; never returns
    a partially-built collection.
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from None

    if not isinstance(doc, dict):
        raise MalformedDocument("top-level value must be an object")
    if doc.get("type") != "FeatureCollection":
        raise MalformedDocument(
            f"expected type 'FeatureCollection', got {doc.get('type')!r}")
    extra = set(doc) - _FC_KEYS
    if extra:
        raise MalformedDocument(
            f"foreign members not allowed on FeatureCollection: {sorted(extra)}")
    raw_features = doc.get("features")
    if not isinstance(raw_features, list):
        raise MalformedDocument("'features' must be an array")

    features = tuple(_parse_feature(raw, i) for i, raw in enumerate(raw_features))
    return FeatureCollection(features)


def _parse_feature(raw, index: int) -> Feature:
    where = f"feature #{index}"
    if not isinstance(raw, dict):
        raise MalformedDocument(f"{where}: must be an object")
    if raw.get("type") != "Feature":
        raise MalformedDocument(
            f"{where}: expected type 'Feature', got {raw.get('type')!r}")
    extra = set(raw) - _FEATURE_KEYS
    if extra:
        raise MalformedDocument(
            f"{where}: foreign members not allowed: {sorted(extra)}")

    properties = _parse_properties(raw.get("properties"), where)
    feature_id = _resolve_id(raw, properties, where)
    where = f"feature {feature_id!r}"

    if "geometry" not in raw:
        raise MalformedDocument(f"{where}: missing geometry")
    try:
        parsed_geom = _parse_geometry(raw["geometry"], where)
    except InvalidRing as exc:
        raise InvalidRing(str(exc), feature_id=feature_id,
                          ring_index=exc.ring_index) from None
    except CoordinateOutOfRange as exc:
        raise CoordinateOutOfRange(f"{where}: {exc}", value=exc.value,
                                   feature_id=feature_id) from None
    return Feature(id=feature_id, geometry=parsed_geom, properties=properties)


def _resolve_id(raw: dict, properties: dict, where: str) -> str:
    slot_id = raw.get("id")
    prop_id = properties.get("id")
    for label, value in (("id member", slot_id), ("'id' property", prop_id)):
        if value is not None and (not isinstance(value, str) or not value):
            raise MalformedDocument(
                f"{where}: {label} must be a non-empty string, got {value!r}")
    if slot_id is not None and prop_id is not None and slot_id != prop_id:
        raise DuplicateFeatureId(
            f"{where}: id member {slot_id!r} conflicts with 'id' property "
            f"{prop_id!r}", feature_id=slot_id)
    feature_id = slot_id if slot_id is not None else prop_id
    if feature_id is None:
        raise MalformedDocument(f"{where}: missing id")
    return feature_id


def _parse_properties(raw, where: str) -> dict[str, PropertyValue]:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise MalformedDocument(f"{where}: properties must be an object or null")
    for key, value in raw.items():
        if not isinstance(key, str):
            raise MalformedDocument(f"{where}: property keys must be strings")
        if isinstance(value, (dict, list)):
            raise MalformedDocument(
                f"{where}: nested value not allowed for property {key!r}")
        if not isinstance(value, (str, bool, int, float)) and value is not None:
            raise MalformedDocument(
                f"{where}: unsupported property value for {key!r}: {value!r}")
    return dict(raw)


def _parse_geometry(raw, where: str) -> FeatureGeometry:
    if not isinstance(raw, dict):
        raise MalformedDocument(f"{where}: geometry must be an object")
    gtype = raw.get("type")
    if gtype not in _GEOMETRY_TYPES:
        raise UnsupportedGeometry(
            f"{where}: unsupported geometry type {gtype!r} "
            f"(supported: {sorted(_GEOMETRY_TYPES)})", geometry_type=gtype)
    extra = set(raw) - _GEOMETRY_KEYS
    if extra:
        raise MalformedDocument(
            f"{where}: foreign members not allowed on geometry: {sorted(extra)}")
    coords = raw.get("coordinates")
    if not isinstance(coords, list):
        raise MalformedDocument(f"{where}: coordinates must be an array")

    if gtype == "Point":
        return _parse_position(coords, where)
    if gtype == "Polygon":
        poly, _ = _parse_polygon(coords, where, ring_offset=0)
        return geom.normalize_winding(poly)
    parts = []
    ring_offset = 0
    if not coords:
        raise MalformedDocument(f"{where}: MultiPolygon must have parts")
    for part_coords in coords:
        part, ring_offset = _parse_polygon(part_coords, where, ring_offset)
        parts.append(part)
    return geom.normalize_winding(geom.MultiPolygonGeom(tuple(parts)))


def _parse_polygon(coords, where: str, ring_offset: int):
    if not isinstance(coords, list) or not coords:
        raise MalformedDocument(f"{where}: Polygon must have at least one ring")
    rings = []
    for i, ring_coords in enumerate(coords):
        rings.append(_parse_ring(ring_coords, where, ring_offset + i))
    return geom.PolygonGeom(rings[0], tuple(rings[1:])), ring_offset + len(coords)


def _parse_ring(coords, where: str, ring_index: int) -> geom.LinearRing:
    if not isinstance(coords, list):
        raise MalformedDocument(f"{where}: ring {ring_index} must be an array")
    positions = tuple(_parse_position(p, where) for p in coords)
    try:
        ring = geom.LinearRing(positions)
    except InvalidRing as exc:
        raise InvalidRing(f"ring {ring_index}: {exc}",
                          ring_index=ring_index) from None
    if not geom.ring_is_simple(ring):
        raise InvalidRing(f"ring {ring_index}: self-intersecting",
                          ring_index=ring_index)
    if geom.ring_is_degenerate(ring):
        raise InvalidRing(
            f"ring {ring_index}: degenerate (planar area below "
            f"{geom.DEGENERATE_RING_AREA} sq. degrees)", ring_index=ring_index)
    return ring


def _parse_position(raw, where: str) -> geom.Coordinate:
    if (not isinstance(raw, list) or len(raw) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                       for v in raw)):
        raise MalformedDocument(
            f"{where}: position must be a [lon, lat] pair of numbers, "
            f"got {raw!r}")
    return geom.Coordinate(float(raw[0]), float(raw[1]))


# --- serialization -----------------------------------------------------------

def format_number(x: int | float) -> str:
    """Canonical JSON number: integral values bare, else <= 9 fractional digits."""
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    if x == math.floor(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.9f}".rstrip("0").rstrip(".")


def dumps_canonical(value) -> str:
    """Deterministic compact JSON: insertion-ordered objects, canonical numbers."""
    out: list[str] = []
    _write(value, out)
    return "".join(out)


def _write(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, float)):
        out.append(format_number(value))
    elif isinstance(value, dict):
        out.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _write(item, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def _position_jsonable(p: geom.Coordinate) -> list[float]:
    return [p.lon, p.lat]


def _ring_jsonable(ring: geom.LinearRing) -> list[list[float]]:
    return [_position_jsonable(p) for p in ring.positions]


def geometry_jsonable(g: FeatureGeometry) -> dict:
    if isinstance(g, geom.Coordinate):
        return {"type": "Point", "coordinates": _position_jsonable(g)}
    if isinstance(g, geom.PolygonGeom):
        return {"type": "Polygon",
                "coordinates": [_ring_jsonable(r) for r in g.rings]}
    return {"type": "MultiPolygon",
            "coordinates": [[_ring_jsonable(r) for r in part.rings]
                            for part in g.parts]}


def feature_collection_jsonable(fc: FeatureCollection) -> dict:
    return {
        "type": "FeatureCollection",
        "features": [
            {
                "type": "Feature",
                "id": f.id,
                "properties": {k: f.properties[k] for k in sorted(f.properties)},
                "geometry": geometry_jsonable(f.geometry),
            }
            for f in fc.features
        ],
    }


def serialize_feature_collection(fc: FeatureCollection) -> str:
    """Emit the canonical text form; output reparses structurally equal."""
    return dumps_canonical(feature_collection_jsonable(fc))
