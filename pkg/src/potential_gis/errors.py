"""Typed errors raised across the package.

Every error carries a stable machine-readable ``code`` so the HTTP layer
can map it to a JSON error body without string matching.
"""

from __future__ import annotations


class PotentialGisError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


# --- geometry ---------------------------------------------------------------

class CoordinateOutOfRange(PotentialGisError):
    """Longitude/latitude outside [-180, 180] x [-90, 90], or not finite."""

    code = "coordinate_out_of_range"

    def __init__(self, message: str, value=None, feature_id: str | None = None):
        super().__init__(message)
        self.value = value
        self.feature_id = feature_id


class InvalidRing(PotentialGisError):
    """Ring violates closure, length, duplicate-vertex or degeneracy rules."""

    code = "invalid_ring"

    def __init__(self, message: str, feature_id: str | None = None,
                 ring_index: int | None = None):
        super().__init__(message)
        self.feature_id = feature_id
        self.ring_index = ring_index


class ZeroAreaGeometry(PotentialGisError):
    """Centroid requested for a geometry with (near-)zero planar area."""

    code = "zero_area_geometry"


# --- geojson ----------------------------------------------------------------

class MalformedDocument(PotentialGisError):
    """Input is not the strict GeoJSON subset this package accepts."""

    code = "malformed_document"


class UnsupportedGeometry(PotentialGisError):
    """Geometry type outside the supported Polygon/MultiPolygon/Point subset."""

    code = "unsupported_geometry"

    def __init__(self, message: str, geometry_type: str | None = None,
                 feature_id: str | None = None):
        super().__init__(message)
        self.geometry_type = geometry_type
        self.feature_id = feature_id


class DuplicateFeatureId(PotentialGisError):
    """Two features share an id, or a feature's id slots disagree."""

    code = "duplicate_feature_id"

    def __init__(self, message: str, feature_id: str | None = None):
        super().__init__(message)
        self.feature_id = feature_id


# --- spatial index ----------------------------------------------------------

class DuplicateEntryId(PotentialGisError):
    """Two index entries share a feature_id."""

    code = "duplicate_entry_id"


# --- catalog ----------------------------------------------------------------

class CsvSchemaError(PotentialGisError):
    """Record CSV has a bad header or an unparseable cell."""

    code = "csv_schema_error"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownDistrictId(PotentialGisError):
    """Reference to a district id that does not exist in the catalog."""

    code = "unknown_district_id"

    def __init__(self, message: str, district_id: str | None = None,
                 line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.district_id = district_id
        self.line = line


class DuplicateRecordKey(PotentialGisError):
    """Two records share (district_id, category, commodity, year)."""

    code = "duplicate_record_key"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NegativeQuantity(PotentialGisError):
    """Record quantity below zero."""

    code = "negative_quantity"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownCategory(PotentialGisError):
    """Category name outside agriculture/plantation/industry."""

    code = "unknown_category"


class UnknownCommodity(PotentialGisError):
    """Commodity with no records in the requested category."""

    code = "unknown_commodity"


# --- http service -------------------------------------------------------------

class BadCoordinate(PotentialGisError):
    """Query coordinate missing, unparseable or out of range."""

    code = "bad_coordinate"


class UnsupportedFormat(PotentialGisError):
    """Export format other than csv requested."""

    code = "unsupported_format"
