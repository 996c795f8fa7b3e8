import json
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from potential_gis import geojson
from potential_gis import geometry as g
from potential_gis.errors import (
    CoordinateOutOfRange,
    DuplicateFeatureId,
    InvalidRing,
    MalformedDocument,
    UnsupportedGeometry,
)

import oracles

UNIT_SQUARE_DOC = json.dumps({
    "type": "FeatureCollection",
    "features": [{
        "type": "Feature",
        "id": "K01",
        "properties": {"name": "one"},
        "geometry": {"type": "Polygon", "coordinates": [
            [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]]},
    }],
})


def doc_with(feature_overrides: dict, geometry=None) -> str:
    feature = {
        "type": "Feature",
        "id": "K01",
        "properties": {},
        "geometry": geometry or {"type": "Polygon", "coordinates": [
            [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]]},
    }
    feature.update(feature_overrides)
    return json.dumps({"type": "FeatureCollection", "features": [feature]})


# --- strategies ---------------------------------------------------------------

def _round6(x: float) -> float:
    return round(x, 6)


@st.composite
def polygon_geometries(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    with_hole = draw(st.booleans())
    multi = draw(st.booleans())
    rng = random.Random(seed)

    def star(cx, cy, r):
        pts = oracles.star_polygon(rng, cx, cy, rng.randint(3, 10), r)
        return [( _round6(x), _round6(y)) for x, y in pts]

    def poly():
        cx, cy = rng.uniform(-80, 80), rng.uniform(-60, 60)
        rings = [star(cx, cy, rng.uniform(1.0, 6.0))]
        if with_hole:
            rings.append(star(cx, cy, 0.2))
        return [[list(p) for p in ring] for ring in rings]

    if multi:
        coords = [poly() for _ in range(rng.randint(1, 3))]
        return {"type": "MultiPolygon", "coordinates": coords}
    return {"type": "Polygon", "coordinates": poly()}


property_values = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(-10**9, 10**9),
    st.integers(-10**12, 10**12).map(lambda i: i / 1e6),
    st.text(max_size=12),
)


@st.composite
def feature_collections_docs(draw):
    n = draw(st.integers(0, 6))
    features = []
    for i in range(n):
        props = draw(st.dictionaries(
            st.text(max_size=8).filter(lambda k: k != "id"),
            property_values, max_size=4))
        features.append({
            "type": "Feature",
            "id": f"F{i:03d}",
            "properties": props,
            "geometry": draw(st.one_of(
                polygon_geometries(),
                st.tuples(
                    st.integers(-180_000_000, 180_000_000),
                    st.integers(-90_000_000, 90_000_000),
                ).map(lambda t: {"type": "Point",
                                 "coordinates": [t[0] / 1e6, t[1] / 1e6]}))),
        })
    return json.dumps({"type": "FeatureCollection", "features": features})


# --- parsing ------------------------------------------------------------------

class TestParse:
    def test_single_square_feature(self):
        fc = geojson.parse_feature_collection(UNIT_SQUARE_DOC)
        assert len(fc.features) == 1
        feat = fc.features[0]
        assert feat.id == "K01"
        assert g.bbox_of(feat.geometry) == g.BBox(0.0, 0.0, 1.0, 1.0)

    def test_winding_normalized_on_parse(self):
        # exterior given clockwise; parser must flip it
        doc = doc_with({}, geometry={"type": "Polygon", "coordinates": [
            [[0, 0], [0, 1], [1, 1], [1, 0], [0, 0]]]})
        fc = geojson.parse_feature_collection(doc)
        assert g.ring_area_signed(fc.features[0].geometry.exterior) > 0

    def test_lon_lat_order(self):
        doc = doc_with({}, geometry={"type": "Point", "coordinates": [10, 20]})
        fc = geojson.parse_feature_collection(doc)
        point = fc.features[0].geometry
        assert (point.lon, point.lat) == (10.0, 20.0)

    def test_id_from_property_slot(self):
        doc = doc_with({"id": None, "properties": {"id": "P77"}})
        doc = doc.replace('"id": null, ', "")  # drop the id member entirely
        fc = geojson.parse_feature_collection(doc)
        assert fc.features[0].id == "P77"
        assert fc.features[0].properties["id"] == "P77"

    def test_matching_dual_ids_accepted(self):
        doc = doc_with({"properties": {"id": "K01"}})
        assert geojson.parse_feature_collection(doc).features[0].id == "K01"


class TestParseErrors:
    def test_not_json(self):
        with pytest.raises(MalformedDocument):
            geojson.parse_feature_collection("{not json")

    def test_wrong_top_level_type(self):
        with pytest.raises(MalformedDocument):
            geojson.parse_feature_collection(json.dumps(
                {"type": "Feature", "features": []}))

    def test_foreign_member_rejected(self):
        doc = json.dumps({"type": "FeatureCollection", "features": [],
                          "crs": "EPSG:4326"})
        with pytest.raises(MalformedDocument, match="crs"):
            geojson.parse_feature_collection(doc)

    def test_nested_property_rejected(self):
        doc = doc_with({"properties": {"nested": {"a": 1}}})
        with pytest.raises(MalformedDocument, match="nested"):
            geojson.parse_feature_collection(doc)

    def test_unsupported_geometry(self):
        doc = doc_with({}, geometry={"type": "LineString",
                                     "coordinates": [[0, 0], [1, 1]]})
        with pytest.raises(UnsupportedGeometry):
            geojson.parse_feature_collection(doc)

    def test_open_ring_names_feature_and_ring(self):
        doc = doc_with({}, geometry={"type": "Polygon", "coordinates": [
            [[0, 0], [1, 0], [1, 1], [0, 1]]]})
        with pytest.raises(InvalidRing) as err:
            geojson.parse_feature_collection(doc)
        assert err.value.feature_id == "K01"
        assert err.value.ring_index == 0

    def test_short_ring_rejected(self):
        doc = doc_with({}, geometry={"type": "Polygon", "coordinates": [
            [[0, 0], [1, 0], [0, 0]]]})
        with pytest.raises(InvalidRing):
            geojson.parse_feature_collection(doc)

    def test_degenerate_ring_rejected(self):
        doc = doc_with({}, geometry={"type": "Polygon", "coordinates": [
            [[0, 0], [1, 0], [2, 0], [0, 0]]]})
        with pytest.raises(InvalidRing, match="degenerate"):
            geojson.parse_feature_collection(doc)

    def test_self_intersecting_ring_rejected_not_fixed(self):
        bowtie = [[0, 0], [1, 1], [1, 0], [0, 1], [0, 0]]
        doc = doc_with({}, geometry={"type": "Polygon",
                                     "coordinates": [bowtie]})
        with pytest.raises(InvalidRing, match="self-intersecting"):
            geojson.parse_feature_collection(doc)

    def test_vertex_on_other_edge_rejected(self):
        # non-adjacent edge passes through a vertex: still non-simple
        pinch = [[0, 0], [2, 0], [2, 2], [1, 0], [0, 2], [0, 0]]
        doc = doc_with({}, geometry={"type": "Polygon",
                                     "coordinates": [pinch]})
        with pytest.raises(InvalidRing, match="self-intersecting"):
            geojson.parse_feature_collection(doc)

    def test_hole_ring_index_reported(self):
        doc = doc_with({}, geometry={"type": "Polygon", "coordinates": [
            [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]],
            [[0.2, 0.2], [0.4, 0.2], [0.2, 0.2]],
        ]})
        with pytest.raises(InvalidRing) as err:
            geojson.parse_feature_collection(doc)
        assert err.value.ring_index == 1

    def test_coordinate_out_of_range_carries_value(self):
        doc = doc_with({}, geometry={"type": "Point", "coordinates": [181, 0]})
        with pytest.raises(CoordinateOutOfRange) as err:
            geojson.parse_feature_collection(doc)
        assert err.value.value == 181.0

    def test_duplicate_feature_ids(self):
        features = json.loads(UNIT_SQUARE_DOC)["features"]
        doc = json.dumps({"type": "FeatureCollection",
                          "features": features * 2})
        with pytest.raises(DuplicateFeatureId) as err:
            geojson.parse_feature_collection(doc)
        assert err.value.feature_id == "K01"

    def test_conflicting_id_slots(self):
        doc = doc_with({"properties": {"id": "OTHER"}})
        with pytest.raises(DuplicateFeatureId):
            geojson.parse_feature_collection(doc)

    def test_missing_id(self):
        doc = doc_with({"id": None})
        doc = doc.replace('"id": null, ', "")
        with pytest.raises(MalformedDocument, match="missing id"):
            geojson.parse_feature_collection(doc)

    def test_bad_position_shape(self):
        doc = doc_with({}, geometry={"type": "Point",
                                     "coordinates": [10, 20, 30]})
        with pytest.raises(MalformedDocument):
            geojson.parse_feature_collection(doc)


# --- serialization ------------------------------------------------------------

class TestSerialize:
    def test_empty_collection(self):
        text = geojson.serialize_feature_collection(
            geojson.FeatureCollection(()))
        assert json.loads(text) == {"type": "FeatureCollection", "features": []}

    def test_point_lon_lat_order(self):
        fc = geojson.FeatureCollection((geojson.Feature(
            id="P1", geometry=g.Coordinate(0.0, 0.0), properties={}),))
        assert '"coordinates":[0,0]' in geojson.serialize_feature_collection(fc)
        fc = geojson.FeatureCollection((geojson.Feature(
            id="P1", geometry=g.Coordinate(10.0, 20.0), properties={}),))
        assert '"coordinates":[10,20]' in geojson.serialize_feature_collection(fc)

    def test_byte_stable(self):
        fc = geojson.parse_feature_collection(UNIT_SQUARE_DOC)
        assert (geojson.serialize_feature_collection(fc)
                == geojson.serialize_feature_collection(fc))
        reparsed = geojson.parse_feature_collection(
            geojson.serialize_feature_collection(fc))
        assert (geojson.serialize_feature_collection(reparsed)
                == geojson.serialize_feature_collection(fc))

    def test_number_formatting(self):
        assert geojson.format_number(1.0) == "1"
        assert geojson.format_number(-0.0) == "0"
        assert geojson.format_number(0.1) == "0.1"
        assert geojson.format_number(7) == "7"
        assert geojson.format_number(104.123456789) == "104.123456789"
        # at most 9 fractional digits
        assert geojson.format_number(1.00000000049) == "1"

    @settings(max_examples=300)
    @given(feature_collections_docs())
    def test_round_trip_identity(self, doc):
        try:
            fc = geojson.parse_feature_collection(doc)
        except InvalidRing:
            assume(False)
        text = geojson.serialize_feature_collection(fc)
        assert geojson.parse_feature_collection(text) == fc
