"""District catalog: geometry joined with per-category potential records.

A catalog is loaded once from a districts GeoJSON file plus a records CSV
(`district_id,category,commodity,quantity,unit,year`), cross-checked for
referential integrity, and indexed spatially.  It is immutable afterwards;
concurrent readers need no locking.  Reloading builds a whole new catalog.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import geojson, spatial
from .errors import (
    CsvSchemaError,
    DuplicateRecordKey,
    NegativeQuantity,
    UnknownCategory,
    UnknownCommodity,
    UnknownDistrictId,
    UnsupportedGeometry,
    ZeroAreaGeometry,
)
from .geometry import Coordinate, Geometry, bbox_of, polygon_area_km2

CSV_COLUMNS = ("district_id", "category", "commodity", "quantity", "unit", "year")

DISTRICTS_FILENAME = "districts.geojson"
RECORDS_FILENAME = "records.csv"


class PotentialCategory(enum.Enum):
    """The three potential fields, in their stable presentation order."""

    AGRICULTURE = "agriculture"
    PLANTATION = "plantation"
    INDUSTRY = "industry"

    @property
    def display_name_id(self) -> str:
        return _DISPLAY_ID[self]

    @property
    def display_name_en(self) -> str:
        return self.value.capitalize()

    @property
    def order(self) -> int:
        return _ORDER[self]

    @classmethod
    def parse(cls, text: str) -> "PotentialCategory":
        """Accepts the canonical English name or its Indonesian alias."""
        try:
            return _CATEGORY_ALIASES[text]
        except KeyError:
            raise UnknownCategory(
                f"unknown category {text!r} (valid: "
                f"{', '.join(c.value for c in cls)})") from None


_DISPLAY_ID = {
    PotentialCategory.AGRICULTURE: "pertanian",
    PotentialCategory.PLANTATION: "perkebunan",
    PotentialCategory.INDUSTRY: "perindustrian",
}
_ORDER = {c: i for i, c in enumerate(PotentialCategory)}
_CATEGORY_ALIASES = {c.value: c for c in PotentialCategory}
_CATEGORY_ALIASES.update({alias: c for c, alias in _DISPLAY_ID.items()})


@dataclass(frozen=True)
class District:
    id: str
    name: str
    geometry: Geometry
    area_km2: float


@dataclass(frozen=True)
class PotentialRecord:
    district_id: str
    category: PotentialCategory
    commodity: str
    quantity: float
    unit: str
    year: int

    @property
    def key(self) -> tuple[str, str, str, int]:
        return (self.district_id, self.category.value, self.commodity, self.year)

    def sort_key(self):
        return (self.district_id, self.category.order, self.commodity,
                self.year, self.unit)


@dataclass(frozen=True)
class ChoroplethCell:
    value: float
    class_index: int
    no_data: bool


@dataclass(frozen=True)
class ChoroplethResult:
    category: PotentialCategory
    commodity: str
    k: int
    method: str                      # "quantile" or "equal_interval"
    insufficient_data: bool
    breaks: tuple[float, ...]        # up to k-1 ascending thresholds
    per_district: dict[str, ChoroplethCell]

    def __post_init__(self):
        for a, b in zip(self.breaks, self.breaks[1:]):
            if not a < b:
                raise ValueError(f"breaks not strictly ascending: {self.breaks}")
        for cell in self.per_district.values():
            if not 0 <= cell.class_index < self.k:
                raise ValueError(f"class {cell.class_index} out of range")


@dataclass(frozen=True)
class Catalog:
    districts: dict[str, District]          # keyed by id, sorted insertion
    records: tuple[PotentialRecord, ...]
    index: spatial.SpatialIndex
    content_hash: str = field(default="", compare=False)

    def district(self, district_id: str) -> District:
        try:
            return self.districts[district_id]
        except KeyError:
            raise UnknownDistrictId(f"unknown district {district_id!r}",
                                    district_id=district_id) from None

    def districts_at(self, p: Coordinate) -> list[str]:
        return self.index.query_point(
            p, lambda fid: self.districts[fid].geometry)

    def commodities(self, category: PotentialCategory) -> list[str]:
        return sorted({r.commodity for r in self.records
                       if r.category is category})

    def record_count(self, category: PotentialCategory) -> int:
        return sum(1 for r in self.records if r.category is category)


# --- loading -----------------------------------------------------------------

def load_catalog(geojson_text: str, csv_text: str) -> Catalog:
    """Parse, validate and cross-reference both inputs; build the index.

    Raises the first typed error encountered; never yields a partial
    catalog.
    """
    fc = geojson.parse_feature_collection(geojson_text)
    districts: dict[str, District] = {}
    for feat in fc.features:
        if isinstance(feat.geometry, Coordinate):
            raise UnsupportedGeometry(
                f"district {feat.id!r}: geometry must be Polygon or "
                f"MultiPolygon, got Point", geometry_type="Point",
                feature_id=feat.id)
        area = polygon_area_km2(feat.geometry)
        if area <= 0:
            raise ZeroAreaGeometry(f"district {feat.id!r} has zero area")
        name = feat.properties.get("name")
        if not isinstance(name, str) or not name:
            name = feat.id
        districts[feat.id] = District(id=feat.id, name=name,
                                      geometry=feat.geometry, area_km2=area)
    districts = dict(sorted(districts.items()))

    records = parse_records_csv(csv_text, set(districts))
    index = spatial.build([
        spatial.IndexEntry(d.id, bbox_of(d.geometry))
        for d in districts.values()
    ])
    digest = hashlib.sha256()
    digest.update(geojson.serialize_feature_collection(fc).encode())
    digest.update(b"\n")
    digest.update(serialize_records_csv(records).encode())
    return Catalog(districts=districts, records=records, index=index,
                   content_hash=digest.hexdigest())


def load_catalog_dir(data_dir: str | Path) -> Catalog:
    """Load ``districts.geojson`` + ``records.csv`` from a directory."""
    data_dir = Path(data_dir)
    districts_path = data_dir / DISTRICTS_FILENAME
    records_path = data_dir / RECORDS_FILENAME
    for path in (districts_path, records_path):
        if not path.is_file():
            raise FileNotFoundError(f"missing data file: {path}")
    return load_catalog(districts_path.read_text(encoding="utf-8"),
                        records_path.read_text(encoding="utf-8"))


def parse_records_csv(text: str,
                      known_districts: set[str]) -> tuple[PotentialRecord, ...]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvSchemaError("empty document, expected header "
                             + ",".join(CSV_COLUMNS), line=1) from None
    if tuple(header) != CSV_COLUMNS:
        raise CsvSchemaError(
            f"header must be exactly {','.join(CSV_COLUMNS)}, "
            f"got {','.join(header)}", line=1)

    records: list[PotentialRecord] = []
    seen_keys: dict[tuple, int] = {}
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise CsvSchemaError(
                f"expected {len(CSV_COLUMNS)} columns, got {len(row)}",
                line=line)
        district_id, category_raw, commodity, quantity_raw, unit, year_raw = row
        if not district_id:
            raise CsvSchemaError("empty district_id", line=line)
        if district_id not in known_districts:
            raise UnknownDistrictId(
                f"record references unknown district {district_id!r}",
                district_id=district_id, line=line)
        try:
            category = PotentialCategory.parse(category_raw)
        except UnknownCategory as exc:
            raise CsvSchemaError(str(exc), line=line) from None
        if not commodity:
            raise CsvSchemaError("empty commodity", line=line)
        try:
            quantity = float(quantity_raw)
        except ValueError:
            raise CsvSchemaError(
                f"quantity {quantity_raw!r} is not a decimal number",
                line=line) from None
        if not math.isfinite(quantity):
            raise CsvSchemaError(f"quantity {quantity_raw!r} is not finite",
                                 line=line)
        if quantity < 0:
            raise NegativeQuantity(
                f"quantity {quantity_raw} is negative", line=line)
        try:
            year = int(year_raw)
        except ValueError:
            raise CsvSchemaError(f"year {year_raw!r} is not an integer",
                                 line=line) from None
        record = PotentialRecord(district_id, category, commodity,
                                 quantity, unit, year)
        if record.key in seen_keys:
            raise DuplicateRecordKey(
                f"duplicate record key {record.key} "
                f"(first seen at line {seen_keys[record.key]})", line=line)
        seen_keys[record.key] = line
        records.append(record)
    return tuple(records)


def serialize_records_csv(records: tuple[PotentialRecord, ...] | list) -> str:
    """Canonical CSV form: sorted rows, LF endings, trimmed numbers.

    This is also the export format; re-ingesting the output reproduces the
    same record multiset.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in sorted(records, key=PotentialRecord.sort_key):
        writer.writerow([r.district_id, r.category.value, r.commodity,
                         geojson.format_number(r.quantity), r.unit, str(r.year)])
    return out.getvalue()


# --- queries -----------------------------------------------------------------

def district_detail(c: Catalog, district_id: str,
                    category: PotentialCategory | None = None
                    ) -> tuple[District, list[PotentialRecord]]:
    """A district plus its records, optionally filtered to one category,
    sorted by (category, commodity, year)."""
    district = c.district(district_id)
    matching = [r for r in c.records if r.district_id == district_id
                and (category is None or r.category is category)]
    matching.sort(key=lambda r: (r.category.order, r.commodity, r.year))
    return district, matching


def category_totals(c: Catalog, category: PotentialCategory
                    ) -> dict[tuple[str, str], float]:
    """Summed quantities per (commodity, unit); mixed-unit commodities get
    one entry per unit."""
    totals: dict[tuple[str, str], float] = {}
    for r in c.records:
        if r.category is category:
            key = (r.commodity, r.unit)
            totals[key] = totals.get(key, 0.0) + r.quantity
    return dict(sorted(totals.items()))


def district_values(c: Catalog, category: PotentialCategory,
                    commodity: str) -> dict[str, float | None]:
    """Per-district summed quantity for one (category, commodity); None
    when the district has no matching record."""
    values: dict[str, float | None] = {d: None for d in c.districts}
    for r in c.records:
        if r.category is category and r.commodity == commodity:
            values[r.district_id] = (values[r.district_id] or 0.0) + r.quantity
    return values


def choropleth(c: Catalog, category: PotentialCategory, commodity: str,
               k: int = 5) -> ChoroplethResult:
    """Quantile (nearest-rank) classification into k classes.

    Breaks sit at the i/k quantiles (i = 1..k-1) of the nonzero value
    multiset; value v gets the largest class whose lower break <= v.
    Districts without a matching record carry value 0 and the no_data
    flag.  When fewer than k distinct nonzero values exist (or duplicate
    values collapse the quantile breaks), classification falls back to
    equal intervals and says so in the result.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    values = district_values(c, category, commodity)
    if all(v is None for v in values.values()):
        raise UnknownCommodity(
            f"no {category.value} records for commodity {commodity!r}")

    nonzero = sorted(v for v in values.values() if v)
    breaks, method, insufficient = _class_breaks(nonzero, k)

    per_district = {}
    for district_id, value in values.items():
        no_data = value is None
        v = 0.0 if no_data else value
        class_index = sum(1 for b in breaks if b <= v)
        per_district[district_id] = ChoroplethCell(v, class_index, no_data)
    return ChoroplethResult(category=category, commodity=commodity, k=k,
                            method=method, insufficient_data=insufficient,
                            breaks=breaks, per_district=per_district)


def _class_breaks(nonzero: list[float], k: int) -> tuple[tuple[float, ...], str, bool]:
    n = len(nonzero)
    if len(set(nonzero)) >= k:
        # Nearest-rank quantiles: Q(p) is the element of 1-based rank
        # ceil(p * n).
        breaks = tuple(nonzero[math.ceil(i * n / k) - 1] for i in range(1, k))
        if all(a < b for a, b in zip(breaks, breaks[1:])):
            return breaks, "quantile", False
    # Degenerate distribution: equal intervals over the value range.  With
    # a single distinct value the range widens to [0, max] so the valued
    # districts land in the top class.
    if not nonzero:
        return (), "equal_interval", True
    lo, hi = nonzero[0], nonzero[-1]
    if lo == hi:
        lo = 0.0
    return (tuple(lo + i * (hi - lo) / k for i in range(1, k)),
            "equal_interval", True)
