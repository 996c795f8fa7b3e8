"""Web GIS for district-level regional potential data."""

__version__ = "0.1.0"
