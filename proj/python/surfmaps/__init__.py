"""Rooted maps on surfaces.

Maps are passed around as dart JSON strings, the same format the
``surfmaps`` command line tool reads and writes. Series come back as
dicts from exponent tuples to ``fractions.Fraction``.
"""

import json

from ._surfmaps import (
    MapError,
    SeriesError,
    canonical_encoding,
    cells,
    classify,
    close_map,
    count_maps,
    enumerate_maps,
    motzkin,
    open_map,
    parse_surface,
    quadrangulate,
    quadrangulate_inverse,
    rooted_series_from_schemes,
    schemes,
    surface_of,
    tree_series,
    verify,
)


def load(text):
    """Dart JSON string to a dict."""
    return json.loads(text)


__all__ = [
    "MapError",
    "SeriesError",
    "canonical_encoding",
    "cells",
    "classify",
    "close_map",
    "count_maps",
    "enumerate_maps",
    "load",
    "motzkin",
    "open_map",
    "parse_surface",
    "quadrangulate",
    "quadrangulate_inverse",
    "rooted_series_from_schemes",
    "schemes",
    "surface_of",
    "tree_series",
    "verify",
]
