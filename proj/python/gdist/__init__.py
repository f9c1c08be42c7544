"""Python access to the gdist core library.

Report functions return the experiment report as a dict with keys
name, inputs, verdict, as_expected, tables (name -> CSV text), witnesses
and runtime_seconds.
"""

import json as _json

from . import _core
from ._core import (
    GdistError,
    euler_characteristic,
    exceptional_case,
    geodesic,
    growth_series,
    orientation_double_cover,
    word_length,
    zoo_names,
)

__all__ = [
    "GdistError",
    "ball",
    "centralizer",
    "combing_check",
    "cover_table",
    "distortion",
    "euler_characteristic",
    "exceptional_case",
    "geodesic",
    "growth_series",
    "klein_check",
    "orientation_double_cover",
    "verify_hom",
    "word_length",
    "zoo_names",
]


def ball(group, radius, max_elements=10_000_000, threads=1):
    return _json.loads(_core.ball_report(group, radius, max_elements, threads))


def klein_check(radius=8, threads=1):
    return _json.loads(_core.klein_check_report(radius, threads))


def distortion(group, subgroup, n_max, expect="", expect_undistorted=None, threads=1):
    return _json.loads(_core.distortion_report(group, subgroup, n_max, expect, expect_undistorted, threads))


def combing_check(group, radius=6, elements=(), triples=1000, threads=1):
    return _json.loads(_core.combing_report(group, radius, list(elements), triples, threads))


def centralizer(group, element, radius=6, threads=1):
    return _json.loads(_core.centralizer_report(group, element, radius, threads))


def cover_table(max_complexity=20):
    return _json.loads(_core.cover_table_report(max_complexity))


def verify_hom(lift):
    """lift is a dict or a JSON string in the lift-data format."""
    text = lift if isinstance(lift, str) else _json.dumps(lift)
    return _json.loads(_core.verify_hom_report(text))
