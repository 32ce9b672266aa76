"""Numerical toolkit for H-convex analysis on the first Heisenberg group.

The heavy lifting lives in the compiled extension ``heisconvex._core``;
this package re-exports it and adds a dict-friendly wrapper around the
JSON config runner.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from ._core import (
    contains,
    dilate,
    distance,
    eval_field,
    gallery_info,
    gallery_names,
    gauge_norm,
    group_inv,
    group_mul,
    h_segment_point,
    run_config,
    swap_reflect,
)

__all__ = [
    "contains",
    "dilate",
    "distance",
    "eval_field",
    "gallery_info",
    "gallery_names",
    "gauge_norm",
    "group_inv",
    "group_mul",
    "h_segment_point",
    "run",
    "run_config",
    "swap_reflect",
]

__version__ = "0.1.0"


def run(config: Mapping[str, Any] | str) -> dict[str, Any]:
    """Run one command from a config dict (or JSON string).

    Returns the parsed report document with ``exit_code`` and
    ``files_written`` merged in. Exit code 0 means consistent, 2 means a
    violation was witnessed; config errors raise ``ValueError`` from the
    extension.
    """
    text = config if isinstance(config, str) else json.dumps(config)
    raw = run_config(text)
    doc = json.loads(raw["report_json"])
    doc["exit_code"] = raw["exit_code"]
    doc["files_written"] = list(raw["files_written"])
    return doc
