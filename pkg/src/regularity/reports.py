"""Versioned JSON run reports. Exact rationals are ``{"num": str, "den": str}``."""

from __future__ import annotations

import json
import os
from pathlib import Path

SCHEMA_VERSION = "regularity-report/1"
REPORT_DIR_ENV = "REGULARITY_REPORT_DIR"

_RATIONAL = {
    "type": "object",
    "properties": {
        "num": {"type": "string", "pattern": "^-?[0-9]+$"},
        "den": {"type": "string", "pattern": "^[1-9][0-9]*$"},
    },
    "required": ["num", "den"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": SCHEMA_VERSION,
    "type": "object",
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
        "error": {
            "type": "object",
            "properties": {"kind": {"type": "string"}, "message": {"type": "string"}},
            "required": ["kind", "message"],
        },
        "exact_values": {"type": "object", "additionalProperties": _RATIONAL},
        "timing_ms": {"type": "number", "minimum": 0},
    },
    "required": ["schema", "command", "inputs", "timing_ms"],
    "oneOf": [{"required": ["results"]}, {"required": ["error"]}],
    "$defs": {"rational": _RATIONAL},
}


def make_report(command: str, inputs: dict, results: dict | None = None, *,
                exact_values: dict | None = None, error: dict | None = None,
                timing_ms: float = 0.0) -> dict:
    report = {"schema": SCHEMA_VERSION, "command": command, "inputs": inputs,
              "timing_ms": round(timing_ms, 3)}
    if error is not None:
        report["error"] = error
    else:
        report["results"] = results or {}
        report["exact_values"] = exact_values or {}
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def strip_timing(text: str) -> dict:
    obj = json.loads(text)
    obj.pop("timing_ms", None)
    return obj


def default_report_path(command: str) -> Path | None:
    d = os.environ.get(REPORT_DIR_ENV)
    return Path(d) / f"{command}.json" if d else None
