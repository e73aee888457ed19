"""JSON ring-spec, corpus and config documents.

Ring spec (recursive)::

    {"kind": "zmod", "n": 12}
    {"kind": "product", "factors": [<ring>, ...]}
    {"kind": "matrix", "base": <ring>, "d": 2}
    {"kind": "table", "moduli": [2, 2], "table": [[...], ...], "one": 3}

Each may carry a ``"label"``.  A ring-spec *file* is either a bare ring spec
or ``{"ring": <ring>, "side": ..., "limits": {...}, "output": {...}}``.
A corpus is ``{"rings": [{"name": ..., "ring": <ring>}, ...]}``.  Unknown
fields are rejected everywhere.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .config import DEFAULT_LIMITS, Limits
from .errors import SpecError
from .lattice import Side
from .ring import FiniteRing, make_matrix_ring, make_product, make_table_ring, make_zmod

CORPUS_ENV = "RINGSUMS_CORPUS"

_LIMITS_SCHEMA = {
    "type": "object",
    "properties": {
        name: {"type": "integer", "minimum": 0}
        for name in (
            "table_threshold",
            "axiom_check_threshold",
            "size_limit",
            "lattice_limit",
            "mobius_subset_limit",
            "dense_limit",
        )
    },
    "additionalProperties": False,
}

_RING_DEFS = {
    "ring": {
        "type": "object",
        "required": ["kind"],
        "properties": {"kind": {"enum": ["zmod", "product", "matrix", "table"]}},
        "allOf": [
            {"if": {"properties": {"kind": {"const": "zmod"}}}, "then": {"$ref": "#/$defs/zmod"}},
            {"if": {"properties": {"kind": {"const": "product"}}}, "then": {"$ref": "#/$defs/product"}},
            {"if": {"properties": {"kind": {"const": "matrix"}}}, "then": {"$ref": "#/$defs/matrix"}},
            {"if": {"properties": {"kind": {"const": "table"}}}, "then": {"$ref": "#/$defs/table"}},
        ],
    },
    "zmod": {
        "type": "object",
        "required": ["kind", "n"],
        "properties": {"kind": {}, "label": {"type": "string"}, "n": {"type": "integer", "minimum": 1}},
        "additionalProperties": False,
    },
    "product": {
        "type": "object",
        "required": ["kind", "factors"],
        "properties": {
            "kind": {},
            "label": {"type": "string"},
            "factors": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/ring"}},
        },
        "additionalProperties": False,
    },
    "matrix": {
        "type": "object",
        "required": ["kind", "base", "d"],
        "properties": {
            "kind": {},
            "label": {"type": "string"},
            "base": {"$ref": "#/$defs/ring"},
            "d": {"type": "integer", "minimum": 1},
        },
        "additionalProperties": False,
    },
    "table": {
        "type": "object",
        "required": ["kind", "moduli", "table", "one"],
        "properties": {
            "kind": {},
            "label": {"type": "string"},
            "moduli": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
            "table": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "one": {"type": "integer", "minimum": 0},
        },
        "additionalProperties": False,
    },
}

RING_SCHEMA = {"$defs": _RING_DEFS, "$ref": "#/$defs/ring"}

FILE_SCHEMA = {
    "$defs": _RING_DEFS,
    "oneOf": [
        {"$ref": "#/$defs/ring"},
        {
            "type": "object",
            "required": ["ring"],
            "properties": {
                "ring": {"$ref": "#/$defs/ring"},
                "side": {"enum": ["left", "right", "twosided"]},
                "limits": _LIMITS_SCHEMA,
                "output": {
                    "type": "object",
                    "properties": {"format": {"enum": ["csv", "json"]}},
                    "additionalProperties": False,
                },
            },
            "additionalProperties": False,
        },
    ],
}

CORPUS_SCHEMA = {
    "$defs": _RING_DEFS,
    "type": "object",
    "required": ["rings"],
    "properties": {
        "rings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "ring"],
                "properties": {"name": {"type": "string"}, "ring": {"$ref": "#/$defs/ring"}},
                "additionalProperties": False,
            },
        }
    },
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {"limits": _LIMITS_SCHEMA},
    "additionalProperties": False,
}


def _validate(doc: Any, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SpecError(f"invalid {what} at {where}: {exc.message}") from None


def build_ring(spec: dict, limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """Construct a ring from a validated ring-spec dict."""
    _validate(spec, RING_SCHEMA, "ring spec")
    return _build(spec, limits)


def _build(spec: dict, limits: Limits) -> FiniteRing:
    kind = spec["kind"]
    if kind == "zmod":
        R = make_zmod(spec["n"], limits=limits)
    elif kind == "product":
        R = make_product([_build(f, limits) for f in spec["factors"]], limits=limits)
    elif kind == "matrix":
        R = make_matrix_ring(_build(spec["base"], limits), spec["d"], limits=limits)
    else:
        R = make_table_ring(spec["moduli"], spec["table"], spec["one"], spec.get("label", ""), limits=limits)
    if "label" in spec:
        R.label = spec["label"]
    return R


@dataclass
class RingFile:
    ring_spec: dict
    side: Side | None
    limits: Limits
    output_format: str | None


def read_json(path: str | os.PathLike) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON ({exc})") from None


def parse_ring_file(doc: Any, limits: Limits = DEFAULT_LIMITS) -> RingFile:
    _validate(doc, FILE_SCHEMA, "ring-spec file")
    if "kind" in doc:
        return RingFile(doc, None, limits, None)
    lim = limits.updated(**doc.get("limits", {}))
    side = Side.parse(doc["side"]) if "side" in doc else None
    return RingFile(doc["ring"], side, lim, doc.get("output", {}).get("format"))


def load_config(path: str | os.PathLike | None, base: Limits = DEFAULT_LIMITS) -> Limits:
    if path is None:
        return base
    doc = read_json(path)
    _validate(doc, CONFIG_SCHEMA, "config")
    return base.updated(**doc.get("limits", {}))


def default_corpus_doc() -> dict:
    text = resources.files("ringsums").joinpath("data/corpus.json").read_text()
    return json.loads(text)


def load_corpus(path: str | os.PathLike | None = None) -> list[tuple[str, dict]]:
    """(name, ring spec) pairs from ``path``, $RINGSUMS_CORPUS, or the shipped corpus."""
    path = path or os.environ.get(CORPUS_ENV)
    doc = read_json(path) if path else default_corpus_doc()
    _validate(doc, CORPUS_SCHEMA, "corpus")
    return [(entry["name"], entry["ring"]) for entry in doc["rings"]]
