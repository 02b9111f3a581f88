"""JSON Schemas (draft 2020-12) for every JSON document the CLI writes."""

from __future__ import annotations

_ID = {"type": "integer", "minimum": 0}
_IDS = {"type": "array", "items": _ID}

CERTIFICATE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "urn:nonevasive:certificate",
    "$defs": {
        "node": {
            "oneOf": [
                {"const": "leaf"},
                {
                    "type": "object",
                    "required": ["vertex", "del", "link"],
                    "additionalProperties": False,
                    "properties": {
                        "vertex": {"type": ["integer", "string"]},
                        "del": {"$ref": "urn:nonevasive:certificate#/$defs/node"},
                        "link": {"$ref": "urn:nonevasive:certificate#/$defs/node"},
                    },
                },
            ]
        }
    },
    "$ref": "urn:nonevasive:certificate#/$defs/node",
}

DISMANTLING = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "urn:nonevasive:dismantling",
    "type": "object",
    "required": ["order"],
    "additionalProperties": False,
    "properties": {"order": {**_IDS, "minItems": 1, "uniqueItems": True}},
}

_NULLABLE_CERT = {"oneOf": [{"type": "null"}, CERTIFICATE]}

REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "urn:nonevasive:report",
    "type": "object",
    "required": ["poset", "s", "variant", "holds", "failures", "nonevasive", "certificate", "recursion"],
    "properties": {
        "poset": {"type": "string", "pattern": "^n \\d+"},
        "s": _ID,
        "variant": {"enum": ["corollary15", "theorem8", "bw"]},
        "holds": {"type": "boolean"},
        "failures": {"type": "array", "items": {"type": "object", "required": ["step"]}},
        "nonevasive": {"type": "boolean"},
        "certificate": _NULLABLE_CERT,
        "certificate_valid": {"type": "boolean"},
        "recursion": {"type": "array", "items": {"type": "object", "required": ["depth", "step"]}},
    },
}

_COUNTS = {
    "type": "object",
    "required": ["posets", "pairs", "hypothesis_holds", "verified"],
    "properties": {k: {"type": "integer", "minimum": 0}
                   for k in ("posets", "pairs", "hypothesis_holds", "verified", "count", "max_n")},
}

SUMMARY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "urn:nonevasive:summary",
    "type": "object",
    "required": ["variant", "max_n", "all_candidates", "seed", "exhaustive", "failures", "ok"],
    "additionalProperties": False,
    "properties": {
        "variant": {"enum": ["corollary15", "theorem8", "bw"]},
        "max_n": _ID,
        "all_candidates": {"type": "boolean"},
        "seed": {"type": ["integer", "null"]},
        "exhaustive": {
            **_COUNTS,
            "required": _COUNTS["required"] + ["by_n"],
            "properties": {**_COUNTS["properties"],
                           "by_n": {"type": "object", "additionalProperties": _COUNTS}},
        },
        "random": {**_COUNTS, "required": _COUNTS["required"] + ["count", "max_n"]},
        "failures": {"type": "array", "items": REPORT},
        "ok": {"type": "boolean"},
    },
}

WITNESS_REPORT = {
    "type": "object",
    "required": ["s", "variant", "bw", "W", "U", "off_core", "r_candidates", "failures"],
    "properties": {
        "s": _ID,
        "variant": {"enum": ["corollary15", "theorem8", "both", "neither"]},
        "bw": {"type": "boolean"},
        "W": _IDS,
        "U": _IDS,
        "off_core": _IDS,
        "r_candidates": _IDS,
        "failures": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "array", "minItems": 2}},
        },
    },
}

CHECK = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "urn:nonevasive:check",
    "type": "object",
    "required": ["n", "covers", "minimal", "maximal", "lattice", "irreducibles",
                 "dismantling_sequence", "certificate", "witnesses", "nonevasive",
                 "dismantlable", "corollary15", "theorem8", "bw"],
    "properties": {
        "n": _ID,
        "covers": {"type": "array", "items": {**_IDS, "minItems": 2, "maxItems": 2}},
        "minimal": _IDS,
        "maximal": _IDS,
        "lattice": {"type": "boolean"},
        "irreducibles": _IDS,
        "dismantling_sequence": {"oneOf": [{"type": "null"}, DISMANTLING]},
        "certificate": _NULLABLE_CERT,
        "witnesses": {"type": "array", "items": WITNESS_REPORT},
        **{k: {"type": "boolean"} for k in ("nonevasive", "dismantlable", "corollary15", "theorem8", "bw")},
    },
}

NONEVASIVE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "urn:nonevasive:nonevasive",
    "type": "object",
    "required": ["nonevasive", "vertices", "faces", "certificate"],
    "additionalProperties": False,
    "properties": {
        "nonevasive": {"type": "boolean"},
        "vertices": _ID,
        "faces": _ID,
        "certificate": _NULLABLE_CERT,
    },
}

DISMANTLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "urn:nonevasive:dismantle",
    "type": "object",
    "required": ["dismantlable", "sequence"],
    "additionalProperties": False,
    "properties": {
        "dismantlable": {"type": "boolean"},
        "sequence": {"oneOf": [{"type": "null"}, DISMANTLING]},
    },
}

SCHEMAS = {
    "certificate": CERTIFICATE,
    "dismantling": DISMANTLING,
    "report": REPORT,
    "summary": SUMMARY,
    "check": CHECK,
    "nonevasive": NONEVASIVE,
    "dismantle": DISMANTLE,
}
