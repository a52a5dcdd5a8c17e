"""JSON Schemas (draft 2020-12) for everything the CLI writes to stdout or disk.

Schemas are versioned through their ``$id``; campaign and certificate
documents also carry ``schema_version``.
"""

VERSION = 1
_BASE = f"https://cyclicmds.invalid/schemas/v{VERSION}"

_FIELD = {"type": "string", "pattern": r"^gf\(2\^\d+\)/0x[0-9a-f]+$"}
_ELEMENT = {"type": "string", "pattern": r"^0x[0-9a-f]+$"}
_ROW = {"type": "array", "items": _ELEMENT, "minItems": 1}

MATRIX = {
    "$id": f"{_BASE}/matrix.json",
    "type": "object",
    "required": ["field", "k", "rows"],
    "properties": {
        "field": _FIELD,
        "k": {"type": "integer", "minimum": 1},
        "rows": {"type": "array", "items": _ROW, "minItems": 1},
    },
}

PROPERTY_REPORT = {
    "$id": f"{_BASE}/property-report.json",
    "type": "object",
    "required": ["property", "verdict", "witness"],
    "properties": {
        "property": {"type": "string"},
        "verdict": {"type": "boolean"},
        "witness": {"type": ["object", "null"]},
        "elapsed_ms": {"type": "integer", "minimum": 0},
    },
}

CHECK = {"$id": f"{_BASE}/check.json", "type": "array", "items": PROPERTY_REPORT}

CAMPAIGN = {
    "$id": f"{_BASE}/campaign.json",
    "type": "object",
    "required": ["schema_version", "kind", "field", "k", "shape", "predicates", "mode",
                 "candidates_scanned", "hit_count", "hits", "exhausted"],
    "properties": {
        "schema_version": {"const": VERSION},
        "kind": {"const": "campaign"},
        "field": _FIELD,
        "k": {"type": "integer", "minimum": 1},
        "shape": {"type": "string"},
        "predicates": {"type": "array", "items": {"enum": ["orthogonal", "involutory", "mds"]}},
        "mode": {"enum": ["exhaustive", "random"]},
        "seed": {"type": ["integer", "null"]},
        "trials": {"type": ["integer", "null"]},
        "rng": {"type": ["string", "null"]},
        "chunk_size": {"type": "integer"},
        "candidates_scanned": {"type": "integer", "minimum": 0},
        "stage_counts": {"type": "object", "additionalProperties": {"type": "integer"}},
        "hit_count": {"type": "integer", "minimum": 0},
        "hits": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["row", "shape", "reports"],
                "properties": {"row": _ROW, "shape": {"type": "string"},
                               "reports": {"type": "array", "items": PROPERTY_REPORT}},
            },
        },
        "exhausted": {"type": "boolean"},
    },
}

CERTIFICATE = {
    "$id": f"{_BASE}/certificate.json",
    "type": "object",
    "required": ["schema_version", "kind", "field", "d", "k", "predicates", "campaigns", "verdict"],
    "properties": {
        "schema_version": {"const": VERSION},
        "kind": {"const": "nonexistence-2d"},
        "field": _FIELD,
        "d": {"type": "integer", "minimum": 2},
        "k": {"type": "integer"},
        "campaigns": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["g", "shape", "candidates_scanned", "exhausted",
                             "orthogonal_count", "hits", "obstructions"],
                "properties": {
                    "g": {"type": "integer"},
                    "hits": {"type": "array", "items": _ROW},
                    "obstructions": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["row", "holds", "singular_block", "rows", "cols"],
                            "properties": {"row": _ROW, "holds": {"type": "boolean"}},
                        },
                    },
                },
            },
        },
        "verdict": {"type": "boolean"},
    },
}

VERIFY = {
    "$id": f"{_BASE}/verify.json",
    "type": "object",
    "required": ["verdict", "assertions"],
    "properties": {
        "verdict": {"type": "boolean"},
        "assertions": {"type": "array", "items": PROPERTY_REPORT},
        "certificate": {"type": "string"},
    },
}

FIELD_INFO = {
    "$id": f"{_BASE}/field-info.json",
    "type": "object",
    "required": ["field", "m", "modulus", "order", "irreducible"],
    "properties": {
        "field": _FIELD,
        "m": {"type": "integer", "minimum": 1},
        "modulus": {"type": "string"},
        "order": {"type": "integer"},
        "irreducible": {"type": "boolean"},
    },
}

BY_COMMAND = {
    "construct": MATRIX,
    "check": CHECK,
    "search": CAMPAIGN,
    "verify": VERIFY,
    "field-info": FIELD_INFO,
}
