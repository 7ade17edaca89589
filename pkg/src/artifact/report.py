"""Versioned structured reports and their JSON schema."""

from __future__ import annotations

import json

import jsonschema

from .diagram import Diagram, check_hypotheses

SCHEMA_VERSION = "1.0"

_int_list = {"type": "array", "items": {"type": "integer"}}
_nullable_str = {"type": ["string", "null"]}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "artifact report",
    "type": "object",
    "required": ["version", "command", "status", "result"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "command": {"enum": ["analyze", "augment", "decompose", "enumerate",
                             "verify", "certify", "render"]},
        "status": {"enum": ["ok", "analysis-failure"]},
        "messages": {"type": "array", "items": {"type": "string"}},
        "input": {"type": "string"},
        "result": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"command": {"const": "analyze"}}},
         "then": {"properties": {"result": {"$ref": "#/$defs/analysis"}}}},
        {"if": {"properties": {"command": {"const": "decompose"}}},
         "then": {"properties": {"result": {"$ref": "#/$defs/decomposition"}}}},
        {"if": {"properties": {"command": {"const": "enumerate"}}},
         "then": {"properties": {"result": {"$ref": "#/$defs/enumeration"}}}},
        {"if": {"properties": {"command": {"const": "verify"}}},
         "then": {"properties": {"result": {"$ref": "#/$defs/verification"}}}},
        {"if": {"properties": {"command": {"const": "certify"}}},
         "then": {"properties": {"result": {"$ref": "#/$defs/certificate"}}}},
    ],
    "$defs": {
        "hypotheses": {
            "type": "object",
            "required": ["connected", "prime", "twist_reduced", "t", "h", "is_knot",
                         "hypotheses_met"],
            "properties": {
                "connected": {"type": "boolean"}, "prime": {"type": "boolean"},
                "twist_reduced": {"type": "boolean"}, "t": {"type": "integer"},
                "h": {"type": "integer"}, "is_knot": {"type": "boolean"},
                "hypotheses_met": {"type": "boolean"},
            },
        },
        "analysis": {
            "type": "object",
            "required": ["pd", "crossings", "edges", "components", "faces",
                         "twist_regions", "hypotheses"],
            "properties": {
                "pd": {"type": "string"},
                "crossings": {"type": "integer", "minimum": 1},
                "edges": {"type": "integer"},
                "components": {"type": "array", "items": _int_list},
                "faces": {"type": "array", "items": {"type": "object"}},
                "twist_regions": {"type": "array", "items": {
                    "type": "object", "required": ["index", "crossings", "n"],
                    "properties": {"n": {"type": "integer", "minimum": 1},
                                   "crossings": _int_list}}},
                "hypotheses": {"$ref": "#/$defs/hypotheses"},
            },
        },
        "curve": {
            "type": "object",
            "required": ["word", "n", "m", "area_half_pi", "segments"],
            "properties": {
                "word": {"type": "array"},
                "n": {"type": "integer", "minimum": 0},
                "m": {"type": "integer", "minimum": 0},
                "area_half_pi": {"type": "integer"},
                "length_over_pi": {"type": "string"},
                "segments": {"type": "array", "items": {"type": "object"}},
            },
        },
        "decomposition": {
            "type": "object",
            "required": ["polyhedra", "gluings", "validation", "isomorphic"],
            "properties": {
                "polyhedra": {"type": "array", "minItems": 2, "maxItems": 2},
                "gluings": {"type": "array"},
                "validation": {"type": "array", "items": {
                    "type": "object", "required": ["V", "E", "F", "checks"]}},
                "isomorphic": {"type": "boolean"},
            },
        },
        "enumeration": {
            "type": "object",
            "required": ["constraints", "count", "curves"],
            "properties": {
                "count": {"type": "integer", "minimum": 0},
                "curves": {"type": "array", "items": {"$ref": "#/$defs/curve"}},
            },
        },
        "evidence": {
            "type": "object",
            "required": ["lemma", "universe", "searched", "verified", "counterexamples"],
            "properties": {
                "verified": {"type": "boolean"},
                "searched": {"type": "integer", "minimum": 0},
                "counterexamples": {"type": "array", "items": {
                    "type": "object", "required": ["curve", "projection"],
                    "properties": {"curve": {"$ref": "#/$defs/curve"}}}},
            },
        },
        "verification": {
            "type": "object",
            "required": ["hypotheses", "evidence"],
            "properties": {
                "hypotheses": {"$ref": "#/$defs/hypotheses"},
                "evidence": {"type": "array", "items": {"$ref": "#/$defs/evidence"}},
            },
        },
        "certificate": {
            "type": "object",
            "required": ["diagram", "hypotheses", "binding", "closed", "meridional", "evidence"],
            "properties": {
                "binding": {"type": "boolean"},
                "hypotheses": {"$ref": "#/$defs/hypotheses"},
                "closed": {"type": "object", "required": ["b", "chi_bound", "genus_bound"],
                           "properties": {"b": {"type": "integer"},
                                          "chi_bound": _nullable_str,
                                          "genus_bound": {"type": "integer"}}},
                "meridional": {"type": "object",
                               "required": ["cases", "chi_bound", "visible_spheres"]},
                "evidence": {"type": "array", "items": {"$ref": "#/$defs/evidence"}},
            },
        },
    },
}


class SchemaViolation(RuntimeError):
    pass


def make_report(command: str, result: dict, *, status: str = "ok", messages=(), source=None) -> dict:
    rep = {"version": SCHEMA_VERSION, "command": command, "status": status,
           "messages": list(messages), "result": result}
    if source is not None:
        rep["input"] = source
    check(rep)
    return rep


def check(report: dict) -> None:
    try:
        jsonschema.validate(report, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaViolation(exc.message) from exc


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def analysis(d: Diagram) -> dict:
    hyp = check_hypotheses(d)
    return {
        "pd": d.serialize(),
        "crossings": len(d.crossings),
        "edges": len(d.edges),
        "components": [list(c) for c in d.components],
        "faces": [{"index": f.index, "degree": f.degree, "bigon": f.is_bigon,
                   "edges": [e for e, _ in f.boundary]} for f in d.faces],
        "twist_regions": [{"index": r.index, "crossings": list(r.crossings), "n": r.n,
                           "alternating": r.alternating, "cyclic": r.cyclic,
                           "handedness": r.handedness} for r in d.twist_regions],
        "signs": list(d.crossing_signs),
        "hypotheses": hyp.as_dict(),
    }


def to_text(report: dict) -> str:
    """Indented plain-text rendering of a report."""
    lines = [f"{report['command']}: {report['status']}"]
    lines += [f"note: {m}" for m in report.get("messages", [])]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            if all(not isinstance(x, (dict, list)) for x in obj):
                lines.append(f"{pad}{obj}")
            else:
                for i, x in enumerate(obj):
                    lines.append(f"{pad}- [{i}]")
                    walk(x, indent + 1)
        else:
            lines.append(f"{pad}{obj}")

    walk(report["result"], 1)
    return "\n".join(lines) + "\n"
