"""File formats: the class-model JSON interchange file, the metrics CSV and
the defects CSV."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import jsonschema

from .errors import SchemaError
from .model import METRICS, ClassInfo, ClassModel, DefectRow, MethodInfo, MetricsRow

_NAME_LIST = {"type": "array", "items": {"type": "string"}}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["classes"],
    "properties": {
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "extends": {"type": ["string", "null"]},
                    "external": {"type": "boolean"},
                    "implements": _NAME_LIST,
                    "fields": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "type"],
                            "properties": {
                                "name": {"type": "string"},
                                "type": {"type": "string"},
                            },
                            "additionalProperties": False,
                        },
                    },
                    "methods": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "arity"],
                            "additionalProperties": False,
                            "properties": {
                                "name": {"type": "string"},
                                "arity": {"type": "integer", "minimum": 0},
                                "params": _NAME_LIST,
                                "returns": {"type": "string"},
                                "constructor": {"type": "boolean"},
                                "calls": {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "required": ["name", "arity"],
                                        "additionalProperties": False,
                                        "properties": {
                                            "recv": {"type": ["string", "null"]},
                                            "name": {"type": "string"},
                                            "arity": {"type": "integer", "minimum": 0},
                                        },
                                    },
                                },
                                "uses_fields": _NAME_LIST,
                                "ref_types": _NAME_LIST,
                            },
                        },
                    },
                },
            },
        },
        "modules": {"type": "object", "additionalProperties": {"type": "string"}},
    },
}


def _call_key(c):
    return (c.recv or "", c.name, c.arity)


def model_to_dict(model: ClassModel) -> dict:
    classes = []
    for info in model.classes.values():
        classes.append(
            {
                "name": info.name,
                "extends": info.superclass,
                "external": info.external,
                "implements": sorted(info.interfaces),
                "fields": [{"name": f.name, "type": f.type} for f in info.fields],
                "methods": [
                    {
                        "name": m.name,
                        "arity": m.arity,
                        "params": list(m.param_types),
                        "returns": m.return_type,
                        "constructor": m.is_constructor,
                        "calls": [
                            {"recv": c.recv, "name": c.name, "arity": c.arity}
                            for c in sorted(m.invocations, key=_call_key)
                        ],
                        "uses_fields": sorted(m.field_uses),
                        "ref_types": sorted(m.referenced_types),
                    }
                    for m in info.methods
                ],
            }
        )
    return {"classes": classes, "modules": dict(model.module_map)}


_VALIDATOR = jsonschema.validators.validator_for(MODEL_SCHEMA)(MODEL_SCHEMA)


def model_from_dict(doc) -> ClassModel:
    e = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(doc))
    if e is not None:
        loc = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(loc, e.message) from None
    classes = {}
    for ci, c in enumerate(doc["classes"]):
        methods = []
        for mi, m in enumerate(c.get("methods", [])):
            params = m.get("params", ["?"] * m["arity"])
            if len(params) != m["arity"]:
                raise SchemaError(
                    f"classes/{ci}/methods/{mi}", "arity does not match params length"
                )
            methods.append(
                MethodInfo(
                    name=m["name"],
                    param_types=tuple(params),
                    return_type=m.get("returns", "void"),
                    is_constructor=m.get("constructor", False),
                    invocations=frozenset(
                        (k.get("recv"), k["name"], k["arity"]) for k in m.get("calls", [])
                    ),
                    field_uses=frozenset(m.get("uses_fields", [])),
                    referenced_types=frozenset(m.get("ref_types", [])),
                )
            )
        sup = c.get("extends")
        if c.get("external", False) and sup is None:
            raise SchemaError(f"classes/{ci}", "external flag set without 'extends'")
        if c["name"] in classes:
            raise SchemaError(f"classes/{ci}/name", f"duplicate class {c['name']!r}")
        classes[c["name"]] = ClassInfo(
            name=c["name"],
            superclass=sup,
            external=c.get("external", False),
            interfaces=frozenset(c.get("implements", [])),
            fields=tuple((f["name"], f["type"]) for f in c.get("fields", [])),
            methods=tuple(methods),
        )
    return ClassModel(classes, doc.get("modules", {}))


def dumps_model(model: ClassModel) -> str:
    return json.dumps(model_to_dict(model), indent=2, sort_keys=False) + "\n"


def save_model_file(model: ClassModel, path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def load_model_file(path) -> ClassModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None
    return model_from_dict(doc)


# -- CSV tables ------------------------------------------------------------

def _read_csv(path, required):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(str(path), "missing column(s) " + ", ".join(missing))
        return list(enumerate(reader, start=2))


def _int(value, where):
    try:
        f = float(value)
    except (TypeError, ValueError):
        raise SchemaError(where, f"not a number: {value!r}") from None
    if f != int(f):
        raise SchemaError(where, f"not an integer: {value!r}")
    return int(f)


def read_metrics_csv(path) -> list[MetricsRow]:
    rows = []
    seen = set()
    for lineno, rec in _read_csv(path, ("module",) + METRICS):
        where = f"{path}:{lineno}"
        mod = rec["module"].strip()
        if mod in seen:
            raise SchemaError(where, f"duplicate module {mod!r}")
        seen.add(mod)
        vals = {m: _int(rec[m], where) for m in METRICS}
        try:
            rows.append(MetricsRow(mod, **vals))
        except ValueError as e:
            raise SchemaError(where, str(e)) from None
    return rows


def metrics_csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("module",) + METRICS)
    for r in rows:
        w.writerow([r.module] + [r.value(m) for m in METRICS])
    return buf.getvalue()


def write_metrics_csv(rows, path) -> None:
    Path(path).write_text(metrics_csv_text(rows), encoding="utf-8")


def read_defects_csv(path) -> list[DefectRow]:
    rows = []
    seen = set()
    for lineno, rec in _read_csv(path, ("module", "defects")):
        where = f"{path}:{lineno}"
        mod = rec["module"].strip()
        if mod in seen:
            raise SchemaError(where, f"duplicate module {mod!r}")
        seen.add(mod)
        hours = rec.get("fix_hours")
        try:
            hours = float(hours) if hours not in (None, "") else 0.0
            rows.append(DefectRow(mod, _int(rec["defects"], where), hours))
        except ValueError as e:
            raise SchemaError(where, str(e)) from None
    return rows
