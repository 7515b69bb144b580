"""JSON workspaces and DOT export.

A workspace file looks like::

    {"derivk": 1, "field": "Fp:32003", "seed": 0,
     "entries": {"name": {"kind": "poset" | "complex" | "representation" | "bimodule", ...}}}

Poset elements are ints, strings or (nested) lists standing for tuples.
Matrices are row-major lists: integers over F_p, "p/q" strings over Q.
Posets store their covering relations; a bimodule body omits its shape,
which is left x right^op.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

import jsonschema

from .bimodules import Bimodule
from .chains import ChainComplex, ChainError, ChainMap
from .linalg import F32003, Field, Matrix
from .posets import Poset, PosetError, opposite, product, sort_key
from .reps import Representation, RepresentationError, homology_table

FORMAT_VERSION = 1

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": ["integer", "string"]}}}
_POSET = {
    "type": "object",
    "required": ["elements", "relations"],
    "properties": {"elements": {"type": "array"},
                   "relations": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}}},
}
_COMPLEX = {
    "type": "object",
    "required": ["degrees"],
    "properties": {
        "degrees": {"type": "array", "items": {"type": "object", "required": ["n", "dim"],
                                               "properties": {"n": {"type": "integer"},
                                                              "dim": {"type": "integer", "minimum": 0}}}},
        "diffs": {"type": "array", "items": {"type": "object", "required": ["n", "matrix"],
                                             "properties": {"n": {"type": "integer"}, "matrix": _MATRIX}}},
    },
}
_MAPS = {"type": "array", "items": {"type": "object", "required": ["from", "to", "components"],
                                    "properties": {"components": {"type": "array", "items": {
                                        "type": "object", "required": ["n", "matrix"],
                                        "properties": {"n": {"type": "integer"}, "matrix": _MATRIX}}}}}}
_BODY = {
    "type": "object",
    "required": ["objects"],
    "properties": {"objects": {"type": "array", "items": {"type": "object", "required": ["at", "complex"],
                                                          "properties": {"complex": _COMPLEX}}},
                   "maps": _MAPS},
}
_REP = {"allOf": [_BODY, {"type": "object", "required": ["shape"], "properties": {"shape": _POSET}}]}
_BIMODULE = {"type": "object", "required": ["left", "right", "body"],
             "properties": {"left": _POSET, "right": _POSET, "body": _BODY}}
SCHEMA = {
    "type": "object",
    "required": ["derivk", "field", "entries"],
    "properties": {
        "derivk": {"const": FORMAT_VERSION},
        "field": {"type": "string", "pattern": r"^(Q|Fp:\d+)$"},
        "seed": {"type": "integer"},
        "entries": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["kind"],
            "properties": {"kind": {"enum": ["poset", "complex", "representation", "bimodule"]}},
            "allOf": [
                {"if": {"properties": {"kind": {"const": "poset"}}}, "then": _POSET},
                {"if": {"properties": {"kind": {"const": "complex"}}}, "then": _COMPLEX},
                {"if": {"properties": {"kind": {"const": "representation"}}}, "then": _REP},
                {"if": {"properties": {"kind": {"const": "bimodule"}}}, "then": _BIMODULE},
            ]}},
    },
}


class SchemaError(ValueError):
    pass


@dataclass
class Workspace:
    field: Field = F32003
    seed: int = 0
    entries: dict = dc_field(default_factory=dict)

    def add(self, name: str, obj):
        if name in self.entries:
            raise SchemaError(f"duplicate entry name {name!r}")
        self.entries[name] = obj

    def __getitem__(self, name):
        try:
            return self.entries[name]
        except KeyError:
            raise SchemaError(f"no entry named {name!r}") from None


# encoding


def encode_element(e):
    if isinstance(e, tuple):
        return [encode_element(x) for x in e]
    return e


def decode_element(e):
    if isinstance(e, list):
        return tuple(decode_element(x) for x in e)
    return e


def _encode_scalar(x, field: Field):
    if field.p is not None:
        return int(x)
    q = Fraction(x)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode_matrix(m: Matrix) -> list:
    return [[_encode_scalar(x, m.field) for x in row] for row in m.tolist()]


def encode_poset(p: Poset) -> dict:
    return {"elements": [encode_element(e) for e in p.elements],
            "relations": [[encode_element(a), encode_element(b)] for a, b in p.covers]}


def encode_complex(c: ChainComplex) -> dict:
    return {"degrees": [{"n": n, "dim": c.dims[n]} for n in sorted(c.dims)],
            "diffs": [{"n": n, "matrix": encode_matrix(c.diffs[n])} for n in sorted(c.diffs)]}


def _encode_body(x: Representation) -> dict:
    objs = [{"at": encode_element(e), "complex": encode_complex(x.objects[e])} for e in x.shape.elements]
    maps = []
    for a, b in x.shape.covers:
        f = x.maps[(a, b)]
        if f.comps:
            maps.append({"from": encode_element(a), "to": encode_element(b),
                         "components": [{"n": n, "matrix": encode_matrix(f.comps[n])} for n in sorted(f.comps)]})
    return {"objects": objs, "maps": maps}


def encode_entry(obj) -> dict:
    if isinstance(obj, Poset):
        return {"kind": "poset", **encode_poset(obj)}
    if isinstance(obj, ChainComplex):
        return {"kind": "complex", **encode_complex(obj)}
    if isinstance(obj, Representation):
        return {"kind": "representation", "shape": encode_poset(obj.shape), **_encode_body(obj)}
    if isinstance(obj, Bimodule):
        return {"kind": "bimodule", "left": encode_poset(obj.left), "right": encode_poset(obj.right),
                "body": _encode_body(obj.body)}
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


def _field_of(obj) -> Field:
    return obj.field if not isinstance(obj, Poset) else None


def dumps(ws: Workspace) -> str:
    doc = {"derivk": FORMAT_VERSION, "field": str(ws.field), "seed": ws.seed,
           "entries": {name: encode_entry(obj) for name, obj in ws.entries.items()}}
    for name, obj in ws.entries.items():
        f = _field_of(obj)
        if f is not None and f != ws.field:
            raise SchemaError(f"entry {name!r} is over {f}, workspace is over {ws.field}")
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def save(ws: Workspace, path) -> None:
    Path(path).write_text(dumps(ws), encoding="utf-8")


# decoding


def _matrix(data, rows: int, cols: int, field: Field, where: str) -> Matrix:
    if len(data) != rows or any(len(r) != cols for r in data):
        got = (len(data), len(data[0]) if data else 0)
        raise SchemaError(f"{where}: matrix has shape {got}, expected {(rows, cols)}")
    try:
        return Matrix(field, rows, cols, data)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: bad matrix entry ({exc})") from None


def decode_poset(d: dict, where: str = "poset") -> Poset:
    try:
        elems = [decode_element(e) for e in d["elements"]]
        rels = [(decode_element(a), decode_element(b)) for a, b in d["relations"]]
        return Poset(elems, rels)
    except PosetError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def decode_complex(d: dict, field: Field, where: str = "complex") -> ChainComplex:
    dims = {}
    for i, item in enumerate(d["degrees"]):
        if item["n"] in dims:
            raise SchemaError(f"{where}.degrees[{i}]: degree {item['n']} repeated")
        dims[item["n"]] = item["dim"]
    diffs = {}
    for i, item in enumerate(d.get("diffs", [])):
        n = item["n"]
        diffs[n] = _matrix(item["matrix"], dims.get(n - 1, 0), dims.get(n, 0), field, f"{where}.diffs[{i}]")
    try:
        return ChainComplex(field, dims, diffs)
    except ChainError as exc:
        raise SchemaError(f"{where}: malformed differential: {exc}") from None


def _decode_body(d: dict, shape: Poset, field: Field, where: str) -> Representation:
    objs = {}
    for i, item in enumerate(d["objects"]):
        e = decode_element(item["at"])
        if e not in shape:
            raise SchemaError(f"{where}.objects[{i}]: {e!r} is not an element of the shape")
        if e in objs:
            raise SchemaError(f"{where}.objects[{i}]: {e!r} given twice")
        objs[e] = decode_complex(item["complex"], field, f"{where}.objects[{i}].complex")
    missing = [e for e in shape.elements if e not in objs]
    if missing:
        raise SchemaError(f"{where}.objects: no complex at {missing[0]!r}")
    covers = set(shape.covers)
    maps = {}
    for i, item in enumerate(d.get("maps", [])):
        a, b = decode_element(item["from"]), decode_element(item["to"])
        if (a, b) not in covers:
            raise SchemaError(f"{where}.maps[{i}]: {a!r} -> {b!r} is not a covering relation")
        src, tgt = objs[a], objs[b]
        comps = {c["n"]: _matrix(c["matrix"], tgt.dim(c["n"]), src.dim(c["n"]), field,
                                 f"{where}.maps[{i}].components[{j}]") for j, c in enumerate(item["components"])}
        try:
            maps[(a, b)] = ChainMap(src, tgt, comps)
        except ChainError as exc:
            raise SchemaError(f"{where}.maps[{i}]: {exc}") from None
    try:
        return Representation(shape, objs, maps, field=field)
    except RepresentationError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def decode_entry(d: dict, field: Field, where: str = "entry"):
    kind = d["kind"]
    if kind == "poset":
        return decode_poset(d, where)
    if kind == "complex":
        return decode_complex(d, field, where)
    if kind == "representation":
        return _decode_body(d, decode_poset(d["shape"], f"{where}.shape"), field, where)
    left = decode_poset(d["left"], f"{where}.left")
    right = decode_poset(d["right"], f"{where}.right")
    body = _decode_body(d["body"], product(left, opposite(right)), field, f"{where}.body")
    return Bimodule(left, right, body)


def loads(text: str) -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    errors = sorted(jsonschema.Draft202012Validator(SCHEMA).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = ".".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {e.message}")
    field = Field.parse(doc["field"])
    ws = Workspace(field, doc.get("seed", 0))
    for name in sorted(doc["entries"]):
        ws.add(name, decode_entry(doc["entries"][name], field, f"entries.{name}"))
    return ws


def load(path) -> Workspace:
    return loads(Path(path).read_text(encoding="utf-8"))


def canonicalize(text: str) -> str:
    return dumps(loads(text))


# DOT


def _node_id(e) -> str:
    return json.dumps(repr(e), ensure_ascii=False)


def _grid_pos(elems) -> dict | None:
    if all(isinstance(e, tuple) and len(e) == 2 and all(isinstance(v, int) for v in e) for e in elems):
        return {e: f"{e[1]},{-e[0]}!" for e in elems}
    return None


def export_dot(obj, name: str = "G") -> str:
    """A DOT digraph of the covering relations; representations carry homology labels."""
    if isinstance(obj, Bimodule):
        obj = obj.body
    if isinstance(obj, Representation):
        shape = obj.shape
        h = homology_table(obj)
        labels = {}
        for e in shape.elements:
            dims = h.at(e)
            vec = " ".join(f"H{n}={k}" for n, k in sorted(dims.items())) or "0"
            labels[e] = f"{e!r}\n{vec}"
    elif isinstance(obj, Poset):
        shape = obj
        labels = {e: repr(e) for e in shape.elements}
    else:
        raise SchemaError(f"cannot draw {type(obj).__name__}")
    pos = _grid_pos(shape.elements)
    lines = [f"digraph {json.dumps(name)} {{", "  node [shape=box];"]
    for e in sorted(shape.elements, key=sort_key):
        extra = f", pos=\"{pos[e]}\"" if pos else ""
        lines.append(f"  {_node_id(e)} [label={json.dumps(labels[e], ensure_ascii=False)}{extra}];")
    for a, b in sorted(shape.covers, key=sort_key):
        lines.append(f"  {_node_id(a)} -> {_node_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# bundled fixtures

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def load_fixture(name: str):
    path = FIXTURE_DIR / f"{name}.json"
    if not path.exists():
        raise SchemaError(f"no bundled fixture {name!r}")
    return load(path)[name]
