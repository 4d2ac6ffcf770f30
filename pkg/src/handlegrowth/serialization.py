"""JSON documents: schemas, parsing and serialisation.

Every document carries ``"schema": "<name>/1"``.  Parsing is strict: a
document is first validated against its JSON schema (errors carry the field
path), then converted to library objects, which may raise domain errors.
"""
import json
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import HandlebodyError
from .freegroup import FreeEndomorphism, format_word
from .graphs import Graph, GraphMap, format_path
from .penner import DualArc, PennerPair, parse_twist_word
from .spectral import NonNegMatrix
from .tightening import TighteningMove

__all__ = [
    "SCHEMAS",
    "SchemaError",
    "DocumentError",
    "load_json",
    "validate_document",
    "load_document",
    "dumps",
    "dataset_path",
    "list_datasets",
    "matrix_from_doc",
    "matrix_to_doc",
    "moves_from_doc",
    "move_to_doc",
    "graph_from_doc",
    "graph_to_doc",
    "graphmap_from_doc",
    "graphmap_to_doc",
    "penner_from_doc",
    "penner_to_doc",
    "arc_from_doc",
    "arc_to_doc",
    "endo_from_doc",
    "endo_to_doc",
]


class DocumentError(Exception):
    """Malformed JSON text (CLI exit status 2)."""


class SchemaError(Exception):
    """Well-formed JSON that does not match its schema (CLI exit status 3)."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


_id = {"type": ["string", "integer"]}
_nonneg = {"type": "integer", "minimum": 0}
_move = {
    "type": "object",
    "required": ["row", "delta"],
    "properties": {
        "row": _id,
        "delta": {"type": "array", "items": {"type": "integer"}},
        "realizability": {"type": "string"},
    },
}
_graph = {
    "type": "object",
    "required": ["vertices", "edges"],
    "properties": {
        "vertices": {"type": "array", "items": _id},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "from", "to"],
                "properties": {"id": {"type": "string"}, "from": _id, "to": _id},
            },
        },
        "inverse": {"type": "object", "additionalProperties": {"type": "string"}},
    },
}
_path = {"type": ["string", "array"]}
_arc = {
    "type": "object",
    "required": ["gamma"],
    "properties": {
        "gamma": {"type": "string"},
        "meets": _nonneg,
        "other_intersections": {"type": "object", "additionalProperties": _nonneg},
    },
}
_word = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["curve", "sign"],
        "properties": {"curve": {"type": "string"}, "sign": {"enum": ["+", "-"]}},
    },
}


def _schema(name, body):
    body = dict(body)
    body.setdefault("type", "object")
    props = dict(body.get("properties", {}))
    props["schema"] = {"const": name}
    props.setdefault("name", {"type": "string"})
    props.setdefault("description", {"type": "string"})
    body["properties"] = props
    body["required"] = ["schema"] + list(body.get("required", []))
    return body


SCHEMAS = {
    "matrix/1": _schema("matrix/1", {
        "required": ["matrix"],
        "properties": {
            "matrix": {"type": "array", "minItems": 1, "items": {"type": "array", "items": _nonneg}},
            "labels": {"type": "array", "items": {"type": "string"}},
            "moves": {"type": "array", "items": _move},
        },
    }),
    "move/1": _schema("move/1", {
        "properties": {
            "row": _id,
            "delta": {"type": "array", "items": {"type": "integer"}},
            "moves": {"type": "array", "items": _move},
        },
        "anyOf": [{"required": ["row", "delta"]}, {"required": ["moves"]}],
    }),
    "graph/1": _schema("graph/1", _graph),
    "graphmap/1": _schema("graphmap/1", {
        "required": ["edge_map"],
        "properties": {
            "graph": _graph,
            "source": _graph,
            "target": _graph,
            "vertex_map": {"type": "object"},
            "edge_map": {"type": "object", "additionalProperties": _path},
            "tree": {"type": "array", "items": {"type": "string"}},
            "basepoint": _id,
            "carrier": {
                "type": "object",
                "required": ["edge_map"],
                "properties": {"edge_map": {"type": "object", "additionalProperties": _path}},
            },
        },
        "oneOf": [{"required": ["graph"]}, {"required": ["source", "target"]}],
    }),
    "penner/1": _schema("penner/1", {
        "required": ["C", "D", "intersections"],
        "properties": {
            "genus": _nonneg,
            "boundary": _nonneg,
            "C": {"type": "array", "items": {"type": "string"}},
            "D": {"type": "array", "items": {"type": "string"}},
            "intersections": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [{"type": "string"}, {"type": "string"}, _nonneg],
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
            "certificates": {
                "type": "object",
                "properties": {"no_parallel": {"type": "boolean"}, "fills": {"type": "boolean"}},
            },
            "word": _word,
            "arc": _arc,
        },
    }),
    "arc/1": _schema("arc/1", _arc),
    "endo/1": _schema("endo/1", {
        "required": ["images"],
        "properties": {"rank": {"type": "integer", "minimum": 1}, "images": {"type": "array", "items": {"type": "string"}}},
    }),
}


def load_json(text_or_path):
    """Parse JSON text (or a file); syntax errors become :class:`DocumentError`."""
    if isinstance(text_or_path, Path):
        text = text_or_path.read_text(encoding="utf-8")
    else:
        text = text_or_path
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}") from None


def _format_path(parts):
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate_document(doc, expected=None):
    """Return the schema name of ``doc`` or raise :class:`SchemaError`."""
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object", "$")
    name = doc.get("schema")
    if name not in SCHEMAS:
        raise SchemaError(f"unknown or missing schema {name!r}; expected one of {sorted(SCHEMAS)}", "$.schema")
    if expected is not None and name not in expected:
        raise SchemaError(f"expected schema {' or '.join(expected)}, got {name}", "$.schema")
    validator = jsonschema.Draft202012Validator(SCHEMAS[name])
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _format_path(err.absolute_path))
    return name


def load_document(path, expected=None):
    doc = load_json(Path(path))
    return validate_document(doc, expected), doc


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dataset_path(name):
    """Path of a shipped dataset, e.g. ``dataset_path("paper_M.json")``."""
    res = resources.files("handlegrowth") / "datasets" / name
    if not res.is_file():
        raise FileNotFoundError(f"no shipped dataset named {name!r}")
    return Path(str(res))


def list_datasets():
    root = resources.files("handlegrowth") / "datasets"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def _row_index(row, labels):
    if isinstance(row, int):
        return row
    if labels and row in labels:
        return labels.index(row)
    raise HandlebodyError(f"unknown row label {row!r}")


def matrix_from_doc(doc):
    """``(NonNegMatrix, labels)``; labels default to ``None``."""
    m = NonNegMatrix(doc["matrix"])
    labels = doc.get("labels")
    if labels is not None and len(labels) != m.dim:
        raise SchemaError("labels must have one entry per row", "$.labels")
    return m, labels


def matrix_to_doc(m, labels=None, moves=None, **extra):
    doc = {"schema": "matrix/1", "matrix": m.tolist()}
    if labels is not None:
        doc["labels"] = list(labels)
    if moves:
        doc["moves"] = [move_to_doc(mv, labels) for mv in moves]
    doc.update(extra)
    return doc


def _move_from_obj(obj, labels):
    kw = {}
    if "realizability" in obj:
        kw["realizability"] = obj["realizability"]
    return TighteningMove(_row_index(obj["row"], labels), tuple(obj["delta"]), **kw)


def moves_from_doc(doc, labels=None):
    if "moves" in doc:
        return [_move_from_obj(o, labels) for o in doc["moves"]]
    if "row" in doc:
        return [_move_from_obj(doc, labels)]
    return []


def move_to_doc(move, labels=None):
    row = labels[move.row] if labels else move.row
    out = {"row": row, "delta": list(move.delta)}
    if move.realizability != "user-asserted":
        out["realizability"] = move.realizability
    return out


def graph_from_doc(obj):
    return Graph(obj["vertices"], [(e["id"], e["from"], e["to"]) for e in obj["edges"]], inverse=obj.get("inverse"))


def graph_to_doc(g, schema=True):
    out = {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "from": g.endpoints(e)[0], "to": g.endpoints(e)[1]} for e in g.edges],
    }
    default_inv = {}
    for e in g.edges:
        default_inv[e], default_inv["~" + e] = "~" + e, e
    if g.inverse != default_inv:
        out["inverse"] = dict(g.inverse)
    if schema:
        out = {"schema": "graph/1", **out}
    return out


def graphmap_from_doc(doc):
    """``(GraphMap, extras)`` where extras holds ``tree``, ``basepoint``, ``carrier``."""
    if "graph" in doc:
        source = target = graph_from_doc(doc["graph"])
    else:
        source, target = graph_from_doc(doc["source"]), graph_from_doc(doc["target"])
    vmap = doc.get("vertex_map")
    if vmap is None:
        if len(source.vertices) == 1 and len(target.vertices) == 1:
            vmap = {source.vertices[0]: target.vertices[0]}
        else:
            raise SchemaError("vertex_map is required unless both graphs have one vertex", "$.vertex_map")
    f = GraphMap(source, target, vmap, doc["edge_map"])
    extras = {"tree": doc.get("tree", []), "basepoint": doc.get("basepoint")}
    if "carrier" in doc:
        extras["carrier"] = GraphMap(source, source, vmap, doc["carrier"]["edge_map"])
    return f, extras


def graphmap_to_doc(f, tree=None, basepoint=None):
    doc = {"schema": "graphmap/1"}
    if f.is_endomorphism:
        doc["graph"] = graph_to_doc(f.source, schema=False)
    else:
        doc["source"] = graph_to_doc(f.source, schema=False)
        doc["target"] = graph_to_doc(f.target, schema=False)
    doc["vertex_map"] = dict(f.vertex_map)
    doc["edge_map"] = {e: format_path(p) for e, p in f.edge_map.items()}
    if tree:
        doc["tree"] = list(tree)
    if basepoint is not None:
        doc["basepoint"] = basepoint
    return doc


def penner_from_doc(doc):
    """``(PennerPair, word or None, DualArc or None)``."""
    pair = PennerPair(
        doc["C"], doc["D"],
        {(x, y): n for x, y, n in doc["intersections"]},
        genus=doc.get("genus"), boundary=doc.get("boundary"),
        certificates=doc.get("certificates"),
    )
    word = parse_twist_word(doc["word"]) if "word" in doc else None
    arc = arc_from_doc(doc["arc"]) if "arc" in doc else None
    return pair, word, arc


def penner_to_doc(p, word=None, arc=None):
    doc = {"schema": "penner/1", "C": list(p.C), "D": list(p.D)}
    if p.genus is not None:
        doc["genus"] = p.genus
    if p.boundary is not None:
        doc["boundary"] = p.boundary
    names = p.curves
    pairs = []
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            k = int(p.intersections[a, b])
            if k:
                pairs.append([names[a], names[b], k])
    doc["intersections"] = pairs
    if p.certificates:
        doc["certificates"] = dict(p.certificates)
    if word is not None:
        doc["word"] = [{"curve": c, "sign": "+" if s > 0 else "-"} for c, s in word]
    if arc is not None:
        doc["arc"] = arc_to_doc(arc, schema=False)
    return doc


def arc_from_doc(obj):
    return DualArc(obj["gamma"], obj.get("meets", 1), dict(obj.get("other_intersections", {})))


def arc_to_doc(arc, schema=True):
    out = {"gamma": arc.gamma, "meets": arc.meets}
    if arc.other_intersections:
        out["other_intersections"] = dict(arc.other_intersections)
    return {"schema": "arc/1", **out} if schema else out


def endo_from_doc(doc):
    return FreeEndomorphism(doc["images"], rank=doc.get("rank"))


def endo_to_doc(e):
    return {"schema": "endo/1", "rank": e.rank, "images": [format_word(w) for w in e.images]}
