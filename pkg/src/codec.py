"""
JSON documents for graphs and characteristic pairs.

Rationals travel as "p/q" strings so the format stays exact. Output is
deterministic: dictionaries are dumped with sorted keys.
"""

import json
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from src.errors import InputFormatError, OrbifoldError
from src.graph import OrbifoldGKMGraph
from src.quotient import CharacteristicPair, PolygonPair

Document = Union[OrbifoldGKMGraph, CharacteristicPair, PolygonPair]


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def _require(doc: Mapping[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in doc:
        raise InputFormatError(f"{where}: missing key {key!r}.")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InputFormatError(f"{where}: {key!r} must be a {kind.__name__}.")
    return value


# -- graphs -------------------------------------------------------------------

def graph_to_dict(graph: OrbifoldGKMGraph) -> Dict[str, Any]:
    edges = []
    for e in graph.edges:
        dart = graph.darts[e]
        edges.append({
            "from": dart.origin,
            "to": dart.target,
            "alpha_from": graph.alpha[e].to_strings(),
            "alpha_to": graph.alpha[dart.reversal].to_strings(),
        })
    doc = {"torus_rank": graph.torus_rank, "vertices": list(graph.vertices), "edges": edges}
    if graph.name:
        doc["name"] = graph.name
    return doc


def graph_from_dict(doc: Mapping[str, Any]) -> OrbifoldGKMGraph:
    k = _require(doc, "torus_rank", int, "graph")
    vertices = _require(doc, "vertices", list, "graph")
    edges = _require(doc, "edges", list, "graph")
    if any(not isinstance(v, str) for v in vertices):
        raise InputFormatError("graph: vertex names must be strings.")
    parsed = []
    for i, edge in enumerate(edges):
        where = f"graph edge {i}"
        if not isinstance(edge, dict):
            raise InputFormatError(f"{where}: must be an object.")
        parsed.append((
            _require(edge, "from", str, where),
            _require(edge, "to", str, where),
            _require(edge, "alpha_from", list, where),
            _require(edge, "alpha_to", list, where),
        ))
    try:
        return OrbifoldGKMGraph.from_edges(k, vertices, parsed, str(doc.get("name", "")))
    except InputFormatError:
        raise
    except OrbifoldError as e:
        raise InputFormatError(f"graph: {e}") from e


# -- characteristic pairs -------------------------------------------------------

def pair_to_dict(pair: CharacteristicPair) -> Dict[str, Any]:
    names = pair.facet_names
    doc: Dict[str, Any] = {
        "n": pair.n,
        "facets": [{"name": f, "lambda": list(lam)} for f, lam in zip(names, pair.lambdas)],
        "vertices": [[names[i] for i in sorted(v)] for v in pair.vertices],
        "vertex_names": list(pair.vertex_names),
        "edges": [{"facets": [names[i] for i in sorted(e.facets)], "ends": list(e.ends)} for e in pair.edges],
    }
    if pair.h2_trivial is not None:
        doc["h2_trivial"] = pair.h2_trivial
    if pair.name:
        doc["name"] = pair.name
    return doc


def pair_from_dict(doc: Mapping[str, Any]) -> CharacteristicPair:
    n = _require(doc, "n", int, "pair")
    facets = _require(doc, "facets", list, "pair")
    vertices = _require(doc, "vertices", list, "pair")
    edges = _require(doc, "edges", list, "pair")
    parsed_facets = []
    for i, facet in enumerate(facets):
        where = f"pair facet {i}"
        if not isinstance(facet, dict):
            raise InputFormatError(f"{where}: must be an object.")
        lam = _require(facet, "lambda", list, where)
        if any(not isinstance(x, int) or isinstance(x, bool) for x in lam):
            raise InputFormatError(f"{where}: lambda entries must be integers.")
        parsed_facets.append((_require(facet, "name", str, where), lam))
    parsed_edges = []
    for i, edge in enumerate(edges):
        where = f"pair edge {i}"
        if not isinstance(edge, dict):
            raise InputFormatError(f"{where}: must be an object.")
        ends = _require(edge, "ends", list, where)
        if len(ends) != 2 or any(not isinstance(x, int) for x in ends):
            raise InputFormatError(f"{where}: 'ends' must be two vertex indices.")
        parsed_edges.append((_require(edge, "facets", list, where), (ends[0], ends[1])))
    h2 = doc.get("h2_trivial")
    return CharacteristicPair.from_names(
        n, parsed_facets, vertices, parsed_edges,
        vertex_names=doc.get("vertex_names"),
        h2_trivial=None if h2 is None else bool(h2),
        name=str(doc.get("name", "")),
    )


def polygon_to_dict(polygon: PolygonPair) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"polygon": [list(v) for v in polygon.vectors]}
    if polygon.name:
        doc["name"] = polygon.name
    return doc


def polygon_from_dict(doc: Mapping[str, Any]) -> PolygonPair:
    vectors = _require(doc, "polygon", list, "polygon")
    for i, vec in enumerate(vectors):
        if (not isinstance(vec, list) or len(vec) != 2
                or any(not isinstance(x, int) or isinstance(x, bool) for x in vec)):
            raise InputFormatError(f"polygon vector {i}: must be two integers.")
    return PolygonPair.of(vectors, str(doc.get("name", "")))


# -- dispatch -------------------------------------------------------------------

def detect_kind(doc: Any) -> str:
    """'graph', 'pair' or 'polygon'."""
    if not isinstance(doc, dict):
        raise InputFormatError("Input document must be a JSON object.")
    if "polygon" in doc:
        return "polygon"
    if "facets" in doc:
        return "pair"
    if "torus_rank" in doc:
        return "graph"
    raise InputFormatError("Cannot tell the input kind: expected 'torus_rank', 'facets' or 'polygon'.")


def from_dict(doc: Any) -> Document:
    kind = detect_kind(doc)
    if kind == "graph":
        return graph_from_dict(doc)
    if kind == "pair":
        return pair_from_dict(doc)
    return polygon_from_dict(doc)


def to_dict(document: Document) -> Dict[str, Any]:
    if isinstance(document, OrbifoldGKMGraph):
        return graph_to_dict(document)
    if isinstance(document, CharacteristicPair):
        return pair_to_dict(document)
    return polygon_to_dict(document)


def loads(text: str) -> Document:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"Malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    return from_dict(doc)


def load(path: Union[str, Path]) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(f"Cannot read {path}: {e.strerror or e}") from e
    return loads(text)
