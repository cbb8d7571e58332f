"""
Graph Tools - validation, derivation from characteristic pairs, face posets
"""

from typing import Optional

from src.codec import graph_to_dict
from src.graph import OrbifoldGKMGraph, validate
from src.tools.envelope import failure, rejected, success


def cmd_validate(
    client,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None,
    gkm: bool = False
) -> dict:
    """
    Validate a graph, or a characteristic pair together with the graph it determines.

    Args:
        client: The OrbifoldClient instance
        input_path: JSON document (graph, pair or polygon shorthand)
        fixture: Name of a built-in fixture instead of a file
        gkm: Check only the GKM axioms (pairwise independence) even when k equals the valence

    Returns:
        dict with 'successful', 'data', and optional 'error' / 'error_type' fields
    """
    try:
        document = client.load(input_path, fixture)
        graph = client.as_graph(document)
        report = validate(graph, torus_mode=False if gkm else None)
        data = {"source": client.describe(input_path, fixture), **report.to_dict()}
        if not isinstance(document, OrbifoldGKMGraph):
            data["kind"] = "pair"
            data["vertex_determinants"] = client.as_pair(document).vertex_determinants()
        else:
            data["kind"] = "graph"
        if not report.ok:
            first = report.violations[0]
            where = f" at vertex {first.vertex!r}" if first.vertex is not None else ""
            return rejected(f"{len(report.violations)} violation(s); first{where}: {first.message}", data)
        return success(data)
    except Exception as e:
        return failure(e)


def cmd_derive(
    client,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None
) -> dict:
    """
    Derive the orbifold torus graph of a characteristic pair.

    The result is a graph document (usable as input again) with the extra key
    'vertex_determinants' holding |det Lambda_v| per vertex.
    """
    try:
        pair = client.as_pair(client.load(input_path, fixture))
        graph = client.as_graph(pair)
        data = graph_to_dict(graph)
        data["vertex_determinants"] = pair.vertex_determinants()
        return success(data)
    except Exception as e:
        return failure(e)


def cmd_faces(
    client,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None
) -> dict:
    """
    List the faces of a torus graph by dimension, with vertices and edge ids.
    """
    try:
        ring = client.face_ring(client.load(input_path, fixture))
        return success({"source": client.describe(input_path, fixture), **ring.poset.to_dict()})
    except Exception as e:
        return failure(e)
