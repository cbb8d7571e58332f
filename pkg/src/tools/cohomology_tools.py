"""
Cohomology Tools - graded bases, ordinary ranks, degreewise isomorphism checks
"""

from typing import Optional

from src.cohomology import basis, class_lattice, is_palindromic, ordinary_ranks, rational_dimension
from src.config import settings
from src.tools.envelope import failure, rejected, success


def cmd_cohomology(
    client,
    max_degree: int,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None,
    mode: Optional[str] = None
) -> dict:
    """
    Graph equivariant cohomology up to polynomial degree max_degree.

    Args:
        client: The OrbifoldClient instance
        max_degree: Largest polynomial degree d (cohomological degree 2d)
        input_path: JSON document (graph, pair or polygon shorthand)
        fixture: Name of a built-in fixture instead of a file
        mode: 'integral' (Z-bases, default) or 'rational' (dimensions over Q only)

    Returns:
        dict with per-degree ranks, bases in integral mode, and the ordinary
        ranks modulo the constant degree-2 classes
    """
    try:
        mode = mode or settings.default_mode
        if mode not in ("integral", "rational"):
            raise ValueError(f"Mode must be 'integral' or 'rational', got {mode!r}.")
        if max_degree < 0:
            raise ValueError(f"Maximum degree must be non-negative, got {max_degree}.")
        graph = client.as_graph(client.load(input_path, fixture))
        degrees = []
        for d in range(max_degree + 1):
            if mode == "integral":
                classes = basis(graph, d)
                degrees.append({"degree": 2 * d, "rank": class_lattice(graph, d).rank,
                                "basis": [c.to_dict()["values"] for c in classes]})
            else:
                degrees.append({"degree": 2 * d, "rank": rational_dimension(graph, d)})
        ranks = ordinary_ranks(graph, max_degree)
        return success({
            "source": client.describe(input_path, fixture),
            "mode": mode,
            "degrees": degrees,
            "ordinary_ranks": [list(r) for r in ranks],
            "palindromic": is_palindromic(ranks),
        })
    except Exception as e:
        return failure(e)


def cmd_verify(
    client,
    max_degree: int,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None
) -> dict:
    """
    Check degree by degree (d = 1..max_degree) that the integral face
    polynomials map onto the graph cohomology and that the relations vanish.
    """
    try:
        if max_degree < 1:
            raise ValueError(f"Maximum degree must be at least 1, got {max_degree}.")
        ring = client.face_ring(client.load(input_path, fixture))
        reports = [ring.iso_report(d) for d in range(1, max_degree + 1)]
        data = {
            "source": client.describe(input_path, fixture),
            "degrees": [r.to_dict() for r in reports],
            "ok": all(r.ok for r in reports),
        }
        if not data["ok"]:
            failed = [r.degree for r in reports if not r.ok]
            return rejected(f"Isomorphism check failed in degrees {failed}.", data)
        return success(data)
    except Exception as e:
        return failure(e)
