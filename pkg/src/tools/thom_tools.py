"""
Thom Tools - rational Thom classes, minimal multipliers, integrality lattices
"""

from typing import Optional

from src.graph import OrbifoldGKMGraph
from src.quotient import linear_global_elements
from src.tools.envelope import failure, success


def polynomial_degree(degree: int) -> int:
    """Cohomological degree 2d -> d."""
    if degree < 0 or degree % 2:
        raise ValueError(f"Cohomological degree must be even and non-negative, got {degree}.")
    return degree // 2


def cmd_thom(
    client,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None,
    face: Optional[str] = None
) -> dict:
    """
    Rational Thom classes of the faces and the least multiplier making each integral.

    Args:
        client: The OrbifoldClient instance
        input_path: JSON document (graph, pair or polygon shorthand)
        fixture: Name of a built-in fixture instead of a file
        face: Restrict to one face, by name (facet names for pairs)

    Returns:
        dict with 'successful', 'data', and optional 'error' fields. For pairs
        each facet also carries 'lcm_bound' and the data holds 'linear_elements'.
    """
    try:
        document = client.load(input_path, fixture)
        ring = client.face_ring(document)
        if face:
            faces = [ring.face(face)]
        else:
            faces = [f for f in ring.poset.faces if f.dim < ring.n]
        determinants = None
        if not isinstance(document, OrbifoldGKMGraph):
            determinants = client.as_pair(document).vertex_determinants()
        listing = []
        for f in faces:
            entry = {
                "name": f.name,
                "dim": f.dim,
                "degree": 2 * ring.weight(f),
                "values": ring.thom_class(f).to_dict()["values"],
                "minimal_multiplier": ring.minimal_thom(f),
            }
            if determinants is not None and f.dim == ring.n - 1:
                entry["lcm_bound"] = ring.lcm_bound(f, determinants)
            listing.append(entry)
        data = {"source": client.describe(input_path, fixture), "faces": listing}
        if determinants is not None:
            pair = client.as_pair(document)
            data["linear_elements"] = [p.render() for p in linear_global_elements(pair, ring)]
        return success(data)
    except Exception as e:
        return failure(e)


def cmd_lattice(
    client,
    degree: int,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None
) -> dict:
    """
    Integrality lattice of the face polynomials in one cohomological degree.

    Args:
        client: The OrbifoldClient instance
        degree: Cohomological degree 2d (even, at least 2)
        input_path: JSON document (graph, pair or polygon shorthand)
        fixture: Name of a built-in fixture instead of a file
    """
    try:
        d = polynomial_degree(degree)
        ring = client.face_ring(client.load(input_path, fixture))
        lattice = ring.integrality_lattice(d)
        data = {"source": client.describe(input_path, fixture), **lattice.to_dict(), "rank": lattice.lattice.rank}
        if lattice.lattice.rank == lattice.lattice.ambient_dim:
            data["index"] = lattice.lattice.index()
        return success(data)
    except Exception as e:
        return failure(e)
