"""
Polygon Tools - determinants, gcd condition and generator lattices of 4-dimensional pairs
"""

from typing import Optional

from src.errors import InputFormatError
from src.quotient import PolygonPair, polygon_gcd_check, polygon_generator_polynomials, polygon_generators
from src.tools.envelope import failure, rejected, success
from src.tools.thom_tools import polynomial_degree


def cmd_polygon(
    client,
    input_path: Optional[str] = None,
    fixture: Optional[str] = None,
    degree: int = 2,
    allow_gcd: bool = False
) -> dict:
    """
    Generators of the equivariant cohomology of a polygon pair in degree 2 or 4.

    Args:
        client: The OrbifoldClient instance
        input_path: JSON polygon document ({"polygon": [[a, b], ...]})
        fixture: Name of a built-in polygon fixture instead of a file
        degree: Cohomological degree 2n of the generators, 2 or 4
        allow_gcd: Build the lattice even when gcd(D_k) != 1

    Returns:
        dict with 'determinants', 'gcd', 'gcd_ok', the generator lattice in the
        cyclic coordinates and the generators as face polynomials
    """
    try:
        n = polynomial_degree(degree)
        if n not in (1, 2):
            raise ValueError(f"Polygon generators live in degree 2 or 4, got {degree}.")
        polygon = client.load(input_path, fixture)
        if not isinstance(polygon, PolygonPair):
            raise InputFormatError("cmd_polygon needs the polygon shorthand {\"polygon\": [[a, b], ...]}.")
        ds, g, ok = polygon_gcd_check(polygon)
        data = {"source": client.describe(input_path, fixture), "determinants": ds, "gcd": g, "gcd_ok": ok}
        if not ok and not allow_gcd:
            return rejected(f"gcd of D = {ds} is {g}, so odd cohomology does not vanish.", data)
        lattice = polygon_generators(polygon, n, check_gcd=False)
        ring = client.face_ring(polygon)
        data.update({
            "degree": degree,
            "hnf_basis": lattice.tolist(),
            "rank": lattice.rank,
            "generators": [p.render() for p in polygon_generator_polynomials(polygon, n, ring, check_gcd=False)],
        })
        return success(data)
    except Exception as e:
        return failure(e)
