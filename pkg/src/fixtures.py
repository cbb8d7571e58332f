"""
Fixture corpus: small graphs, characteristic pairs and polygons with known answers.
"""

from typing import Callable, Dict, List, Tuple

from src.codec import Document, detect_kind, to_dict
from src.errors import InputFormatError
from src.graph import OrbifoldGKMGraph
from src.quotient import CharacteristicPair, PolygonPair, simplex_pair


def spindle(m: int, n: int) -> OrbifoldGKMGraph:
    """Two fixed points with local groups Z/m and Z/n, one edge."""
    return OrbifoldGKMGraph.from_edges(1, ["p", "q"], [("p", "q", [f"1/{m}"], [f"-1/{n}"])], f"spindle({m},{n})")


def diagonal_spindle(m: int, n: int) -> OrbifoldGKMGraph:
    """Spindle under the diagonal circle; needs m != n."""
    return OrbifoldGKMGraph.from_edges(
        1, ["p", "q"], [("p", "q", [f"{m - n}/{m}"], [f"{n - m}/{n}"])], f"diagonal-spindle({m},{n})")


def cp2_graph() -> OrbifoldGKMGraph:
    return OrbifoldGKMGraph.from_edges(2, ["p0", "p1", "p2"], [
        ("p0", "p1", [1, 0], [-1, 0]),
        ("p0", "p2", [0, 1], [0, -1]),
        ("p1", "p2", [-1, 1], [1, -1]),
    ], "CP2")


def cpn_pair(n: int) -> CharacteristicPair:
    """Standard basis plus minus their sum on the n-simplex."""
    lambdas = [[int(i == j) for j in range(n)] for i in range(n)] + [[-1] * n]
    return simplex_pair(lambdas, f"CP{n}")


def p1236_pair() -> CharacteristicPair:
    return simplex_pair([(-2, -3, -6), (1, 0, 0), (0, 1, 0), (0, 0, 1)], "P(1,2,3,6)")


def doubled_k4_graph() -> OrbifoldGKMGraph:
    """Four vertices, doubled edges A-D and B-C; every label agrees at both ends.

    Validates as a torus graph while its ordinary ranks fail to be palindromic.
    """
    half, third, quarter, fifth = ["1/2", 0, 0, 0], [0, "1/3", 0, 0], [0, 0, "1/4", 0], [0, 0, 0, "1/5"]
    edges = [
        ("A", "D", half, half),
        ("A", "D", third, third),
        ("B", "C", half, half),
        ("B", "C", third, third),
        ("A", "B", fifth, fifth),
        ("D", "C", fifth, fifth),
        ("A", "C", quarter, quarter),
        ("B", "D", quarter, quarter),
    ]
    return OrbifoldGKMGraph.from_edges(4, ["A", "B", "C", "D"], edges, "doubled-K4")


def p111222_graph() -> OrbifoldGKMGraph:
    """Coordinate points of P(1,1,1,2,2,2) under T^3, labels from the weights.

    Vertex ab carries the character e_a + e_b (e4 = 0) and weight 1 when a = 1,
    2 otherwise; the dart from ab to cd is chi(cd) - (w_cd / w_ab) chi(ab).
    Rank 3 against valence 5, so only the GKM axioms apply.
    """
    names = ["12", "13", "14", "23", "24", "34"]

    def chi(v: str) -> List[int]:
        return [int(str(i) in v) for i in range(1, 4)]

    def weight(v: str) -> int:
        return 1 if v[0] == "1" else 2

    def label(a: str, b: str) -> List[str]:
        return [f"{y * weight(a) - weight(b) * x}/{weight(a)}" for x, y in zip(chi(a), chi(b))]

    edges = [(a, b, label(a, b), label(b, a)) for i, a in enumerate(names) for b in names[i + 1:]]
    return OrbifoldGKMGraph.from_edges(3, names, edges, "P(1,1,1,2,2,2)")


FIXTURES: Dict[str, Tuple[str, Callable[[], Document]]] = {
    "spindle-2-3": ("Spindle with local groups Z/2 and Z/3", lambda: spindle(2, 3)),
    "diagonal-spindle-2-3": ("Spindle(2,3) under the diagonal circle", lambda: diagonal_spindle(2, 3)),
    "cp2": ("CP2 torus graph entered by hand", cp2_graph),
    "cp2-pair": ("CP2 characteristic pair on the triangle", lambda: cpn_pair(2)),
    "cp3-pair": ("CP3 characteristic pair on the tetrahedron", lambda: cpn_pair(3)),
    "p1236": ("Weighted projective space P(1,2,3,6) on the tetrahedron", p1236_pair),
    "p112": ("Weighted projective plane P(1,1,2) as a polygon", lambda: PolygonPair.of([(1, 0), (0, 1), (-1, -2)], "P(1,1,2)")),
    "cp2-polygon": ("Smooth triangle (CP2) as a polygon", lambda: PolygonPair.of([(1, 0), (0, 1), (-1, -1)], "CP2")),
    "gcd2-triangle": ("Triangle with gcd of determinants 2", lambda: PolygonPair.of([(2, 0), (0, 1), (-2, -1)], "gcd2")),
    "two-gon": ("Smooth 2-gon (S4)", lambda: PolygonPair.of([(1, 0), (0, 1)], "2-gon")),
    "two-gon-weighted": ("2-gon with D = (2, -2)", lambda: PolygonPair.of([(1, 0), (1, 2)], "2-gon(2)")),
    "square": ("CP1 x CP1 as a square", lambda: PolygonPair.of([(1, 0), (0, 1), (-1, 0), (0, -1)], "square")),
    "weighted-square": ("Square with D = (2, 2, 1, 1)",
                        lambda: PolygonPair.of([(1, 0), (1, 2), (-1, 0), (0, -1)], "weighted-square")),
    "doubled-k4": ("Four-vertex torus graph with non-palindromic ranks", doubled_k4_graph),
    "p111222": ("P(1,1,1,2,2,2) GKM graph under T3", p111222_graph),
}


def load_fixture(name: str) -> Document:
    try:
        _, factory = FIXTURES[name]
    except KeyError:
        raise InputFormatError(f"Unknown fixture {name!r}; choose from {sorted(FIXTURES)}.") from None
    return factory()


def list_fixtures() -> List[Dict[str, str]]:
    return [
        {"name": name, "kind": detect_kind(to_dict(factory())), "description": description}
        for name, (description, factory) in sorted(FIXTURES.items())
    ]
