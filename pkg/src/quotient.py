"""
Characteristic pairs and the torus graphs they determine.

A characteristic pair is taken combinatorially: named facets with vectors
lambda(F) in Z^n, vertices as sets of n facets, edges as sets of n-1 facets
with two end vertices. The polygon pipeline (n = 2) builds the lattices
L_k from symmetric powers of the 2x2 blocks [lambda(F_k) | lambda(F_k+1)]
and intersects them.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from src.errors import GcdConditionError, InvalidPairError
from src.exact import IntegerLattice, IntMatrix, RatMatrix, lattice_intersection
from src.facering import FacePolynomial, FaceRing
from src.graph import Face, FacePoset, OrbifoldGKMGraph, enumerate_faces, infer_connection
from src.poly import LinearForm, sym_power_matrix

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LambdaV:
    """Facet vectors at a vertex, as columns in ascending facet order."""

    vertex: str
    facets: Tuple[int, ...]
    matrix: IntMatrix

    @cached_property
    def det(self) -> int:
        return self.matrix.det()

    @cached_property
    def _inverse(self):
        if self.det == 0:
            raise InvalidPairError(f"Facet vectors at vertex {self.vertex!r} are linearly dependent.")
        return self.matrix.inverse()

    def dual_row(self, facet: int) -> LinearForm:
        """Row of the inverse pairing to 1 with lambda(facet) and to 0 with the others."""
        return LinearForm(self._inverse.rows[self.facets.index(facet)])


@dataclass(frozen=True)
class PairEdge:
    facets: FrozenSet[int]
    ends: Tuple[int, int]


@dataclass(frozen=True)
class CharacteristicPair:
    n: int
    facet_names: Tuple[str, ...]
    lambdas: Tuple[Tuple[int, ...], ...]
    vertices: Tuple[FrozenSet[int], ...]
    edges: Tuple[PairEdge, ...]
    vertex_names: Tuple[str, ...]
    h2_trivial: Optional[bool] = None
    name: str = ""

    @classmethod
    def from_names(
        cls,
        n: int,
        facets: Sequence[Tuple[str, Sequence[int]]],
        vertices: Sequence[Sequence[str]],
        edges: Sequence[Tuple[Sequence[str], Tuple[int, int]]],
        vertex_names: Optional[Sequence[str]] = None,
        h2_trivial: Optional[bool] = None,
        name: str = "",
    ) -> "CharacteristicPair":
        names = tuple(f for f, _ in facets)
        if len(set(names)) != len(names):
            raise InvalidPairError("Facet names must be unique.")
        index = {f: i for i, f in enumerate(names)}

        def lookup(facet: str) -> int:
            if facet not in index:
                raise InvalidPairError(f"Unknown facet {facet!r}.")
            return index[facet]

        vertex_sets = tuple(frozenset(lookup(f) for f in v) for v in vertices)
        if vertex_names is None:
            vertex_names = [".".join(names[i] for i in sorted(v)) for v in vertex_sets]
        pair = cls(
            n=n,
            facet_names=names,
            lambdas=tuple(tuple(int(x) for x in lam) for _, lam in facets),
            vertices=vertex_sets,
            edges=tuple(PairEdge(frozenset(lookup(f) for f in fs), (int(ends[0]), int(ends[1])))
                        for fs, ends in edges),
            vertex_names=tuple(vertex_names),
            h2_trivial=h2_trivial,
            name=name,
        )
        pair.validate()
        return pair

    def problems(self) -> List[str]:
        """Every violated incidence or independence condition."""
        found = []
        m = len(self.facet_names)
        if not self.vertices:
            found.append("Pair has no vertices.")
        if len(set(self.vertex_names)) != len(self.vertex_names) or len(self.vertex_names) != len(self.vertices):
            found.append("Vertex names must be unique, one per vertex.")
        for name, lam in zip(self.facet_names, self.lambdas):
            if len(lam) != self.n:
                found.append(f"lambda({name}) has {len(lam)} coordinates, expected {self.n}.")
        if found:
            return found
        degree = [0] * len(self.vertices)
        for j, edge in enumerate(self.edges):
            if len(edge.facets) != self.n - 1:
                found.append(f"Edge {j} lies on {len(edge.facets)} facets, expected {self.n - 1}.")
                continue
            a, b = edge.ends
            if not (0 <= a < len(self.vertices) and 0 <= b < len(self.vertices)) or a == b:
                found.append(f"Edge {j} has invalid ends {edge.ends}.")
                continue
            for end in (a, b):
                degree[end] += 1
                if not edge.facets < self.vertices[end]:
                    found.append(f"Edge {j} is not incident to vertex {self.vertex_names[end]!r}.")
        for i, facets in enumerate(self.vertices):
            label = self.vertex_names[i]
            if len(facets) != self.n or any(not 0 <= f < m for f in facets):
                found.append(f"Vertex {label!r} must lie on {self.n} distinct facets.")
                continue
            if degree[i] != self.n:
                found.append(f"Vertex {label!r} has {degree[i]} edges, expected {self.n}.")
            if self.lambda_v(i).det == 0:
                found.append(f"Facet vectors at vertex {label!r} are linearly dependent.")
        return found

    def validate(self) -> None:
        found = self.problems()
        if found:
            raise InvalidPairError("; ".join(found))

    def lambda_v(self, vertex: int) -> LambdaV:
        facets = tuple(sorted(self.vertices[vertex]))
        columns = IntMatrix.from_rows([self.lambdas[f] for f in facets], self.n).transpose()
        return LambdaV(self.vertex_names[vertex], facets, columns)

    def vertex_determinants(self) -> Dict[str, int]:
        return {self.vertex_names[i]: abs(self.lambda_v(i).det) for i in range(len(self.vertices))}

    def departed_facet(self, edge: PairEdge, end: int) -> int:
        (facet,) = self.vertices[end] - edge.facets
        return facet


def derive_graph(pair: CharacteristicPair) -> OrbifoldGKMGraph:
    """Torus graph of the pair: alpha(e) is the dual row of the facet e leaves."""
    pair.validate()
    lambdas = [pair.lambda_v(i) for i in range(len(pair.vertices))]
    edges = []
    for edge in pair.edges:
        a, b = edge.ends
        alpha_from = lambdas[a].dual_row(pair.departed_facet(edge, a))
        alpha_to = lambdas[b].dual_row(pair.departed_facet(edge, b))
        edges.append((pair.vertex_names[a], pair.vertex_names[b], alpha_from.coeffs, alpha_to.coeffs))
    return OrbifoldGKMGraph.from_edges(pair.n, pair.vertex_names, edges, pair.name)


def facet_faces(pair: CharacteristicPair, poset: FacePoset) -> Dict[str, Face]:
    """Face of the derived graph underlying each facet."""
    result = {}
    for j, name in enumerate(pair.facet_names):
        vertices = frozenset(pair.vertex_names[i] for i, v in enumerate(pair.vertices) if j in v)
        edges = frozenset(2 * i for i, edge in enumerate(pair.edges) if j in edge.facets)
        result[name] = poset.find(vertices, edges)
    return result


def face_ring(pair: CharacteristicPair) -> FaceRing:
    """Face ring of the derived graph with facet faces named after the facets."""
    graph = derive_graph(pair)
    poset = enumerate_faces(graph, infer_connection(graph))
    poset = poset.renamed({face: name for name, face in facet_faces(pair, poset).items()})
    return FaceRing(graph, poset)


def linear_global_elements(pair: CharacteristicPair, ring: FaceRing) -> List[FacePolynomial]:
    """sum_j lambda(F_j)_i x[F_j] for i = 1..n; each maps to the constant class e_i."""
    elements = []
    for i in range(pair.n):
        element = ring.polynomial({(name,): lam[i] for name, lam in zip(pair.facet_names, pair.lambdas)})
        assert ring.is_integral(element), f"{element.render()} is not integral"
        assert all(v == ring.ring.gens[i] for v in ring.mu_values(element)), \
            f"{element.render()} does not map to the constant class e{i + 1}"
        elements.append(element)
    return elements


# --------------------------------------------------------------------------
# Polygons
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PolygonPair:
    """m-gon with facet vectors (a_k, b_k); indices are cyclic."""

    vectors: Tuple[Tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        if len(self.vectors) < 2:
            raise InvalidPairError(f"A polygon needs at least 2 facets, got {len(self.vectors)}.")
        for k, vec in enumerate(self.vectors, start=1):
            if len(vec) != 2:
                raise InvalidPairError(f"lambda(F{k}) must have 2 coordinates.")
        for k in range(1, self.m + 1):
            if self.determinant(k) == 0:
                raise InvalidPairError(f"D_{k} = 0: lambda(F{k}) and its successor are dependent.")

    @classmethod
    def of(cls, vectors: Sequence[Sequence[int]], name: str = "") -> "PolygonPair":
        return cls(tuple((int(a), int(b)) for a, b in vectors), name)

    @property
    def m(self) -> int:
        return len(self.vectors)

    def vector(self, k: int) -> Tuple[int, int]:
        return self.vectors[(k - 1) % self.m]

    def determinant(self, k: int) -> int:
        """D_k = a_k b_(k+1) - b_k a_(k+1)."""
        (a, b), (c, d) = self.vector(k), self.vector(k + 1)
        return a * d - b * c

    @property
    def determinants(self) -> Tuple[int, ...]:
        return tuple(self.determinant(k) for k in range(1, self.m + 1))

    def lambda_k(self, k: int) -> IntMatrix:
        (a, b), (c, d) = self.vector(k), self.vector(k + 1)
        return IntMatrix.from_rows([[a, c], [b, d]])

    def to_characteristic_pair(self) -> CharacteristicPair:
        """Facets F1..Fm, vertices v_k = F_k n F_(k+1), edge e_k on F_k from v_(k-1) to v_k."""
        m = self.m
        return CharacteristicPair.from_names(
            n=2,
            facets=[(f"F{k}", self.vector(k)) for k in range(1, m + 1)],
            vertices=[[f"F{k}", f"F{k % m + 1}"] for k in range(1, m + 1)],
            edges=[([f"F{k}"], ((k - 2) % m, k - 1)) for k in range(1, m + 1)],
            vertex_names=[f"v{k}" for k in range(1, m + 1)],
            name=self.name,
        )


def polygon_gcd_check(polygon: PolygonPair) -> Tuple[List[int], int, bool]:
    """(D_1..D_m, their gcd, whether the gcd is 1)."""
    ds = list(polygon.determinants)
    g = gcd(*ds)
    return ds, g, g == 1


def polygon_Lk(polygon: PolygonPair, n: int, k: int) -> IntegerLattice:
    """Rows of the degree-n symmetric power of Lambda_k placed at cyclic offset (k-1)n,
    plus unit vectors on every other coordinate of Z^(nm)."""
    m = polygon.m
    if not 1 <= k <= m:
        raise IndexError(f"Polygon index k={k} is outside 1..{m}.")
    if n < 1:
        raise ValueError(f"Degree n must be positive, got {n}.")
    size = n * m
    block = sym_power_matrix(n, RatMatrix.from_int(polygon.lambda_k(k))).to_int()
    columns = [((k - 1) * n + j) % size for j in range(n + 1)]
    rows = []
    for block_row in block.rows:
        row = [0] * size
        for col, value in zip(columns, block_row):
            row[col] += value
        rows.append(row)
    rows.extend([int(i == j) for i in range(size)] for j in range(size) if j not in columns)
    return IntegerLattice.span(rows, size)


def polygon_generators(polygon: PolygonPair, n: int, check_gcd: bool = True) -> IntegerLattice:
    """Intersection of L_1..L_m in the cyclic coordinates (c_01, c_11, ..., c_(n-1)m)."""
    if check_gcd:
        ds, g, ok = polygon_gcd_check(polygon)
        if not ok:
            raise GcdConditionError(f"gcd of D = {ds} is {g}, not 1.")
    lattices = [polygon_Lk(polygon, n, k) for k in range(1, polygon.m + 1)]
    _logger.debug("Intersecting %d lattices in Z^%d", len(lattices), n * polygon.m)
    return reduce(lattice_intersection, lattices)


def normal_form_monomials(polygon: PolygonPair, n: int, ring: FaceRing) -> List[FacePolynomial]:
    """Coordinate monomials, ordered like the polygon_generators coordinates.

    x[F_i]^(n-a) x[F_(i+1)]^a is represented for a >= 1 by
    x[v_i] x[F_i]^(n-1-a) x[F_(i+1)]^(a-1), which agrees with it modulo the
    relations and stays supported at v_i alone when m = 2.
    """
    m = polygon.m
    result = []
    for i in range(1, m + 1):
        here, there = f"F{i}", f"F{i % m + 1}"
        for a in range(n):
            if a == 0:
                result.append(ring.monomial(*([here] * n)))
            else:
                result.append(ring.monomial(f"v{i}", *([here] * (n - 1 - a)), *([there] * (a - 1))))
    return result


def polygon_generator_polynomials(polygon: PolygonPair, n: int, ring: FaceRing,
                                  check_gcd: bool = True) -> List[FacePolynomial]:
    lattice = polygon_generators(polygon, n, check_gcd)
    coords = normal_form_monomials(polygon, n, ring)
    result = []
    for row in lattice.basis.rows:
        element = ring.zero()
        for c, mono in zip(row, coords):
            if c:
                element = element + mono.scaled(c)
        result.append(element)
    return result


def simplex_pair(lambdas: Sequence[Sequence[int]], name: str = "") -> CharacteristicPair:
    """Pair over the n-simplex: facets F1..F(n+1), every n of them meet in a vertex."""
    count = len(lambdas)
    n = count - 1
    names = [f"F{i}" for i in range(1, count + 1)]
    vertex_sets = [[f for j, f in enumerate(names) if j != skip] for skip in range(count)]
    edges = []
    for first, second in combinations(range(count), 2):
        facets = [f for j, f in enumerate(names) if j not in (first, second)]
        edges.append((facets, (first, second)))
    return CharacteristicPair.from_names(n, list(zip(names, lambdas)), vertex_sets, edges, name=name)
