"""
Equivariant cohomology of an orbifold GKM graph.

A class of degree 2d assigns a homogeneous degree-d polynomial to every
vertex; along every edge e the difference of the end values must be
divisible by rtilde(e) * alpha(e) (integral) or by alpha(e) (rational).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from src.config import settings
from src.errors import DimensionMismatchError, OrbifoldError
from src.exact import IntegerLattice, IntMatrix, Rat, kernel, numerator, to_rat
from src.graph import OrbifoldGKMGraph
from src.poly import (
    LinearForm,
    coefficient_vector,
    cohomology_ring,
    divides_linear,
    from_coefficients,
    homogeneous_degree,
    is_integral_poly,
    monomials,
    render,
)

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphClass:
    """Vertex-indexed tuple of degree-d polynomials (cohomological degree 2d)."""

    graph: OrbifoldGKMGraph
    degree: int
    values: Tuple[PolyElement, ...]
    rational: bool = False

    @classmethod
    def from_mapping(cls, graph: OrbifoldGKMGraph, values: Mapping[str, Any], degree: Optional[int] = None,
                     rational: bool = False) -> "GraphClass":
        ring = cohomology_ring(graph.torus_rank)
        polys = []
        for v in graph.vertices:
            p = values.get(v, ring.zero)
            polys.append(p.set_ring(ring) if isinstance(p, PolyElement) else ring(p))
        degrees = {homogeneous_degree(p) for p in polys} - {None}
        if len(degrees) > 1:
            raise DimensionMismatchError(f"Vertex values have mixed degrees {sorted(degrees)}.")
        if degree is None:
            degree = degrees.pop() if degrees else 0
        elif degrees and degrees != {degree}:
            raise DimensionMismatchError(f"Vertex values have degree {degrees.pop()}, expected {degree}.")
        return cls(graph, degree, tuple(polys), rational)

    @classmethod
    def constant(cls, graph: OrbifoldGKMGraph, value: PolyElement, rational: bool = False) -> "GraphClass":
        return cls.from_mapping(graph, {v: value for v in graph.vertices}, rational=rational)

    @classmethod
    def from_vector(cls, graph: OrbifoldGKMGraph, degree: int, vector: Sequence[Any],
                    rational: bool = False) -> "GraphClass":
        ring = cohomology_ring(graph.torus_rank)
        width = len(monomials(graph.torus_rank, degree))
        if len(vector) != width * len(graph.vertices):
            raise DimensionMismatchError(f"Expected {width * len(graph.vertices)} coordinates, got {len(vector)}.")
        values = tuple(from_coefficients(ring, degree, vector[i * width:(i + 1) * width])
                       for i in range(len(graph.vertices)))
        return cls(graph, degree, values, rational)

    def value(self, vertex: str) -> PolyElement:
        return self.values[self.graph.vertex_index(vertex)]

    def _check(self, other: "GraphClass") -> None:
        if other.graph != self.graph:
            raise DimensionMismatchError("Classes live on different graphs.")

    def __add__(self, other: "GraphClass") -> "GraphClass":
        self._check(other)
        if other.degree != self.degree:
            raise DimensionMismatchError(f"Cannot add classes of degree {2 * self.degree} and {2 * other.degree}.")
        return GraphClass(self.graph, self.degree, tuple(a + b for a, b in zip(self.values, other.values)),
                          self.rational or other.rational)

    def __sub__(self, other: "GraphClass") -> "GraphClass":
        return self + other.scaled(-1)

    def __mul__(self, other: "GraphClass") -> "GraphClass":
        self._check(other)
        return GraphClass(self.graph, self.degree + other.degree,
                          tuple(a * b for a, b in zip(self.values, other.values)),
                          self.rational or other.rational)

    def scaled(self, factor: Any) -> "GraphClass":
        c = to_rat(factor)
        return GraphClass(self.graph, self.degree, tuple(p.mul_ground(c) for p in self.values), self.rational)

    @property
    def is_zero(self) -> bool:
        return all(not p for p in self.values)

    def is_integral(self) -> bool:
        return all(is_integral_poly(p) for p in self.values)

    def coefficient_vector(self) -> Tuple[Rat, ...]:
        """Concatenated coefficients, vertex-major over monomials(k, degree)."""
        return tuple(c for p in self.values for c in coefficient_vector(p, self.degree))

    def integer_vector(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("Class has non-integral coefficients.")
        return tuple(numerator(c) for c in self.coefficient_vector())

    def to_dict(self) -> Dict[str, Any]:
        return {"degree": 2 * self.degree, "values": {v: render(p) for v, p in zip(self.graph.vertices, self.values)}}


def _modulus(graph: OrbifoldGKMGraph, dart: int) -> LinearForm:
    return LinearForm.of(graph.alpha[dart].integral_coefficients())


def is_class(f: GraphClass, rational: Optional[bool] = None) -> bool:
    """Edge congruences of the graph cohomology, checked edge by edge."""
    rational = f.rational if rational is None else rational
    graph = f.graph
    if not rational and not f.is_integral():
        return False
    for e in graph.edges:
        dart = graph.darts[e]
        difference = f.value(dart.origin) - f.value(dart.target)
        if not difference:
            continue
        if rational:
            quotient = divides_linear(graph.alpha[e], difference, integral=False)
        else:
            quotient = divides_linear(_modulus(graph, e), difference)
        if quotient is None:
            return False
    return True


def _congruence_system(graph: OrbifoldGKMGraph, d: int) -> Tuple[List[List[int]], int]:
    """Rows of f_i - f_t - (rtilde alpha) g_e = 0; returns (rows, number of f unknowns)."""
    k = graph.torus_rank
    top, low = monomials(k, d), (monomials(k, d - 1) if d > 0 else ())
    top_index = {m: i for i, m in enumerate(top)}
    low_index = {m: i for i, m in enumerate(low)}
    n_f = len(graph.vertices) * len(top)
    width = n_f + len(graph.edges) * len(low)
    rows = []
    for slot, e in enumerate(graph.edges):
        dart = graph.darts[e]
        i, t = graph.vertex_index(dart.origin), graph.vertex_index(dart.target)
        ell = _modulus(graph, e).coeffs
        g_offset = n_f + slot * len(low)
        equations = [[0] * width for _ in top]
        for m, row in zip(top, equations):
            row[i * len(top) + top_index[m]] += 1
            row[t * len(top) + top_index[m]] -= 1
        for m, j in low_index.items():
            for var in range(k):
                if ell[var]:
                    target = tuple(x + (1 if pos == var else 0) for pos, x in enumerate(m))
                    equations[top_index[target]][g_offset + j] -= numerator(ell[var])
        rows.extend(equations)
    return rows, n_f


@lru_cache(maxsize=settings.cache_size)
def class_lattice(graph: OrbifoldGKMGraph, d: int) -> IntegerLattice:
    """Degree-2d classes as a lattice in vertex x monomial coordinates."""
    if d < 0:
        raise ValueError(f"Degree must be non-negative, got {d}.")
    rows, n_f = _congruence_system(graph, d)
    width = n_f + len(graph.edges) * (len(monomials(graph.torus_rank, d - 1)) if d > 0 else 0)
    _logger.debug("Congruence system in degree %d: %d equations, %d unknowns", 2 * d, len(rows), width)
    solutions = kernel(IntMatrix.from_rows(rows, width))
    return IntegerLattice.span((row[:n_f] for row in solutions.basis.rows), n_f)


def basis(graph: OrbifoldGKMGraph, d: int) -> List[GraphClass]:
    """Z-module basis of the degree-2d part, in canonical HNF order."""
    return [GraphClass.from_vector(graph, d, row) for row in class_lattice(graph, d).basis.rows]


def _rational_rank(rows: Sequence[Sequence[Any]], width: int) -> int:
    if not rows:
        return 0
    return DomainMatrix([[to_rat(x) for x in row] for row in rows], (len(rows), width), QQ).rank()


def rational_dimension(graph: OrbifoldGKMGraph, d: int) -> int:
    """Dimension of the degree-2d part over Q, solved with modulus alpha(e) itself."""
    k = graph.torus_rank
    top, low = monomials(k, d), (monomials(k, d - 1) if d > 0 else ())
    top_index = {m: i for i, m in enumerate(top)}
    n_f = len(graph.vertices) * len(top)
    width = n_f + len(graph.edges) * len(low)
    rows = []
    for slot, e in enumerate(graph.edges):
        dart = graph.darts[e]
        i, t = graph.vertex_index(dart.origin), graph.vertex_index(dart.target)
        ell = graph.alpha[e].coeffs
        equations = [[QQ.zero] * width for _ in top]
        for m, row in zip(top, equations):
            row[i * len(top) + top_index[m]] += 1
            row[t * len(top) + top_index[m]] -= 1
        for j, m in enumerate(low):
            for var in range(k):
                target = tuple(x + (1 if pos == var else 0) for pos, x in enumerate(m))
                equations[top_index[target]][n_f + slot * len(low) + j] -= ell[var]
        rows.extend(equations)
    return width - _rational_rank(rows, width)


def ordinary_ranks(graph: OrbifoldGKMGraph, d_max: int) -> List[Tuple[int, int]]:
    """Ranks over Q of H_T modulo the ideal of the constant degree-2 classes.

    Returns (cohomological degree, rank) for degrees 0, 2, ..., 2 * d_max.
    """
    k = graph.torus_rank
    ring = cohomology_ring(k)
    if d_max >= 1:
        degree_one = class_lattice(graph, 1)
        for i, gen in enumerate(ring.gens):
            constant = GraphClass.constant(graph, gen)
            if not degree_one.contains(constant.integer_vector()):
                raise OrbifoldError(f"Constant class e{i + 1} is not in the degree-2 span.")
    ranks = []
    for d in range(d_max + 1):
        dim = rational_dimension(graph, d)
        if d == 0:
            ideal = 0
        else:
            products = [(GraphClass.constant(graph, gen) * b).coefficient_vector()
                        for b in basis(graph, d - 1) for gen in ring.gens]
            ideal = _rational_rank(products, len(graph.vertices) * len(monomials(k, d)))
        ranks.append((2 * d, dim - ideal))
    return ranks


def is_palindromic(ranks: Sequence[Tuple[int, int]]) -> bool:
    """Palindromicity of a rank sequence after dropping trailing zeros."""
    values = [r for _, r in ranks]
    while values and values[-1] == 0:
        values.pop()
    return values == values[::-1]
