"""
Weighted face ring of an orbifold torus graph.

Face polynomials are integer polynomials in variables x_F, one per face F.
`FaceRing` evaluates them through the rational Thom classes (x_F -> tau_F),
computes the integrality lattices, the relation generators, and checks
degree by degree that the integral face polynomials surject onto the graph
cohomology.
"""

import logging
from dataclasses import dataclass
from math import lcm
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from src.cohomology import GraphClass, class_lattice
from src.errors import DimensionMismatchError
from src.exact import IntegerLattice, RatMatrix, rational_preimage_lattice, saturation
from src.graph import Connection, Face, FacePoset, OrbifoldGKMGraph, enumerate_faces, infer_connection
from src.poly import cohomology_ring, is_integral_poly, monomials as poly_monomials, poly_denominator

_logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]  # sorted face indices, repeated for powers


@dataclass(frozen=True)
class FacePolynomial:
    poset: FacePoset
    terms: Tuple[Tuple[Monomial, int], ...]

    @classmethod
    def build(cls, poset: FacePoset, items: Iterable[Tuple[Iterable[int], int]]) -> "FacePolynomial":
        """Normalize: x_G = 1 for the whole graph, like terms merged, zeros dropped."""
        top = poset.top
        top_index = poset.index(top) if top is not None else None
        acc: Dict[Monomial, int] = {}
        for mono, coeff in items:
            key = tuple(sorted(i for i in mono if i != top_index))
            acc[key] = acc.get(key, 0) + int(coeff)
        n = poset.valence

        def order(item: Tuple[Monomial, int]) -> Tuple:
            mono = item[0]
            return sum(n - poset.faces[i].dim for i in mono), mono

        return cls(poset, tuple(sorted(((m, c) for m, c in acc.items() if c), key=order)))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> Optional[int]:
        """Polynomial degree (half the cohomological degree); None for zero."""
        n = self.poset.valence
        weights = {sum(n - self.poset.faces[i].dim for i in m) for m, _ in self.terms}
        if not weights:
            return None
        if len(weights) > 1:
            raise ValueError(f"Face polynomial is not homogeneous: {self.render()}")
        return weights.pop()

    def _check(self, other: "FacePolynomial") -> None:
        if other.poset != self.poset:
            raise DimensionMismatchError("Face polynomials over different posets.")

    def __add__(self, other: "FacePolynomial") -> "FacePolynomial":
        self._check(other)
        return FacePolynomial.build(self.poset, self.terms + other.terms)

    def __sub__(self, other: "FacePolynomial") -> "FacePolynomial":
        return self + other.scaled(-1)

    def __mul__(self, other: "FacePolynomial") -> "FacePolynomial":
        self._check(other)
        return FacePolynomial.build(self.poset, [(m1 + m2, c1 * c2) for m1, c1 in self.terms for m2, c2 in other.terms])

    def scaled(self, factor: int) -> "FacePolynomial":
        return FacePolynomial.build(self.poset, [(m, factor * c) for m, c in self.terms])

    def coefficient(self, monomial: Iterable[int]) -> int:
        key = tuple(sorted(monomial))
        return next((c for m, c in self.terms if m == key), 0)

    def monomial_text(self, monomial: Monomial) -> str:
        if not monomial:
            return "1"
        parts = []
        for i in sorted(set(monomial)):
            power = monomial.count(i)
            name = f"x[{self.poset.faces[i].name}]"
            parts.append(name if power == 1 else f"{name}^{power}")
        return "*".join(parts)

    def render(self) -> str:
        if not self.terms:
            return "0"
        text = ""
        for j, (mono, coeff) in enumerate(self.terms):
            magnitude = abs(coeff)
            body = self.monomial_text(mono)
            if magnitude != 1 or not mono:
                body = f"{magnitude}*{body}" if mono else str(magnitude)
            if j == 0:
                text = ("-" if coeff < 0 else "") + body
            else:
                text += (" - " if coeff < 0 else " + ") + body
        return text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "text": self.render(),
            "terms": [{"monomial": [self.poset.faces[i].name for i in m], "coefficient": c} for m, c in self.terms],
        }


@dataclass(frozen=True)
class IntegralityLattice:
    """Integer combinations of `coordinates` whose mu-image is integral."""

    degree: int
    coordinates: Tuple[FacePolynomial, ...]
    lattice: IntegerLattice

    def element(self, vector: Sequence[int]) -> FacePolynomial:
        if len(vector) != len(self.coordinates):
            raise DimensionMismatchError(f"Expected {len(self.coordinates)} coordinates, got {len(vector)}.")
        poset = self.coordinates[0].poset
        result = FacePolynomial.build(poset, [])
        for c, p in zip(vector, self.coordinates):
            if c:
                result = result + p.scaled(c)
        return result

    def generators(self) -> List[FacePolynomial]:
        return [self.element(row) for row in self.lattice.basis.rows]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "monomials": [p.render() for p in self.coordinates],
            "hnf_basis": self.lattice.tolist(),
        }


@dataclass(frozen=True)
class IsoDegreeReport:
    degree: int
    monomial_count: int
    integrality_rank: int
    image_rank: int
    class_rank: int
    surjective: bool
    relations_vanish: bool

    @property
    def ok(self) -> bool:
        return self.surjective and self.relations_vanish

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "monomials": self.monomial_count,
            "integrality_rank": self.integrality_rank,
            "image_rank": self.image_rank,
            "class_rank": self.class_rank,
            "surjective": self.surjective,
            "relations_vanish": self.relations_vanish,
            "ok": self.ok,
        }


FaceLike = Union[Face, str]


class FaceRing:
    """Face polynomials of a torus graph and their evaluation through Thom classes."""

    def __init__(self, graph: OrbifoldGKMGraph, poset: Optional[FacePoset] = None,
                 connection: Optional[Connection] = None):
        self.graph = graph
        if poset is None:
            poset = enumerate_faces(graph, connection or infer_connection(graph))
        self.poset = poset
        self.n = graph.valence
        self.ring = cohomology_ring(graph.torus_rank)
        self._thom: Dict[int, Tuple[PolyElement, ...]] = {}
        self._relations_vanish: Optional[bool] = None

    # -- faces and polynomials ------------------------------------------------

    def face(self, face: FaceLike) -> Face:
        return self.poset.named(face) if isinstance(face, str) else self.poset.faces[self.poset.index(face)]

    def weight(self, face: FaceLike) -> int:
        """Polynomial degree of x_F, n - dim F."""
        return self.n - self.face(face).dim

    def zero(self) -> FacePolynomial:
        return FacePolynomial.build(self.poset, [])

    def one(self) -> FacePolynomial:
        return FacePolynomial.build(self.poset, [((), 1)])

    def x(self, face: FaceLike) -> FacePolynomial:
        return FacePolynomial.build(self.poset, [((self.poset.index(self.face(face)),), 1)])

    def monomial(self, *faces: FaceLike) -> FacePolynomial:
        return FacePolynomial.build(self.poset, [(tuple(self.poset.index(self.face(f)) for f in faces), 1)])

    def polynomial(self, terms: Mapping[Tuple[FaceLike, ...], int]) -> FacePolynomial:
        """Build from {(face, face, ...): coefficient}; faces may be given by name."""
        return FacePolynomial.build(
            self.poset, [(tuple(self.poset.index(self.face(f)) for f in mono), c) for mono, c in terms.items()])

    def monomials(self, d: int) -> List[FacePolynomial]:
        """All monomials of polynomial degree d in the non-top faces, canonical order."""
        top = self.poset.top
        candidates = [i for i, f in enumerate(self.poset.faces) if f != top and f.dim < self.n]
        weights = {i: self.n - self.poset.faces[i].dim for i in candidates}
        found: List[Monomial] = []

        def extend(start: int, remaining: int, prefix: Tuple[int, ...]) -> None:
            if remaining == 0:
                found.append(prefix)
                return
            for j in range(start, len(candidates)):
                i = candidates[j]
                if weights[i] <= remaining:
                    extend(j, remaining - weights[i], prefix + (i,))

        extend(0, d, ())
        return [p for p in sorted((FacePolynomial.build(self.poset, [(m, 1)]) for m in found),
                                  key=lambda p: p.terms[0][0])]

    # -- Thom classes and mu ----------------------------------------------------

    def thom_values(self, face: FaceLike) -> Tuple[PolyElement, ...]:
        f = self.face(face)
        index = self.poset.index(f)
        if index not in self._thom:
            inside = f.darts(self.graph)
            values = []
            for v in self.graph.vertices:
                if v not in f.vertices:
                    values.append(self.ring.zero)
                    continue
                product = self.ring.one
                for dart in self.graph.outgoing(v):
                    if dart not in inside:
                        product = product * self.graph.alpha[dart].to_poly(self.ring)
                values.append(product)
            self._thom[index] = tuple(values)
        return self._thom[index]

    def thom_class(self, face: FaceLike) -> GraphClass:
        """Rational Thom class: product of the outgoing labels leaving the face."""
        return GraphClass(self.graph, self.weight(face), self.thom_values(face), rational=True)

    def mu_values(self, f: FacePolynomial) -> Tuple[PolyElement, ...]:
        values = [self.ring.zero for _ in self.graph.vertices]
        for mono, coeff in f.terms:
            factors = [self.thom_values(self.poset.faces[i]) for i in mono]
            for v in range(len(values)):
                product = self.ring.one
                for factor in factors:
                    if not factor[v]:
                        product = self.ring.zero
                        break
                    product = product * factor[v]
                if product:
                    values[v] = values[v] + product.mul_ground(coeff)
        return tuple(values)

    def mu(self, f: FacePolynomial) -> GraphClass:
        degree = f.degree
        return GraphClass(self.graph, degree or 0, self.mu_values(f), rational=True)

    def is_integral(self, f: FacePolynomial) -> bool:
        return all(is_integral_poly(p) for p in self.mu_values(f))

    # -- integrality ----------------------------------------------------------

    def integrality_lattice(self, d: int, coordinates: Optional[Sequence[FacePolynomial]] = None) -> IntegralityLattice:
        """Integer coefficient vectors over `coordinates` (default: raw degree-d monomials)
        whose mu-image is integral at every vertex."""
        if d < 1:
            raise ValueError(f"Integrality lattices start in degree 2, got {2 * d}.")
        coords = tuple(self.monomials(d) if coordinates is None else coordinates)
        if not coords:
            return IntegralityLattice(2 * d, coords, IntegerLattice.zero(0))
        for p in coords:
            if p.degree != d:
                raise DimensionMismatchError(f"Coordinate {p.render()} does not have degree {2 * d}.")
        columns = [self.mu(p).coefficient_vector() for p in coords]
        rows = [[col[r] for col in columns] for r in range(len(columns[0]))]
        lattice = rational_preimage_lattice(RatMatrix.from_rows(rows, len(coords)))
        _logger.debug("Integrality lattice in degree %d: %d coordinates, rank %d", 2 * d, len(coords), lattice.rank)
        return IntegralityLattice(2 * d, coords, lattice)

    def minimal_thom(self, face: FaceLike) -> int:
        """Least positive l with l * x_F integral."""
        return lcm(1, *(poly_denominator(p) for p in self.thom_values(face)))

    def minimal_multiple(self, f: FacePolynomial) -> FacePolynomial:
        """Shortest nonzero integral face polynomial on the rational line through f, pointing along f."""
        if f.is_zero:
            raise ValueError("The zero polynomial spans no line.")
        vector = [c for _, c in f.terms]
        primitive = saturation(IntegerLattice.span([vector], len(vector))).basis.rows[0]
        sign = 1 if primitive[0] * vector[0] > 0 else -1
        direction = FacePolynomial.build(self.poset, [(m, sign * c) for (m, _), c in zip(f.terms, primitive)])
        scale = lcm(1, *(poly_denominator(p) for p in self.mu_values(direction)))
        return direction.scaled(scale)

    def lcm_bound(self, face: FaceLike, determinants: Mapping[str, int]) -> int:
        """lcm of |det Lambda_v| over the vertices of the face."""
        f = self.face(face)
        bound = lcm(1, *(abs(determinants[v]) for v in f.vertices))
        assert self.is_integral(self.x(f).scaled(bound)), f"{bound}*x[{f.name}] is not integral"
        assert bound % self.minimal_thom(f) == 0, f"minimal Thom multiplier of {f.name} does not divide {bound}"
        return bound

    # -- relations ------------------------------------------------------------

    def relation(self, first: FaceLike, second: FaceLike) -> FacePolynomial:
        """x_E x_F - x_(E v F) * sum of x_G over the components G of E n F."""
        e, f = self.face(first), self.face(second)
        product = self.x(e) * self.x(f)
        meet = self.poset.meet_components(e, f)
        if not meet:
            return product
        join = self.poset.join(e, f)
        total = self.zero()
        for g in meet:
            total = total + self.x(g)
        return product - self.x(join) * total

    def relations(self) -> List[Tuple[Face, Face, FacePolynomial]]:
        top = self.poset.top
        faces = [f for f in self.poset.faces if f != top]
        return [(e, f, self.relation(e, f)) for i, e in enumerate(faces) for f in faces[i + 1:]]

    def relations_vanish(self) -> bool:
        if self._relations_vanish is None:
            self._relations_vanish = all(not any(self.mu_values(r)) for _, _, r in self.relations())
        return self._relations_vanish

    # -- isomorphism check ------------------------------------------------------

    def iso_report(self, d: int) -> IsoDegreeReport:
        integral = self.integrality_lattice(d)
        width = len(self.graph.vertices) * len(poly_monomials(self.graph.torus_rank, d))
        images = [self.mu(integral.element(row)).integer_vector() for row in integral.lattice.basis.rows]
        image = IntegerLattice.span(images, width)
        target = class_lattice(self.graph, d)
        return IsoDegreeReport(
            degree=2 * d,
            monomial_count=len(integral.coordinates),
            integrality_rank=integral.lattice.rank,
            image_rank=image.rank,
            class_rank=target.rank,
            surjective=image == target,
            relations_vanish=self.relations_vanish(),
        )

    def check_iso_degree(self, d: int) -> bool:
        return self.iso_report(d).ok
