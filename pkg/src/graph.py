"""
Orbifold GKM graphs and orbifold torus graphs.

A graph is an immutable multigraph: every edge is a pair of darts that are
each other's reversal, and every dart carries a rational axial value in
H^2(BT^k; Q). Validation reports problems instead of raising; connection
inference and face enumeration raise OrbifoldError subclasses.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from src.config import settings
from src.errors import (
    AmbiguousMatchError,
    DimensionMismatchError,
    FaceLookupError,
    InputFormatError,
    NoMatchError,
    NonUniqueJoinError,
    ValenceCapError,
)
from src.exact import IntMatrix, denominator
from src.poly import LinearForm

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dart:
    """Oriented edge; `reversal` is the id of the same edge run backwards."""

    id: int
    origin: str
    target: str
    reversal: int

    @property
    def edge(self) -> int:
        return min(self.id, self.reversal)


@dataclass(frozen=True)
class OrbifoldGKMGraph:
    torus_rank: int
    vertices: Tuple[str, ...]
    darts: Tuple[Dart, ...]
    alpha: Tuple[LinearForm, ...]
    name: str = ""

    @classmethod
    def from_edges(
        cls,
        torus_rank: int,
        vertices: Iterable[str],
        edges: Iterable[Tuple[str, str, Sequence[Any], Sequence[Any]]],
        name: str = "",
    ) -> "OrbifoldGKMGraph":
        """Build a graph from (from, to, alpha_from, alpha_to) tuples.

        Edge i becomes darts 2i (from -> to) and 2i+1 (to -> from).
        """
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise InputFormatError("Vertex names must be unique.")
        known = set(vertices)
        darts: List[Dart] = []
        alpha: List[LinearForm] = []
        for origin, target, alpha_from, alpha_to in edges:
            if origin not in known or target not in known:
                raise InputFormatError(f"Edge {origin!r} -> {target!r} uses an unknown vertex.")
            forward, backward = LinearForm.of(alpha_from), LinearForm.of(alpha_to)
            if forward.k != torus_rank or backward.k != torus_rank:
                raise DimensionMismatchError(
                    f"Axial values on edge {origin!r} -> {target!r} must have {torus_rank} coordinates.")
            i = len(darts)
            darts.append(Dart(i, origin, target, i + 1))
            darts.append(Dart(i + 1, target, origin, i))
            alpha.extend([forward, backward])
        return cls(torus_rank, vertices, tuple(darts), tuple(alpha), name)

    @cached_property
    def _outgoing(self) -> Dict[str, Tuple[int, ...]]:
        table: Dict[str, List[int]] = {v: [] for v in self.vertices}
        for dart in self.darts:
            table.setdefault(dart.origin, []).append(dart.id)
        return {v: tuple(ds) for v, ds in table.items()}

    @cached_property
    def _vertex_index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def outgoing(self, vertex: str) -> Tuple[int, ...]:
        return self._outgoing.get(vertex, ())

    def vertex_index(self, vertex: str) -> int:
        return self._vertex_index[vertex]

    @property
    def valence(self) -> int:
        return len(self.outgoing(self.vertices[0])) if self.vertices else 0

    @property
    def edges(self) -> Tuple[int, ...]:
        """One dart per edge (the one with the smaller id)."""
        return tuple(d.id for d in self.darts if d.id < d.reversal)

    def reverse(self, dart: int) -> int:
        return self.darts[dart].reversal

    def rtilde(self, dart: int) -> int:
        """Least positive integer r with r * alpha(dart) integral."""
        return self.alpha[dart].rtilde()

    def subgraph(self, vertices: Iterable[str], darts: Iterable[int], name: str = "") -> "OrbifoldGKMGraph":
        """Restriction to a vertex set and a reversal-closed dart set."""
        keep = set(vertices)
        chosen = sorted(set(darts))
        renumber = {old: new for new, old in enumerate(chosen)}
        new_darts = []
        for old in chosen:
            d = self.darts[old]
            if d.reversal not in renumber:
                raise ValueError(f"Dart set is not closed under reversal (dart {old}).")
            new_darts.append(Dart(renumber[old], d.origin, d.target, renumber[d.reversal]))
        return OrbifoldGKMGraph(
            self.torus_rank,
            tuple(v for v in self.vertices if v in keep),
            tuple(new_darts),
            tuple(self.alpha[old] for old in chosen),
            name,
        )

    def connected_components(self) -> List[FrozenSet[str]]:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((self.darts[e].origin, self.darts[e].target) for e in self.edges)
        return [frozenset(c) for c in nx.connected_components(g)]


def rtilde(graph: OrbifoldGKMGraph, dart: int) -> int:
    return graph.rtilde(dart)


def _rank(forms: Sequence[LinearForm]) -> int:
    rows = [f.integral_coefficients() for f in forms if not f.is_zero]
    if not rows:
        return 0
    return IntMatrix.from_rows(rows).rank()


# --------------------------------------------------------------------------
# Validation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    vertex: Optional[str] = None
    dart: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind, "message": self.message}
        if self.vertex is not None:
            data["vertex"] = self.vertex
        if self.dart is not None:
            data["dart"] = self.dart
        return data


@dataclass
class ValidationReport:
    mode: str
    violations: List[Violation] = field(default_factory=list)
    warnings: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.ok,
            "mode": self.mode,
            "violations": [v.to_dict() for v in self.violations],
            "warnings": [w.to_dict() for w in self.warnings],
        }


def validate(graph: OrbifoldGKMGraph, torus_mode: Optional[bool] = None) -> ValidationReport:
    """Check the orbifold GKM graph axioms, or the torus graph axioms.

    Torus graph mode (the default when k equals the valence) requires the
    axial values at every vertex to be linearly independent; GKM mode only
    requires pairwise independence.
    """
    n = graph.valence
    if torus_mode is None:
        torus_mode = graph.torus_rank == n
    report = ValidationReport("torus" if torus_mode else "gkm")
    problems = report.violations

    if not graph.vertices:
        problems.append(Violation("empty_graph", "Graph has no vertices."))
        return report

    known = set(graph.vertices)
    for i, dart in enumerate(graph.darts):
        if dart.id != i:
            problems.append(Violation("structure", f"Dart at position {i} has id {dart.id}.", dart=i))
            continue
        if dart.origin not in known or dart.target not in known:
            problems.append(Violation("structure", "Dart uses an unknown vertex.", dart=i))
        rev = dart.reversal
        if rev == i or not 0 <= rev < len(graph.darts) or graph.darts[rev].reversal != i:
            problems.append(Violation("structure", "Reversal is not a fixed-point-free involution.", dart=i))
        elif graph.darts[rev].origin != dart.target:
            problems.append(Violation("structure", "Reversal does not start at the target.", dart=i))
    if problems:
        return report

    for i, a in enumerate(graph.alpha):
        if a.k != graph.torus_rank:
            problems.append(Violation("dimension", f"Axial value has {a.k} coordinates, expected {graph.torus_rank}.",
                                      dart=i))
        elif a.is_zero:
            problems.append(Violation("zero_axial", "Axial value is zero.", vertex=graph.darts[i].origin, dart=i))
    if problems:
        return report

    for v in graph.vertices:
        out = graph.outgoing(v)
        if len(out) != n:
            problems.append(Violation("valence", f"Vertex has {len(out)} outgoing darts, expected {n}.", vertex=v))
        for e1, e2 in combinations(out, 2):
            if graph.alpha[e1].ratio_to(graph.alpha[e2]) is not None:
                problems.append(Violation(
                    "pairwise_dependent",
                    f"Axial values {graph.alpha[e1].render()} and {graph.alpha[e2].render()} are dependent.",
                    vertex=v, dart=e1))
        if torus_mode and _rank([graph.alpha[e] for e in out]) != len(out):
            problems.append(Violation("linear_dependent", "Axial values at the vertex are linearly dependent.",
                                      vertex=v))

    for e in graph.edges:
        forward, backward = graph.alpha[e], graph.alpha[graph.reverse(e)]
        ratio = backward.ratio_to(forward)
        if ratio is None:
            problems.append(Violation(
                "not_parallel",
                f"alpha(e) = {forward.render()} and alpha(reversed e) = {backward.render()} are not parallel.",
                vertex=graph.darts[e].origin, dart=e))
            continue
        a, b = forward.integral_coefficients(), backward.integral_coefficients()
        if a != b and a != tuple(-x for x in b):
            report.warnings.append(Violation(
                "rtilde_magnitude",
                f"rtilde-scaled values {list(a)} and {list(b)} differ in magnitude.",
                vertex=graph.darts[e].origin, dart=e))
    return report


# --------------------------------------------------------------------------
# Connection
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Connection:
    """theta[(e, e')] is the dart at t(e) that e' is transported to."""

    theta: Mapping[Tuple[int, int], int]
    witnesses: Mapping[Tuple[int, int], Optional[int]]

    def transport(self, dart: int, other: int) -> int:
        return self.theta[(dart, other)]

    def witness(self, dart: int, other: int) -> Optional[int]:
        return self.witnesses[(dart, other)]


def _in_span(v: LinearForm, a: LinearForm, b: LinearForm) -> bool:
    return _rank([a, b, v]) == _rank([a, b])


def _congruence_witness(graph: OrbifoldGKMGraph, dart: int, other: int, image: int) -> Optional[int]:
    difference = graph.alpha[image] - graph.alpha[other]
    if difference.is_zero:
        return 1
    t = difference.ratio_to(graph.alpha[dart])
    if t is None:
        _logger.warning("No congruence witness along dart %d for dart %d: difference is not a multiple "
                        "of the edge label", dart, other)
        return None
    return denominator(t / graph.rtilde(dart))


def infer_connection(graph: OrbifoldGKMGraph) -> Connection:
    """The unique connection of a torus graph determined by the span condition."""
    theta: Dict[Tuple[int, int], int] = {}
    witnesses: Dict[Tuple[int, int], Optional[int]] = {}
    for dart in graph.darts:
        targets = [d for d in graph.outgoing(dart.target) if d != dart.reversal]
        used = set()
        for other in graph.outgoing(dart.origin):
            if other == dart.id:
                image = dart.reversal
            else:
                candidates = [d for d in targets
                              if _in_span(graph.alpha[d], graph.alpha[other], graph.alpha[dart.id])]
                if not candidates:
                    raise NoMatchError(f"No dart at {dart.target!r} matches dart {other} along dart {dart.id}.")
                if len(candidates) > 1:
                    raise AmbiguousMatchError(
                        f"Darts {candidates} at {dart.target!r} all match dart {other} along dart {dart.id}.")
                image = candidates[0]
            if image in used:
                raise AmbiguousMatchError(f"Transport along dart {dart.id} sends two darts to dart {image}.")
            used.add(image)
            theta[(dart.id, other)] = image
            witnesses[(dart.id, other)] = _congruence_witness(graph, dart.id, other, image)
    _logger.debug("Connection inferred on %d darts", len(graph.darts))
    return Connection(theta, witnesses)


# --------------------------------------------------------------------------
# Faces
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """Connection-closed subgraph; edges are stored unoriented (smaller dart id)."""

    vertices: FrozenSet[str]
    edges: FrozenSet[int]
    dim: int
    name: str = field(default="", compare=False)

    def contains(self, other: "Face") -> bool:
        return other.vertices <= self.vertices and other.edges <= self.edges

    def darts(self, graph: OrbifoldGKMGraph) -> FrozenSet[int]:
        return self.edges | frozenset(graph.reverse(e) for e in self.edges)

    def outgoing(self, graph: OrbifoldGKMGraph, vertex: str) -> Tuple[int, ...]:
        inside = self.darts(graph)
        return tuple(d for d in graph.outgoing(vertex) if d in inside)

    def as_graph(self, graph: OrbifoldGKMGraph) -> OrbifoldGKMGraph:
        return graph.subgraph(self.vertices, self.darts(graph), self.name)


def _grow(graph: OrbifoldGKMGraph, connection: Connection, start: str, seed: FrozenSet[int]) -> Optional[Face]:
    local = {start: seed}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for dart in local[u]:
            q = graph.darts[dart].target
            image = frozenset(connection.transport(dart, other) for other in local[u])
            if q in local:
                if local[q] != image:
                    _logger.debug("Seed %s at %r does not close up at %r; not a face", sorted(seed), start, q)
                    return None
            else:
                local[q] = image
                queue.append(q)
    edges = frozenset(graph.darts[d].edge for ds in local.values() for d in ds)
    return Face(frozenset(local), edges, len(seed))


@dataclass(frozen=True)
class FacePoset:
    graph: OrbifoldGKMGraph
    faces: Tuple[Face, ...]

    @cached_property
    def _index(self) -> Dict[Face, int]:
        return {f: i for i, f in enumerate(self.faces)}

    @cached_property
    def _by_name(self) -> Dict[str, Face]:
        return {f.name: f for f in self.faces}

    @property
    def valence(self) -> int:
        return self.graph.valence

    def by_dimension(self, d: int) -> Tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == d)

    @property
    def top(self) -> Optional[Face]:
        """The whole graph, when it is a single face."""
        tops = self.by_dimension(self.valence)
        if len(tops) == 1 and len(tops[0].vertices) == len(self.graph.vertices):
            return tops[0]
        return None

    def index(self, face: Face) -> int:
        try:
            return self._index[face]
        except KeyError:
            raise FaceLookupError(f"Face {face.name or sorted(face.vertices)} is not in the poset.") from None

    def named(self, name: str) -> Face:
        try:
            return self._by_name[name]
        except KeyError:
            raise FaceLookupError(f"Unknown face {name!r}.") from None

    def find(self, vertices: FrozenSet[str], edges: FrozenSet[int]) -> Face:
        for face in self.faces:
            if face.vertices == vertices and face.edges == edges:
                return face
        raise FaceLookupError(f"No face with vertices {sorted(vertices)} and edges {sorted(edges)}.")

    def join(self, first: Face, second: Face) -> Optional[Face]:
        """Minimal face containing both; None when no face contains both."""
        uppers = [g for g in self.faces if g.contains(first) and g.contains(second)]
        if not uppers:
            return None
        minimum = [g for g in uppers if all(h.contains(g) for h in uppers)]
        if not minimum:
            raise NonUniqueJoinError(f"Faces {first.name} and {second.name} have no least upper bound.")
        return minimum[0]

    def meet_components(self, first: Face, second: Face) -> List[Face]:
        """Connected components of the intersection, each located in the poset."""
        common_vertices = first.vertices & second.vertices
        if not common_vertices:
            return []
        common_edges = first.edges & second.edges
        g = nx.MultiGraph()
        g.add_nodes_from(common_vertices)
        for e in common_edges:
            g.add_edge(self.graph.darts[e].origin, self.graph.darts[e].target, key=e)
        components = []
        for comp in nx.connected_components(g):
            comp_edges = frozenset(e for e in common_edges if self.graph.darts[e].origin in comp)
            components.append(self.find(frozenset(comp), comp_edges))
        return sorted(components, key=self.index)

    def renamed(self, names: Mapping[Face, str]) -> "FacePoset":
        faces = tuple(Face(f.vertices, f.edges, f.dim, names.get(f, f.name)) for f in self.faces)
        return FacePoset(self.graph, faces)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "counts": {str(d): len(self.by_dimension(d)) for d in range(self.valence + 1)},
            "faces": [
                {
                    "name": f.name,
                    "dim": f.dim,
                    "vertices": [v for v in self.graph.vertices if v in f.vertices],
                    "edges": sorted(f.edges),
                }
                for f in self.faces
            ],
        }


def _face_names(graph: OrbifoldGKMGraph, faces: Sequence[Face]) -> List[Face]:
    n = graph.valence
    labels = []
    for f in faces:
        ordered = [v for v in graph.vertices if v in f.vertices]
        if f.dim == 0:
            labels.append(ordered[0])
        elif f.dim == n and len(f.vertices) == len(graph.vertices):
            labels.append("G")
        else:
            labels.append(f"F{f.dim}[{','.join(ordered)}]")
    seen: Dict[str, int] = {}
    named = []
    for f, label in zip(faces, labels):
        if labels.count(label) > 1:
            seen[label] = seen.get(label, 0) + 1
            label = f"{label}/{seen[label]}"
        named.append(Face(f.vertices, f.edges, f.dim, label))
    return named


def enumerate_faces(graph: OrbifoldGKMGraph, connection: Connection,
                    valence_cap: Optional[int] = None) -> FacePoset:
    """All faces of every dimension, grown from (vertex, dart subset) seeds."""
    n = graph.valence
    cap = settings.valence_cap if valence_cap is None else valence_cap
    if n > cap:
        raise ValenceCapError(f"Valence {n} exceeds the face enumeration cap {cap}.")
    found: Dict[Tuple[FrozenSet[str], FrozenSet[int]], Face] = {}
    for p in graph.vertices:
        out = graph.outgoing(p)
        for d in range(n + 1):
            for seed in combinations(out, d):
                face = _grow(graph, connection, p, frozenset(seed))
                if face is not None:
                    found.setdefault((face.vertices, face.edges), face)

    def key(f: Face) -> Tuple:
        return f.dim, tuple(sorted(graph.vertex_index(v) for v in f.vertices)), tuple(sorted(f.edges))

    faces = sorted(found.values(), key=key)
    _logger.debug("Enumerated %d faces on graph %r", len(faces), graph.name)
    return FacePoset(graph, tuple(_face_names(graph, faces)))


def face_join(poset: FacePoset, first: Face, second: Face) -> Optional[Face]:
    return poset.join(first, second)


def face_meet_components(poset: FacePoset, first: Face, second: Face) -> List[Face]:
    return poset.meet_components(first, second)
