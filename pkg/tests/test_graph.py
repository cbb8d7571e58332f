import pytest

from src.errors import DimensionMismatchError, InputFormatError, NoMatchError, ValenceCapError
from src.exact import to_rat
from src.fixtures import p111222_graph
from src.graph import (
    OrbifoldGKMGraph,
    enumerate_faces,
    face_join,
    face_meet_components,
    infer_connection,
    rtilde,
    validate,
)
from src.poly import LinearForm
from src.quotient import derive_graph


def kinds(report):
    return {v.kind for v in report.violations}


def test_cp2_is_a_torus_graph(cp2):
    report = validate(cp2)
    assert report.ok
    assert report.mode == "torus"
    assert report.warnings == []
    assert cp2.valence == 2
    assert len(cp2.edges) == 3


def test_empty_graph_is_rejected():
    report = validate(OrbifoldGKMGraph.from_edges(2, [], []))
    assert not report.ok
    assert kinds(report) == {"empty_graph"}


def test_zero_axial_value():
    graph = OrbifoldGKMGraph.from_edges(1, ["p", "q"], [("p", "q", [0], [1])])
    assert "zero_axial" in kinds(validate(graph))


def test_reversed_labels_must_be_parallel():
    graph = OrbifoldGKMGraph.from_edges(2, ["p", "q"], [
        ("p", "q", [1, 0], [0, 1]),
        ("p", "q", [0, 1], [1, 0]),
    ])
    assert "not_parallel" in kinds(validate(graph))


def test_valence_mismatch():
    graph = OrbifoldGKMGraph.from_edges(1, ["p", "q", "r"], [("p", "q", [1], [-1])])
    assert "valence" in kinds(validate(graph))


def test_rtilde_magnitude_is_only_a_warning():
    graph = OrbifoldGKMGraph.from_edges(1, ["p", "q"], [("p", "q", [1], [-2])])
    report = validate(graph)
    assert report.ok
    assert [w.kind for w in report.warnings] == ["rtilde_magnitude"]


def test_spindle_rtilde(spindle23):
    assert spindle23.rtilde(0) == 2
    assert rtilde(spindle23, 1) == 3
    assert validate(spindle23).ok


def test_unknown_vertex_and_wrong_dimension():
    with pytest.raises(InputFormatError):
        OrbifoldGKMGraph.from_edges(1, ["p"], [("p", "x", [1], [1])])
    with pytest.raises(DimensionMismatchError):
        OrbifoldGKMGraph.from_edges(2, ["p", "q"], [("p", "q", [1], [1])])


def test_weighted_projective_graph_needs_gkm_mode():
    graph = p111222_graph()
    assert graph.valence == 5
    report = validate(graph)
    assert report.mode == "gkm"
    assert report.ok
    assert "linear_dependent" in kinds(validate(graph, torus_mode=True))


def test_weighted_projective_graph_labels():
    graph = p111222_graph()
    out = graph.outgoing("12")
    labels = {graph.darts[d].target: graph.alpha[d] for d in out}
    assert labels["14"] == LinearForm.of([0, -1, 0])
    assert labels["23"] == LinearForm.of([-2, -1, 1])
    # the label at 23 toward 12 is -1/2 of the label at 12 toward 23
    back = next(d for d in graph.outgoing("23") if graph.darts[d].target == "12")
    assert graph.alpha[back].ratio_to(labels["23"]) == to_rat("-1/2")


def test_connection_of_cp2(cp2):
    connection = infer_connection(cp2)
    # dart 0 runs p0 -> p1; the other dart at p0 (to p2) moves to p1 -> p2
    assert connection.transport(0, 2) == 4
    assert connection.transport(0, 0) == 1
    assert connection.witness(0, 2) is not None


def test_connection_fails_without_a_matching_dart():
    graph = OrbifoldGKMGraph.from_edges(3, ["p0", "p1", "p2"], [
        ("p0", "p1", [1, 0, 0], [-1, 0, 0]),
        ("p0", "p2", [0, 1, 0], [0, -1, 0]),
        ("p1", "p2", [0, 0, 1], [0, 0, -1]),
    ])
    with pytest.raises(NoMatchError):
        infer_connection(graph)


def test_cp2_faces(cp2):
    poset = enumerate_faces(cp2, infer_connection(cp2))
    assert [len(poset.by_dimension(d)) for d in range(3)] == [3, 3, 1]
    assert poset.top.name == "G"
    assert poset.named("p0").dim == 0
    p0, p1 = poset.named("p0"), poset.named("p1")
    edge = face_join(poset, p0, p1)
    assert edge.dim == 1 and edge.vertices == frozenset({"p0", "p1"})
    first, second = [f for f in poset.by_dimension(1) if "p0" in f.vertices]
    assert face_meet_components(poset, first, second) == [p0]


def test_derived_simplex_faces(p1236_ring):
    poset = p1236_ring.poset
    assert [len(poset.by_dimension(d)) for d in range(4)] == [4, 6, 4, 1]
    assert {f.name for f in poset.by_dimension(2)} == {"F1", "F2", "F3", "F4"}


def test_doubled_k4_is_a_torus_graph(doubled_k4):
    report = validate(doubled_k4)
    assert report.ok
    assert report.mode == "torus"
    poset = enumerate_faces(doubled_k4, infer_connection(doubled_k4))
    assert len(poset.by_dimension(0)) == 4
    assert len(poset.by_dimension(1)) == 8


def test_valence_cap(cp2):
    with pytest.raises(ValenceCapError):
        enumerate_faces(cp2, infer_connection(cp2), valence_cap=1)


def test_connected_components_and_subgraph(cp2):
    assert cp2.connected_components() == [frozenset({"p0", "p1", "p2"})]
    edge = cp2.subgraph(["p0", "p1"], [0, 1])
    assert edge.vertices == ("p0", "p1")
    assert len(edge.darts) == 2


@pytest.mark.parametrize("name", ["cp2", "doubled_k4", "spindle23"])
def test_connection_transport_round_trip(request, name):
    graph = request.getfixturevalue(name)
    connection = infer_connection(graph)
    for dart in graph.darts:
        back = graph.reverse(dart.id)
        for other in graph.outgoing(dart.origin):
            moved = connection.transport(dart.id, other)
            assert graph.darts[moved].origin == dart.target
            assert connection.transport(back, moved) == other


def test_derived_connection_round_trip(p1236):
    graph = derive_graph(p1236)
    connection = infer_connection(graph)
    for dart in graph.darts:
        for other in graph.outgoing(dart.origin):
            assert connection.transport(graph.reverse(dart.id), connection.transport(dart.id, other)) == other


@pytest.mark.parametrize("name", ["cp2", "doubled_k4", "spindle23", "p1236_ring"])
def test_every_face_is_a_graph(request, name):
    value = request.getfixturevalue(name)
    if isinstance(value, OrbifoldGKMGraph):
        graph, poset = value, enumerate_faces(value, infer_connection(value))
    else:
        graph, poset = value.graph, value.poset
    for face in poset.faces:
        sub = face.as_graph(graph)
        assert sub.valence == face.dim
        assert validate(sub).ok, face.name
