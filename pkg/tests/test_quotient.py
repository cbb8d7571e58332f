import pytest
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from src.errors import GcdConditionError, InvalidPairError
from src.exact import to_rat
from src.fixtures import cpn_pair, load_fixture
from src.graph import validate
from src.poly import LinearForm
from src.quotient import (
    CharacteristicPair,
    PolygonPair,
    derive_graph,
    face_ring,
    linear_global_elements,
    normal_form_monomials,
    polygon_gcd_check,
    polygon_generator_polynomials,
    polygon_generators,
    polygon_Lk,
    simplex_pair,
)

coordinate = st.integers(min_value=-5, max_value=5)
vectors = st.tuples(coordinate, coordinate)


def polygons(sizes=(3, 4, 5)):
    return st.sampled_from(sizes).flatmap(lambda m: st.lists(vectors, min_size=m, max_size=m))


def build_polygon(raw):
    try:
        return PolygonPair.of(raw)
    except InvalidPairError:
        assume(False)


def outgoing_labels(graph, vertex):
    return {graph.alpha[d] for d in graph.outgoing(vertex)}


def test_derived_weighted_projective_labels(p1236):
    graph = derive_graph(p1236)
    assert len(graph.darts) == 12
    assert validate(graph).ok
    assert outgoing_labels(graph, "F1.F3.F4") == {
        LinearForm.of(["-1/2", 0, 0]),
        LinearForm.of(["-3/2", 1, 0]),
        LinearForm.of([-3, 0, 1]),
    }
    assert outgoing_labels(graph, "F2.F3.F4") == {
        LinearForm.of([1, 0, 0]),
        LinearForm.of([0, 1, 0]),
        LinearForm.of([0, 0, 1]),
    }


def test_weighted_projective_determinants(p1236):
    assert p1236.vertex_determinants() == {"F2.F3.F4": 1, "F1.F3.F4": 2, "F1.F2.F4": 3, "F1.F2.F3": 6}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_space_is_smooth(n):
    pair = cpn_pair(n)
    assert set(pair.vertex_determinants().values()) == {1}
    graph = derive_graph(pair)
    assert all(a.rtilde() == 1 for a in graph.alpha)


def test_linear_elements_carry_the_facet_vectors(p1236, p1236_ring):
    elements = linear_global_elements(p1236, p1236_ring)
    assert len(elements) == 3
    for i, element in enumerate(elements):
        for name, lam in zip(p1236.facet_names, p1236.lambdas):
            index = p1236_ring.poset.index(p1236_ring.face(name))
            assert element.coefficient([index]) == lam[i]


def test_invalid_pairs():
    with pytest.raises(InvalidPairError):
        simplex_pair([(1, 0), (2, 0), (0, 1)])
    with pytest.raises(InvalidPairError):
        CharacteristicPair.from_names(1, [("F", [1]), ("F", [-1])], [["F"]], [])
    with pytest.raises(InvalidPairError):
        CharacteristicPair.from_names(1, [("F", [1])], [["G"]], [])
    with pytest.raises(InvalidPairError):
        PolygonPair.of([(1, 0)])
    with pytest.raises(InvalidPairError):
        PolygonPair.of([(1, 0), (2, 0), (0, 1)])


def test_missing_edges_are_reported():
    pair = CharacteristicPair(
        n=1, facet_names=("F", "G"), lambdas=((1,), (-1,)),
        vertices=(frozenset({0}), frozenset({1})), edges=(), vertex_names=("p", "q"))
    assert any("has 0 edges" in problem for problem in pair.problems())


@given(polygons())
@settings(max_examples=15, deadline=None)
def test_polygon_labels_follow_the_determinants(raw):
    polygon = build_polygon(raw)
    graph = derive_graph(polygon.to_characteristic_pair())
    for k in range(1, polygon.m + 1):
        a, b = polygon.vector(k)
        forward, backward = graph.alpha[2 * (k - 1)], graph.alpha[2 * (k - 1) + 1]
        assert forward == LinearForm.of([b, -a]).scaled(to_rat(1) / polygon.determinant(k - 1))
        assert backward == LinearForm.of([-b, a]).scaled(to_rat(1) / polygon.determinant(k))


def test_gcd_check():
    assert polygon_gcd_check(load_fixture("p112")) == ([1, 1, 2], 1, True)
    assert polygon_gcd_check(load_fixture("gcd2-triangle")) == ([2, 2, 2], 2, False)


def test_lk_lattice_of_weighted_plane(p112):
    assert polygon_Lk(p112, 1, 3).tolist() == [[1, 0, 1], [0, 1, 0], [0, 0, 2]]
    assert polygon_Lk(p112, 1, 1).is_full
    assert polygon_generators(p112, 1).tolist() == [[1, 0, 1], [0, 1, 0], [0, 0, 2]]
    with pytest.raises(IndexError):
        polygon_Lk(p112, 1, 4)
    with pytest.raises(IndexError):
        polygon_Lk(p112, 1, 0)


def test_gcd_condition_is_enforced():
    polygon = load_fixture("gcd2-triangle")
    with pytest.raises(GcdConditionError):
        polygon_generators(polygon, 1)
    assert polygon_generators(polygon, 1, check_gcd=False).rank == 3


@pytest.mark.parametrize("n", [1, 2])
def test_generator_polynomials_are_integral(p112, p112_ring, n):
    generators = polygon_generator_polynomials(p112, n, p112_ring)
    assert len(generators) == 3 * n
    assert all(p112_ring.is_integral(g) for g in generators)
    assert all(g.degree == n for g in generators)


def _matches_integrality(polygon, n, check_gcd=True):
    ring = face_ring(polygon.to_characteristic_pair())
    expected = ring.integrality_lattice(n, normal_form_monomials(polygon, n, ring)).lattice
    return polygon_generators(polygon, n, check_gcd) == expected


@pytest.mark.parametrize("name", ["p112", "cp2-polygon", "square", "weighted-square", "two-gon"])
@pytest.mark.parametrize("n", [1, 2])
def test_generators_match_integrality_on_fixtures(name, n):
    assert _matches_integrality(load_fixture(name), n)


@pytest.mark.parametrize("n", [1, 2])
def test_weighted_two_gon_without_gcd_check(n):
    assert _matches_integrality(load_fixture("two-gon-weighted"), n, check_gcd=False)


@pytest.mark.parametrize("n", [1, 2])
@given(raw=polygons())
@settings(max_examples=20, deadline=None)
def test_generators_match_integrality_on_random_polygons(raw, n):
    polygon = build_polygon(raw)
    assume(polygon_gcd_check(polygon)[2])
    assert _matches_integrality(polygon, n)


@pytest.mark.parametrize("name", ["p1236", "p112", "weighted-square", "two-gon"])
def test_derived_edges_are_determinant_parallel(name):
    pair = load_fixture(name)
    if isinstance(pair, PolygonPair):
        pair = pair.to_characteristic_pair()
    determinants = pair.vertex_determinants()
    graph = derive_graph(pair)
    for e in graph.edges:
        dart, back = graph.darts[e], graph.reverse(e)
        forward = graph.alpha[e].scaled(determinants[dart.origin])
        backward = graph.alpha[back].scaled(determinants[dart.target])
        assert forward.is_integral() and backward.is_integral()
        assert backward.ratio_to(forward) in (to_rat(1), to_rat(-1))
