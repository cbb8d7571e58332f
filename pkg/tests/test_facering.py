import pytest

from src.config import Settings, settings
from src.errors import DimensionMismatchError
from src.facering import FaceRing
from src.fixtures import load_fixture
from src.quotient import face_ring

FACETS = ("F1", "F2", "F3", "F4")


def test_weighted_projective_thom_multipliers(p1236, p1236_ring):
    assert [p1236_ring.minimal_thom(f) for f in FACETS] == [6, 3, 2, 1]
    determinants = p1236.vertex_determinants()
    assert [p1236_ring.lcm_bound(f, determinants) for f in FACETS] == [6, 6, 6, 6]


def test_weighted_projective_degree_two_lattice(p1236_ring):
    coordinates = [p1236_ring.x(f) for f in FACETS]
    lattice = p1236_ring.integrality_lattice(1, coordinates)
    assert lattice.lattice.tolist() == [[1, 1, 1, 0], [0, 3, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]]
    assert lattice.lattice.index() == 6
    assert p1236_ring.integrality_lattice(1).lattice.index() == 6


def test_thom_class_support(p1236_ring):
    tau = p1236_ring.thom_class("F4")
    assert tau.degree == 1
    face = p1236_ring.face("F4")
    for v, value in zip(p1236_ring.graph.vertices, tau.values):
        assert bool(value) == (v in face.vertices)


def test_polygon_minimal_multipliers(p112_ring):
    assert [p112_ring.minimal_thom(f) for f in ("F1", "F2", "F3")] == [2, 1, 2]
    both = p112_ring.x("F1") + p112_ring.x("F3")
    assert p112_ring.is_integral(both)
    assert p112_ring.minimal_multiple(both) == both
    assert p112_ring.minimal_multiple(p112_ring.x("F1")) == p112_ring.x("F1").scaled(2)


def test_minimal_multiple_keeps_direction(p112_ring):
    negative = p112_ring.x("F1").scaled(-3)
    assert p112_ring.minimal_multiple(negative) == p112_ring.x("F1").scaled(-2)
    with pytest.raises(ValueError):
        p112_ring.minimal_multiple(p112_ring.zero())


def test_smooth_pair_needs_no_multipliers(cp2_pair):
    ring = face_ring(cp2_pair)
    assert all(ring.minimal_thom(f) == 1 for f in ring.poset.faces)
    assert ring.integrality_lattice(1).lattice.is_full


@pytest.mark.parametrize("name", ["cp2", "doubled-k4", "spindle-2-3", "p1236", "square"])
def test_relations_vanish(client, name):
    assert client.face_ring(client.load(None, name)).relations_vanish()


def test_relation_of_disjoint_facets_is_the_product():
    ring = face_ring(load_fixture("square").to_characteristic_pair())
    relation = ring.relation("F1", "F3")
    assert relation == ring.x("F1") * ring.x("F3")
    assert not any(ring.mu_values(relation))


def test_relation_of_meeting_edges(cp2):
    ring = FaceRing(cp2)
    first, second = [f for f in ring.poset.by_dimension(1) if "p0" in f.vertices]
    relation = ring.relation(first, second)
    assert relation == ring.x(first) * ring.x(second) - ring.x("p0")
    assert relation.degree == 2


@pytest.mark.parametrize("d", [1, 2])
def test_isomorphism_weighted_projective(p1236_ring, p112_ring, d):
    assert p1236_ring.check_iso_degree(d)
    report = p112_ring.iso_report(d)
    assert report.ok
    assert report.image_rank == report.class_rank


@pytest.mark.parametrize("d", [1, 2, 3])
def test_isomorphism_cp2(cp2, d):
    assert FaceRing(cp2).check_iso_degree(d)


def test_face_polynomial_arithmetic(p112_ring):
    x1, x2 = p112_ring.x("F1"), p112_ring.x("F2")
    square = (x1 + x2) * (x1 + x2)
    assert square.coefficient([p112_ring.poset.index(p112_ring.face("F1"))] * 2) == 1
    assert square.degree == 2
    assert (x1 - x1).is_zero
    assert p112_ring.one().render() == "1"


def test_lattice_coordinates_must_share_degree(p112_ring):
    with pytest.raises(DimensionMismatchError):
        p112_ring.integrality_lattice(1, [p112_ring.x("F1") * p112_ring.x("F2")])
    with pytest.raises(ValueError):
        p112_ring.integrality_lattice(0)


@pytest.mark.parametrize("d", [1, 2])
def test_isomorphism_spindle(spindle23, d):
    assert FaceRing(spindle23).check_iso_degree(d)


def test_mu_is_multiplicative(p1236_ring):
    first = p1236_ring.x("F1") + p1236_ring.x("F2").scaled(3)
    second = p1236_ring.x("F3") - p1236_ring.x("F4")
    product = p1236_ring.mu_values(first * second)
    expected = tuple(a * b for a, b in zip(p1236_ring.mu_values(first), p1236_ring.mu_values(second)))
    assert product == expected


@pytest.mark.parametrize("ring_name", ["p1236_ring", "p112_ring"])
def test_products_of_integral_elements_stay_integral(request, ring_name):
    ring = request.getfixturevalue(ring_name)
    generators = ring.integrality_lattice(1).generators()
    square = ring.integrality_lattice(2)
    for i, first in enumerate(generators):
        for second in generators[i:]:
            product = first * second
            assert ring.is_integral(product)
            vector = [product.coefficient(m.terms[0][0]) for m in square.coordinates]
            assert square.lattice.contains(vector)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_smooth_integrality_lattices_are_full(cp2, cp2_pair, d):
    assert face_ring(cp2_pair).integrality_lattice(d).lattice.is_full
    assert FaceRing(cp2).integrality_lattice(d).lattice.is_full


def test_client_caches_are_bounded(client, monkeypatch):
    monkeypatch.setattr(settings, "cache_size", 2)
    rings = [client.face_ring(client.load(None, name)) for name in ("cp2", "p112", "square")]
    assert len(client._rings) == 2
    # the most recent entries survive and are reused
    assert client.face_ring(client.load(None, "square")) is rings[2]
    with pytest.raises(ValueError):
        Settings(cache_size=0)
