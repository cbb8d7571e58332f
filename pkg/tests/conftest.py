import os

import hypothesis
import pytest

from src.client import OrbifoldClient
from src.fixtures import cp2_graph, cpn_pair, doubled_k4_graph, p1236_pair, spindle
from src.quotient import PolygonPair, face_ring

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("ci", max_examples=20, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def client():
    return OrbifoldClient()


@pytest.fixture(scope="session")
def p1236():
    return p1236_pair()


@pytest.fixture(scope="session")
def p1236_ring(p1236):
    return face_ring(p1236)


@pytest.fixture(scope="session")
def p112():
    return PolygonPair.of([(1, 0), (0, 1), (-1, -2)], "P(1,1,2)")


@pytest.fixture(scope="session")
def p112_ring(p112):
    return face_ring(p112.to_characteristic_pair())


@pytest.fixture(scope="session")
def cp2():
    return cp2_graph()


@pytest.fixture(scope="session")
def cp2_pair():
    return cpn_pair(2)


@pytest.fixture(scope="session")
def doubled_k4():
    return doubled_k4_graph()


@pytest.fixture(scope="session")
def spindle23():
    return spindle(2, 3)
