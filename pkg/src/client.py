"""
Torus orbifold session client - input resolution and per-document caches
"""

import logging
from collections import OrderedDict
from typing import Callable, Optional, TypeVar

from src import codec
from src.codec import Document
from src.config import settings
from src.errors import InputFormatError
from src.facering import FaceRing
from src.fixtures import load_fixture
from src.graph import Connection, OrbifoldGKMGraph, infer_connection
from src.quotient import CharacteristicPair, PolygonPair, derive_graph, face_ring
from src.workspace_utils import resolve_workspace_file, to_filename

_logger = logging.getLogger(__name__)

T = TypeVar("T")


def _cached(cache: "OrderedDict[str, T]", key: str, build: Callable[[], T]) -> T:
    """LRU lookup bounded by settings.cache_size."""
    if key in cache:
        cache.move_to_end(key)
        return cache[key]
    value = build()
    cache[key] = value
    while len(cache) > settings.cache_size:
        cache.popitem(last=False)
    return value


class OrbifoldClient:
    """Loads graphs and pairs, and caches the structures derived from them.

    With `restrict_to_workspace` every input path is resolved inside
    WORKSPACE_PATH; the server sets it, the CLI does not.
    """

    def __init__(self, restrict_to_workspace: bool = False):
        self.restrict_to_workspace = restrict_to_workspace
        self._rings: "OrderedDict[str, FaceRing]" = OrderedDict()
        self._connections: "OrderedDict[str, Connection]" = OrderedDict()

    def load(self, input_path: Optional[str] = None, fixture: Optional[str] = None) -> Document:
        """Exactly one of a JSON file path or a fixture name."""
        if (input_path is None) == (fixture is None):
            raise InputFormatError("Give exactly one input source: a file path or a fixture name.")
        if fixture is not None:
            _logger.debug("Loading fixture %s", fixture)
            return load_fixture(fixture)
        path = resolve_workspace_file(input_path, must_exist=True) if self.restrict_to_workspace else input_path
        _logger.debug("Loading %s", path)
        return codec.load(path)

    def describe(self, input_path: Optional[str] = None, fixture: Optional[str] = None) -> str:
        """Short label of an input source, safe to echo back to the caller."""
        if fixture is not None:
            return f"fixture:{fixture}"
        if self.restrict_to_workspace and input_path:
            return to_filename(resolve_workspace_file(input_path))
        return input_path or ""

    @staticmethod
    def _key(document: Document) -> str:
        return codec.dumps(codec.to_dict(document))

    def as_pair(self, document: Document) -> CharacteristicPair:
        if isinstance(document, PolygonPair):
            return document.to_characteristic_pair()
        if isinstance(document, CharacteristicPair):
            return document
        raise InputFormatError("This command needs a characteristic pair or a polygon, got a graph.")

    def as_graph(self, document: Document) -> OrbifoldGKMGraph:
        if isinstance(document, OrbifoldGKMGraph):
            return document
        return derive_graph(self.as_pair(document))

    def connection(self, document: Document) -> Connection:
        return _cached(self._connections, self._key(document), lambda: infer_connection(self.as_graph(document)))

    def face_ring(self, document: Document) -> FaceRing:
        """Face ring of the document; facet faces of pairs carry the facet names."""
        def build() -> FaceRing:
            if isinstance(document, OrbifoldGKMGraph):
                return FaceRing(document, connection=self.connection(document))
            return face_ring(self.as_pair(document))

        return _cached(self._rings, self._key(document), build)


# Singleton client instance
_client: Optional[OrbifoldClient] = None


def get_client() -> OrbifoldClient:
    """Get or create the singleton OrbifoldClient instance."""
    global _client
    if _client is None:
        _client = OrbifoldClient(restrict_to_workspace=settings.workspace_path is not None)
    return _client
