"""
Fixture Tools - the built-in corpus of graphs, pairs and polygons
"""

from src.fixtures import list_fixtures as corpus
from src.tools.envelope import failure, success


def list_fixtures(client) -> dict:
    """
    List the built-in fixtures usable through the 'fixture' argument of every tool.

    Returns:
        dict with 'successful' and 'data' {"fixtures": [{"name", "kind", "description"}]}
    """
    try:
        return success({"fixtures": corpus()})
    except Exception as e:
        return failure(e)
