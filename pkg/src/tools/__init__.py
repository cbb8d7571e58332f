# Torus orbifold MCP tools
from .graph_tools import cmd_derive, cmd_faces, cmd_validate
from .thom_tools import cmd_lattice, cmd_thom
from .cohomology_tools import cmd_cohomology, cmd_verify
from .polygon_tools import cmd_polygon
from .fixture_tools import list_fixtures

__all__ = [
    "cmd_validate",
    "cmd_derive",
    "cmd_faces",
    "cmd_thom",
    "cmd_lattice",
    "cmd_cohomology",
    "cmd_polygon",
    "cmd_verify",
    "list_fixtures",
]
