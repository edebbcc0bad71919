"""Deep commuting graphs of finite groups.

Vertices are group elements; x ~ y when lifts of x and y commute in a Schur
cover.  The package enumerates covers, decides adjacency through several
independent oracles, builds the power / enhanced power / deep commuting /
commuting hierarchy and checks structural claims about it.
"""

__version__ = "0.1.0"

from .catalog import build_group, format_spec, parse_spec  # noqa: E402
from .graphs import Graph, build_hierarchy, deep_commuting_graph  # noqa: E402
from .oracles import default_oracle  # noqa: E402

__all__ = [
    "Graph", "__version__", "build_group", "build_hierarchy", "deep_commuting_graph",
    "default_oracle", "format_spec", "parse_spec",
]
