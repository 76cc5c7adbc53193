"""Community detection benchmarking on SNAP-style edge lists."""

__version__ = "0.1.0"

from .graph import Graph, ParseError, parse_edge_list, read_edge_list  # noqa: E402
from .partition import Partition, canonicalize  # noqa: E402

__all__ = ["Graph", "ParseError", "Partition", "canonicalize", "parse_edge_list", "read_edge_list", "__version__"]
