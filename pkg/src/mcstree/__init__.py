"""Exact minimum consistent subsets on vertex-colored trees."""

from .consistency import (StateTuple, admissible_signature, is_consistent_subset,
                          is_vertex_consistent, nearest_set, signature)
from .dp import Solution, solve
from .graph import INF, ColoredTree, parse_instance, root_view, serialize

__version__ = "0.1.0"
