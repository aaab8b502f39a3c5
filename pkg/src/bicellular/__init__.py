"""Planted bicellular maps, their trisection surgery, exact counting and
uniform sampling, with applications to two-backbone diagrams."""
__version__ = "0.1.0"

from .counting import (
    SplitTable, bicellular_count, bicellular_count_paths, bicellular_count_rec, catalan,
    diagram_count, diagram_counts, unicellular_count,
)
from .duality import Diagram2B, dual_inverse, format_diagram, parse_diagram, poincare_dual
from .errors import BicellularError
from .map_core import FatMap, PlantedBicellularMap, UnicellularMap, UnicellularPair, format_map, parse_map
from .rng import make_rng
from .sampler import uniform_2backbone_diagram, uniform_bi_matching
from .surgery import decompose, glue, rebuild, slice

__all__ = [
    "BicellularError", "Diagram2B", "FatMap", "PlantedBicellularMap", "SplitTable",
    "UnicellularMap", "UnicellularPair", "bicellular_count", "bicellular_count_paths",
    "bicellular_count_rec", "catalan", "decompose", "diagram_count", "diagram_counts",
    "dual_inverse", "format_diagram", "format_map", "glue", "make_rng", "parse_diagram",
    "parse_map", "poincare_dual", "rebuild", "slice", "uniform_2backbone_diagram",
    "uniform_bi_matching", "unicellular_count",
]
