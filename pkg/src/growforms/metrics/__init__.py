from .complexity import ComplexityReport, complexity, convexity, quartile_dispersion, splitting_score
from .coverage import CoverageReport, relative_coverage, tile_support
from .fitness import FitnessVector, evaluate
from .geometry import convex_hull, interior_angles, min_width, perimeter, polygon_area, polygon_centroid
from .printability import PrintabilityReport, layer_support, printability

__all__ = [
    "convex_hull",
    "min_width",
    "perimeter",
    "polygon_area",
    "polygon_centroid",
    "interior_angles",
    "layer_support",
    "printability",
    "PrintabilityReport",
    "tile_support",
    "relative_coverage",
    "CoverageReport",
    "convexity",
    "quartile_dispersion",
    "splitting_score",
    "complexity",
    "ComplexityReport",
    "evaluate",
    "FitnessVector",
]
