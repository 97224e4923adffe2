from .backend import BACKEND
from .dynamics import (
    absorb_nutrients,
    compute_forces,
    cull,
    divide_cells,
    grow,
    integrate,
    step,
    update_nutrients,
    update_splits,
)
from .state import Colony, Environment, NutrientSource, Organism, init_colony, init_environment

__all__ = [
    "BACKEND",
    "Colony",
    "Environment",
    "NutrientSource",
    "Organism",
    "init_colony",
    "init_environment",
    "update_nutrients",
    "absorb_nutrients",
    "compute_forces",
    "integrate",
    "divide_cells",
    "cull",
    "update_splits",
    "step",
    "grow",
]
