"""growforms: grow 3D-printable forms with a differential-growth simulator,
score them with design fitness metrics, optimize genomes with CMA-ES, and
explore interpolations between selected designs."""

__version__ = "0.1.0"

from .config import MetricsConfig, SimConfig
from .genome import Genome, decode_genome, encode_genome

__all__ = [
    "Genome",
    "decode_genome",
    "encode_genome",
    "SimConfig",
    "MetricsConfig",
]
