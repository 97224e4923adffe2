"""Colony genome: the five alleles driving growth behaviour.

Genomes live in two coordinate systems: the physical allele ranges below,
and a normalized [0,1]^5 encoding used by the optimizer. The mapping is
affine and lossless in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Genome", "ALLELE_RANGES", "decode_genome", "encode_genome"]

# (low, high) per allele, in genome field order.
ALLELE_RANGES: dict[str, tuple[float, float]] = {
    "eta": (0.01, 1.0),      # metabolic rate
    "nu": (0.01, 2.0),       # cell drag coefficient
    "eps_max": (50.0, 500.0),  # energy capacity
    "k": (0.01, 1.0),        # edge spring coefficient
    "rho": (0.1, 0.9),       # post-split energy ratio
}

_FIELDS = tuple(ALLELE_RANGES)


@dataclass(frozen=True)
class Genome:
    eta: float
    nu: float
    eps_max: float
    k: float
    rho: float

    def __post_init__(self):
        for name in _FIELDS:
            lo, hi = ALLELE_RANGES[name]
            v = getattr(self, name)
            if not (lo <= v <= hi):
                raise ValueError(
                    f"allele {name}={v} outside its range [{lo}, {hi}]"
                )

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in _FIELDS)

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in _FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> Genome:
        return cls(**{name: float(d[name]) for name in _FIELDS})


def decode_genome(normalized) -> Genome:
    """Map a vector in [0,1]^5 onto the allele ranges (affine, per allele)."""
    vals = [float(v) for v in normalized]
    if len(vals) != len(_FIELDS):
        raise ValueError(f"expected {len(_FIELDS)} components, got {len(vals)}")
    alleles = {}
    for name, v in zip(_FIELDS, vals):
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"component {name}={v} outside [0, 1]")
        lo, hi = ALLELE_RANGES[name]
        alleles[name] = lo + v * (hi - lo)
    return Genome(**alleles)


def encode_genome(genome: Genome) -> list[float]:
    """Inverse of decode_genome; returns the normalized [0,1]^5 vector."""
    out = []
    for name in _FIELDS:
        lo, hi = ALLELE_RANGES[name]
        out.append((getattr(genome, name) - lo) / (hi - lo))
    return out
