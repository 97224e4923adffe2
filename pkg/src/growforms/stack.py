"""Layer stacks: the captured contour representation of a grown colony.

A LayerStack is the canonical artifact every metric and exporter consumes.
Coordinates are quantized to 6 fractional digits at capture time, so the
in-memory stack and its canonical JSON serialization carry exactly the same
information and the emit/parse pair is a lossless codec. The canonical
bytes double as the identity of the artifact (content hashing).
"""

from __future__ import annotations

import gzip
import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .config import SimConfig
from .genome import Genome, encode_genome

__all__ = [
    "LayerSnapshot",
    "LayerStack",
    "emit_contour_json",
    "parse_contour_json",
    "stack_content_hash",
    "individual_id",
]

FORMAT_VERSION = 1
COORD_DECIMALS = 6


def quantize(points) -> np.ndarray:
    """Round an (n, 2) coordinate array to the canonical precision."""
    return np.round(np.asarray(points, dtype=float), COORD_DECIMALS)


@dataclass
class LayerSnapshot:
    """One polygon ring per living organism, in ring order."""

    polygons: list[np.ndarray] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not self.polygons


@dataclass
class LayerStack:
    genome: Genome
    env_seed: int
    config: SimConfig
    layers: list[LayerSnapshot]
    n_s: int
    extinct: bool = False

    def __post_init__(self):
        if len(self.layers) != self.config.timesteps:
            raise ValueError(
                f"expected {self.config.timesteps} layers, got {len(self.layers)}"
            )


def _fmt(x: float) -> str:
    return f"{x:.{COORD_DECIMALS}f}"


def emit_contour_json(stack: LayerStack) -> str:
    """Canonical, byte-stable JSON serialization of a stack."""
    header = {
        "version": FORMAT_VERSION,
        "genome": {k: round(v, 12) for k, v in stack.genome.to_dict().items()},
        "env_seed": stack.env_seed,
        "config": stack.config.to_dict(),
        "n_s": stack.n_s,
        "extinct": stack.extinct,
    }
    parts = [json.dumps(header, sort_keys=True, separators=(",", ":"))[:-1]]
    parts.append(',"layers":[')
    layer_texts = []
    for snap in stack.layers:
        polys = []
        for ring in snap.polygons:
            pts = ",".join(f"[{_fmt(x)},{_fmt(y)}]" for x, y in ring)
            polys.append(f"[{pts}]")
        layer_texts.append("[" + ",".join(polys) + "]")
    parts.append(",".join(layer_texts))
    parts.append("]}")
    return "".join(parts)


def parse_contour_json(text: str | bytes) -> LayerStack:
    doc = json.loads(text)
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported contour document version: {doc.get('version')}")
    layers = []
    for layer in doc["layers"]:
        polys = [quantize(np.asarray(ring, dtype=float).reshape(-1, 2))
                 for ring in layer]
        layers.append(LayerSnapshot(polygons=polys))
    return LayerStack(
        genome=Genome.from_dict(doc["genome"]),
        env_seed=int(doc["env_seed"]),
        config=SimConfig.from_dict(doc["config"]),
        layers=layers,
        n_s=int(doc["n_s"]),
        extinct=bool(doc.get("extinct", False)),
    )


def emit_contour_gz(stack: LayerStack) -> bytes:
    # mtime=0 keeps the gzip container byte-stable too
    return gzip.compress(emit_contour_json(stack).encode("utf-8"), mtime=0)


def parse_contour_gz(data: bytes) -> LayerStack:
    return parse_contour_json(gzip.decompress(data))


def stack_content_hash(stack: LayerStack) -> str:
    return hashlib.sha256(emit_contour_json(stack).encode("utf-8")).hexdigest()


def individual_id(normalized_genome, env_seed: int, sim_config: SimConfig,
                  metrics_config) -> str:
    """Reproducible identity of an individual: hash of its defining inputs."""
    record = {
        "genome": [f"{float(v):.12f}" for v in normalized_genome],
        "env_seed": int(env_seed),
        "sim_config": sim_config.to_dict(),
        "metrics_config": metrics_config.to_dict(),
    }
    blob = json.dumps(record, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def individual_id_for(genome: Genome, env_seed: int, sim_config: SimConfig,
                      metrics_config) -> str:
    return individual_id(encode_genome(genome), env_seed, sim_config, metrics_config)
