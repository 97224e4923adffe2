"""On-disk store for individuals, run archives, interpolations, and jobs.

Layout: one JSON file per resource under a type directory; individual layer
stacks live beside their metadata as gzipped canonical contour documents.
All writes go through write-temp-then-rename, so a crash loses at most the
resource being written.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .config import MetricsConfig, SimConfig
from .stack import LayerStack, emit_contour_gz, parse_contour_gz

__all__ = ["Store", "interpolation_id"]


def interpolation_id(id_a: str, id_b: str, n: int) -> str:
    blob = json.dumps({"a": id_a, "b": id_b, "n": n}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        for sub in ("individuals", "runs", "interpolations", "jobs"):
            (self.root / sub).mkdir(parents=True, exist_ok=True)

    def _write_atomic(self, path: Path, data: bytes) -> None:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _write_json(self, path: Path, doc: dict) -> None:
        blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        self._write_atomic(path, blob.encode("utf-8"))

    def _read_json(self, path: Path) -> dict | None:
        if not path.exists():
            return None
        return json.loads(path.read_text())

    # -- individuals ---------------------------------------------------

    def put_individual(self, ind_id: str, genome, env_seed: int,
                       sim_config: SimConfig, metrics_config: MetricsConfig,
                       fitness, stack: LayerStack | None = None) -> None:
        doc = {
            "id": ind_id,
            "genome": [round(float(v), 12) for v in genome],
            "env_seed": int(env_seed),
            "sim_config": sim_config.to_dict(),
            "metrics_config": metrics_config.to_dict(),
            "fitness": fitness.to_dict(),
            "has_layers": stack is not None or self.has_layers(ind_id),
        }
        if stack is not None:
            self._write_atomic(self._layers_path(ind_id), emit_contour_gz(stack))
        self._write_json(self.root / "individuals" / f"{ind_id}.json", doc)

    def get_individual(self, ind_id: str) -> dict | None:
        return self._read_json(self.root / "individuals" / f"{ind_id}.json")

    def _layers_path(self, ind_id: str) -> Path:
        return self.root / "individuals" / f"{ind_id}.layers.json.gz"

    def has_layers(self, ind_id: str) -> bool:
        return self._layers_path(ind_id).exists()

    def get_layers_bytes(self, ind_id: str) -> bytes | None:
        path = self._layers_path(ind_id)
        return path.read_bytes() if path.exists() else None

    def get_stack(self, ind_id: str) -> LayerStack | None:
        data = self.get_layers_bytes(ind_id)
        return parse_contour_gz(data) if data is not None else None

    # -- runs ------------------------------------------------------------

    def put_run(self, run_id: str, archive_doc: dict) -> None:
        self._write_json(self.root / "runs" / f"{run_id}.json", archive_doc)

    def get_run(self, run_id: str) -> dict | None:
        return self._read_json(self.root / "runs" / f"{run_id}.json")

    def list_runs(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "runs").glob("*.json"))

    # -- interpolations --------------------------------------------------

    def put_interpolation(self, interp_id: str, doc: dict) -> None:
        self._write_json(self.root / "interpolations" / f"{interp_id}.json", doc)

    def get_interpolation(self, interp_id: str) -> dict | None:
        return self._read_json(self.root / "interpolations" / f"{interp_id}.json")

    # -- jobs --------------------------------------------------------------

    def put_job(self, job_id: str, doc: dict) -> None:
        self._write_json(self.root / "jobs" / f"{job_id}.json", doc)

    def get_job(self, job_id: str) -> dict | None:
        return self._read_json(self.root / "jobs" / f"{job_id}.json")
