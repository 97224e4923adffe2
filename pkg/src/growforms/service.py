"""HTTP studio service: persisted runs, individuals, interpolations, and
exports behind a small JSON API, with long jobs executed by a background
worker and observed by polling."""

from __future__ import annotations

import contextlib
import datetime
import queue
import threading
import uuid

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from .config import MetricsConfig, SimConfig
from .evolve import (
    EnvironmentMismatch,
    EvolutionConfig,
    run_evolution,
    run_interpolation,
)
from .evolve.runner import evaluate_genome
from .export import PrinterProfile, to_gcode, to_mesh
from .genome import decode_genome
from .metrics import evaluate
from .sim import grow
from .stack import emit_contour_json, individual_id
from .store import Store, interpolation_id

__all__ = ["create_app", "JobManager"]


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


class JobManager:
    """FIFO background job execution with file-persisted job records."""

    def __init__(self, store: Store):
        self.store = store
        self.queue: queue.Queue = queue.Queue()
        self._thread: threading.Thread | None = None
        self._stop = threading.Event()

    def start(self) -> None:
        if self._thread is None or not self._thread.is_alive():
            self._stop.clear()
            self._thread = threading.Thread(target=self._loop, daemon=True)
            self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        self.queue.put(None)
        if self._thread is not None:
            self._thread.join(timeout=30)

    def submit(self, kind: str, params: dict, result: dict | None = None) -> str:
        job_id = uuid.uuid4().hex[:16]
        self.store.put_job(job_id, {
            "id": job_id,
            "kind": kind,
            "status": "queued",
            "progress": 0.0,
            "created": _now(),
            "updated": _now(),
            "params": params,
            "result": result,
        })
        self.queue.put(job_id)
        return job_id

    def _update(self, job_id: str, **changes) -> None:
        doc = self.store.get_job(job_id) or {}
        if "progress" in changes:
            changes["progress"] = max(changes["progress"], doc.get("progress", 0.0))
        doc.update(changes, updated=_now())
        self.store.put_job(job_id, doc)

    def _loop(self) -> None:
        while not self._stop.is_set():
            job_id = self.queue.get()
            if job_id is None:
                continue
            doc = self.store.get_job(job_id)
            if doc is None:
                continue
            self._update(job_id, status="running")
            try:
                result = self._execute(job_id, doc)
                self._update(job_id, status="done", progress=1.0, result=result)
            except Exception as exc:
                self._update(job_id, status="failed",
                             error=f"{type(exc).__name__}: {exc}")

    def _execute(self, job_id: str, doc: dict) -> dict:
        kind = doc["kind"]
        params = doc["params"]
        if kind == "evolution":
            return self._run_evolution(job_id, params)
        if kind == "interpolation":
            return self._run_interpolation(job_id, params)
        if kind == "growth":
            return self._run_growth(job_id, params)
        raise ValueError(f"unknown job kind: {kind}")

    def _run_evolution(self, job_id: str, params: dict) -> dict:
        cfg = EvolutionConfig.from_dict(params)

        def on_generation(record):
            # persist metadata for all individuals; layers for the best
            for ind in record.individuals:
                self.store.put_individual(
                    ind.individual_id, ind.genome, cfg.env_seed,
                    cfg.sim_config, cfg.metrics_config, ind.fitness,
                )
            best = record.individuals[record.best_index]
            if not self.store.has_layers(best.individual_id):
                stack = grow(decode_genome(best.genome), cfg.env_seed,
                             cfg.sim_config)
                self.store.put_individual(
                    best.individual_id, best.genome, cfg.env_seed,
                    cfg.sim_config, cfg.metrics_config, best.fitness,
                    stack=stack,
                )

        def progress(done, total):
            self._update(job_id, progress=done / total)

        archive = run_evolution(cfg, on_individual=on_generation,
                                progress=progress)
        self.store.put_run(archive.run_id, archive.to_dict())
        return {"run_id": archive.run_id}

    def _run_interpolation(self, job_id: str, params: dict) -> dict:
        def progress(done, total):
            self._update(job_id, progress=done / total)

        result = run_interpolation(params["a"], params["b"], params["n"],
                                   self.store, progress=progress)
        interp_id = interpolation_id(params["a"], params["b"], params["n"])
        self.store.put_interpolation(interp_id, result.to_dict())
        return {"interpolation_id": interp_id}

    def _run_growth(self, job_id: str, params: dict) -> dict:
        sim_cfg = SimConfig.from_dict(params.get("sim_config", {}))
        met_cfg = MetricsConfig.from_dict(params.get("metrics_config", {}))
        genome = params["genome"]
        env_seed = int(params["env_seed"])
        ind_id = individual_id(genome, env_seed, sim_cfg, met_cfg)
        stack = grow(decode_genome(genome), env_seed, sim_cfg)
        fitness = evaluate(stack, met_cfg)
        self.store.put_individual(ind_id, genome, env_seed, sim_cfg, met_cfg,
                                  fitness, stack=stack)
        return {"individual_id": ind_id}


def _error(status: int, error: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": error, "detail": detail})


def create_app(store_root: str, start_worker: bool = True) -> FastAPI:
    store = Store(store_root)
    jobs = JobManager(store)

    @contextlib.asynccontextmanager
    async def lifespan(_app):
        if start_worker:
            jobs.start()
        yield
        jobs.stop()

    app = FastAPI(title="growforms studio service", lifespan=lifespan)
    app.state.store = store
    app.state.jobs = jobs

    @app.post("/api/runs", status_code=202)
    async def submit_run(request: Request):
        body = await request.json()
        try:
            cfg = EvolutionConfig.from_dict(body)
        except (ValueError, TypeError, KeyError) as exc:
            return _error(422, "invalid-config", str(exc))
        job_id = jobs.submit("evolution", cfg.to_dict())
        return {"job_id": job_id}

    @app.get("/api/runs")
    def list_runs():
        out = []
        for run_id in store.list_runs():
            doc = store.get_run(run_id)
            cfg = doc.get("config", {})
            out.append({
                "run_id": run_id,
                "objective": cfg.get("objective"),
                "generations": cfg.get("generations"),
                "lambda": cfg.get("lambda"),
                "env_seed": cfg.get("env_seed"),
            })
        return {"runs": out}

    @app.get("/api/runs/{run_id}")
    def get_run(run_id: str):
        doc = store.get_run(run_id)
        if doc is None:
            return _error(404, "not-found", f"unknown run: {run_id}")
        return doc

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        doc = store.get_job(job_id)
        if doc is None:
            return _error(404, "not-found", f"unknown job: {job_id}")
        return doc

    @app.get("/api/individuals/{ind_id}")
    def get_individual(ind_id: str):
        doc = store.get_individual(ind_id)
        if doc is None:
            return _error(404, "not-found", f"unknown individual: {ind_id}")
        return doc

    @app.get("/api/individuals/{ind_id}/layers")
    def get_layers(ind_id: str):
        data = store.get_layers_bytes(ind_id)
        if data is None:
            return _error(404, "not-found", f"no layers for individual: {ind_id}")
        return Response(content=data, media_type="application/json",
                        headers={"Content-Encoding": "gzip"})

    @app.post("/api/interpolations", status_code=202)
    async def submit_interpolation(request: Request):
        body = await request.json()
        id_a, id_b = body.get("a"), body.get("b")
        n = int(body.get("n", 99))
        rec_a = store.get_individual(id_a) if id_a else None
        rec_b = store.get_individual(id_b) if id_b else None
        if rec_a is None or rec_b is None:
            missing = id_a if rec_a is None else id_b
            return _error(404, "not-found", f"unknown individual: {missing}")
        same = (rec_a["env_seed"] == rec_b["env_seed"]
                and rec_a["sim_config"] == rec_b["sim_config"]
                and rec_a["metrics_config"] == rec_b["metrics_config"])
        if not same:
            return _error(409, "environment-mismatch",
                          "endpoints must share env_seed and configs "
                          "(identical environments required)")
        job_id = jobs.submit("interpolation", {"a": id_a, "b": id_b, "n": n})
        return {"job_id": job_id,
                "interpolation_id": interpolation_id(id_a, id_b, n)}

    @app.get("/api/interpolations/{interp_id}")
    def get_interpolation(interp_id: str):
        doc = store.get_interpolation(interp_id)
        if doc is None:
            return _error(404, "not-found", f"unknown interpolation: {interp_id}")
        return doc

    @app.get("/api/individuals/{ind_id}/export")
    def export_individual(ind_id: str, format: str = "json"):
        if format not in ("gcode", "obj", "json"):
            return _error(400, "unsupported-format",
                          f"format must be gcode, obj, or json; got {format!r}")
        stack = store.get_stack(ind_id)
        if stack is None:
            return _error(404, "not-found", f"no layers for individual: {ind_id}")
        if format == "json":
            return Response(content=emit_contour_json(stack),
                            media_type="application/json")
        if format == "gcode":
            return PlainTextResponse(to_gcode(stack, PrinterProfile()))
        return PlainTextResponse(to_mesh(stack, resample_n=64))

    return app
