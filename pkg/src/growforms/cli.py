"""Command-line entry point.

Subcommands: grow, evolve, interp, export, eval, serve. Diagnostics go to
stderr; machine-readable output goes to stdout or the requested files.
Exit codes: 0 success, 2 usage/validation error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .config import MetricsConfig, SimConfig
from .genome import decode_genome
from .metrics import evaluate
from .sim import grow
from .stack import emit_contour_json, individual_id, parse_contour_json

USAGE_ERROR = 2


def _fail(message: str, code: int = 1) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_genome(spec: str) -> list[float]:
    if spec.startswith("@"):
        values = json.loads(Path(spec[1:]).read_text())
    else:
        values = [float(v) for v in spec.split(",")]
    if len(values) != 5:
        raise ValueError("genome must have exactly 5 components")
    return [float(v) for v in values]


def _load_configs(path: str | None, overrides: dict) -> tuple[SimConfig, MetricsConfig]:
    doc = json.loads(Path(path).read_text()) if path else {}
    sim = dict(doc.get("sim_config", doc.get("sim", {})))
    met = dict(doc.get("metrics_config", doc.get("metrics", {})))
    sim.update({k: v for k, v in overrides.items() if v is not None})
    return SimConfig.from_dict(sim), MetricsConfig.from_dict(met)


def cmd_grow(args) -> int:
    try:
        normalized = _load_genome(args.genome)
        sim_cfg, met_cfg = _load_configs(args.config, {
            "timesteps": args.timesteps,
            "warmup": args.warmup,
        })
        genome = decode_genome(normalized)
    except (ValueError, OSError) as exc:
        return _fail(str(exc), USAGE_ERROR)

    stack = grow(genome, args.seed, sim_cfg)
    Path(args.out).write_text(emit_contour_json(stack))
    fitness = evaluate(stack, met_cfg)
    ind_id = individual_id(normalized, args.seed, sim_cfg, met_cfg)
    print(json.dumps({
        "id": ind_id,
        "fitness": fitness.to_dict(include_reports=False),
        "layers": len(stack.layers),
        "n_s": stack.n_s,
        "out": args.out,
    }))
    return 0


def cmd_evolve(args) -> int:
    from .evolve import EvolutionConfig, run_evolution

    try:
        sim_cfg, met_cfg = _load_configs(args.config, {
            "timesteps": args.timesteps,
            "warmup": args.warmup,
            "env_size": [args.env_size, args.env_size] if args.env_size else None,
        })
        cfg = EvolutionConfig(
            lambda_=args.lambda_, mu=args.mu, generations=args.generations,
            objective=args.objective, env_seed=args.env_seed,
            cma_seed=args.cma_seed, sim_config=sim_cfg, metrics_config=met_cfg,
        )
    except (ValueError, OSError) as exc:
        return _fail(str(exc), USAGE_ERROR)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    def progress(done, total):
        print(f"generation {done}/{total}", file=sys.stderr)

    archive = run_evolution(cfg, progress=progress)
    archive_path = out_dir / f"run-{archive.run_id}.json"
    archive_path.write_text(archive.to_json())

    csv_path = out_dir / f"run-{archive.run_id}.csv"
    with csv_path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["generation", "best_P", "best_Rc", "best_C",
                         "best_overall", "best_so_far"])
        for gen, best in zip(archive.generations, archive.best_so_far):
            top = gen.individuals[gen.best_index].fitness
            writer.writerow([gen.generation, top.P, top.Rc, top.C,
                             top.overall, best])
    print(json.dumps({"run_id": archive.run_id,
                      "archive": str(archive_path), "csv": str(csv_path)}))
    return 0


def cmd_interp(args) -> int:
    from .evolve import EnvironmentMismatch, run_interpolation
    from .store import Store, interpolation_id

    store = Store(args.store)
    try:
        result = run_interpolation(args.a, args.b, args.steps, store)
    except KeyError as exc:
        return _fail(str(exc), USAGE_ERROR)
    except EnvironmentMismatch as exc:
        return _fail(str(exc), USAGE_ERROR)

    interp_id = interpolation_id(args.a, args.b, args.steps)
    store.put_interpolation(interp_id, result.to_dict())
    with Path(args.out).open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["t", "id", "P", "Rc", "C", "overall"])
        for e in result.entries:
            writer.writerow([e.t, e.individual_id, e.fitness.P, e.fitness.Rc,
                             e.fitness.C, e.fitness.overall])
    print(json.dumps({"interpolation_id": interp_id, "entries":
                      len(result.entries), "out": args.out}))
    return 0


def cmd_export(args) -> int:
    from .export import PrinterProfile, to_gcode, to_mesh
    from .store import Store

    store = Store(args.store)
    stack = store.get_stack(args.id)
    if stack is None:
        return _fail(f"no layers stored for individual {args.id}", USAGE_ERROR)
    if args.format == "json":
        text = emit_contour_json(stack)
    elif args.format == "gcode":
        text = to_gcode(stack, PrinterProfile())
    else:
        text = to_mesh(stack, resample_n=args.resample)
    Path(args.out).write_text(text)
    print(json.dumps({"id": args.id, "format": args.format, "out": args.out}))
    return 0


def cmd_eval(args) -> int:
    try:
        stack = parse_contour_json(Path(args.infile).read_text())
        _, met_cfg = _load_configs(args.config, {})
    except (ValueError, OSError) as exc:
        return _fail(str(exc), USAGE_ERROR)
    fitness = evaluate(stack, met_cfg)
    print(json.dumps(fitness.to_dict(include_reports=False)))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.listen.rpartition(":")
    app = create_app(args.store)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="growforms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("grow", help="grow one colony and write contour JSON")
    p.add_argument("--genome", required=True,
                   help="5 comma-separated normalized floats, or @file.json")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--config", help="JSON file with sim_config/metrics_config")
    p.add_argument("--timesteps", type=int)
    p.add_argument("--warmup", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grow)

    p = sub.add_parser("evolve", help="run CMA-ES evolution")
    p.add_argument("--objective", default="overall",
                   choices=["overall", "printability", "coverage", "complexity"])
    p.add_argument("--generations", type=int, default=150)
    p.add_argument("--lambda", dest="lambda_", type=int, default=40)
    p.add_argument("--mu", type=int, default=2)
    p.add_argument("--env-seed", type=int, default=0)
    p.add_argument("--cma-seed", type=int, default=0)
    p.add_argument("--config")
    p.add_argument("--timesteps", type=int)
    p.add_argument("--warmup", type=int)
    p.add_argument("--env-size", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("interp", help="interpolate between two individuals")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--steps", type=int, default=99)
    p.add_argument("--store", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("export", help="export a stored individual")
    p.add_argument("--id", required=True)
    p.add_argument("--format", required=True, choices=["gcode", "obj", "json"])
    p.add_argument("--store", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--resample", type=int, default=64)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("eval", help="score a contour JSON file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--config")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the studio HTTP service")
    p.add_argument("--listen", default="127.0.0.1:8760")
    p.add_argument("--store", required=True)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
