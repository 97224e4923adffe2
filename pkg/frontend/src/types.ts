/** JSON shapes served by the studio service. Field names mirror the wire
 * format exactly; the UI never recomputes any of these values. */

export interface Fitness {
  version: number;
  P: number;
  Rc: number;
  C: number;
  overall: number;
}

export interface ArchivedIndividual {
  genome: number[];
  id: string;
  fitness: Fitness;
  error?: string;
}

export interface GenerationRecord {
  generation: number;
  individuals: ArchivedIndividual[];
  best_index: number;
  sigma: number;
}

export interface RunConfig {
  lambda: number;
  mu: number;
  generations: number;
  objective: string;
  env_seed: number;
  cma_seed: number;
  sigma0: number;
  sim_config: Record<string, unknown>;
  metrics_config: Record<string, unknown>;
}

export interface RunArchive {
  version: number;
  run_id: string;
  config: RunConfig;
  generations: GenerationRecord[];
  best_so_far: number[];
}

export interface RunSummary {
  run_id: string;
  objective: string | null;
  generations: number | null;
  lambda: number | null;
  env_seed: number | null;
}

export interface IndividualResource {
  id: string;
  genome: number[];
  env_seed: number;
  sim_config: Record<string, unknown>;
  metrics_config: Record<string, unknown>;
  fitness: Fitness;
  has_layers: boolean;
}

export interface Job {
  id: string;
  kind: "evolution" | "interpolation" | "growth";
  status: "queued" | "running" | "done" | "failed";
  progress: number;
  created: string;
  updated: string;
  params: Record<string, unknown>;
  result: Record<string, string> | null;
  error?: string;
}

export interface InterpolationEntry {
  t: number;
  genome: number[];
  id: string;
  fitness: Fitness;
}

export interface InterpolationResult {
  version: number;
  id_a: string;
  id_b: string;
  steps: number;
  entries: InterpolationEntry[];
}

/** Canonical contour document from /api/individuals/{id}/layers. */
export interface ContourDocument {
  version: number;
  genome: Record<string, number>;
  env_seed: number;
  config: Record<string, unknown> & {
    layer_height: number;
    unit_to_mm: number;
    env_size: [number, number];
  };
  n_s: number;
  /** layer -> polygon -> vertex [x, y] in simulation units. */
  layers: [number, number][][][];
}

export interface ServiceError {
  error: string;
  detail: string;
}
