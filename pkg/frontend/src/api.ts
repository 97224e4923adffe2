/** Thin typed client for the studio service HTTP API. Every method maps to
 * exactly one documented endpoint. */

import type {
  ContourDocument,
  IndividualResource,
  InterpolationResult,
  Job,
  RunArchive,
  RunSummary,
  ServiceError,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, body: ServiceError) {
    super(body.detail);
    this.status = status;
    this.code = body.error;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class StudioClient {
  private readonly base: string;
  private readonly fetcher: FetchLike;

  constructor(base = "", fetcher: FetchLike = (...a) => fetch(...a)) {
    this.base = base.replace(/\/$/, "");
    this.fetcher = fetcher;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetcher(this.base + path, init);
    if (!resp.ok) {
      let body: ServiceError;
      try {
        body = (await resp.json()) as ServiceError;
      } catch {
        body = { error: "http-error", detail: `status ${resp.status}` };
      }
      throw new ApiError(resp.status, body);
    }
    return (await resp.json()) as T;
  }

  listRuns(): Promise<{ runs: RunSummary[] }> {
    return this.request("/api/runs");
  }

  getRun(runId: string): Promise<RunArchive> {
    return this.request(`/api/runs/${runId}`);
  }

  submitRun(config: Record<string, unknown>): Promise<{ job_id: string }> {
    return this.request("/api/runs", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
  }

  getJob(jobId: string): Promise<Job> {
    return this.request(`/api/jobs/${jobId}`);
  }

  getIndividual(id: string): Promise<IndividualResource> {
    return this.request(`/api/individuals/${id}`);
  }

  getLayers(id: string): Promise<ContourDocument> {
    return this.request(`/api/individuals/${id}/layers`);
  }

  submitInterpolation(a: string, b: string, n: number):
      Promise<{ job_id: string; interpolation_id: string }> {
    return this.request("/api/interpolations", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ a, b, n }),
    });
  }

  getInterpolation(id: string): Promise<InterpolationResult> {
    return this.request(`/api/interpolations/${id}`);
  }

  /** URL for the export download button; the browser follows it directly. */
  exportUrl(id: string, format: "gcode" | "obj" | "json"): string {
    return `${this.base}/api/individuals/${id}/export?format=${format}`;
  }

  /** Poll a job until it settles; reports progress along the way. */
  async waitForJob(jobId: string, intervalMs = 500,
                   onProgress?: (job: Job) => void): Promise<Job> {
    for (;;) {
      const job = await this.getJob(jobId);
      onProgress?.(job);
      if (job.status === "done" || job.status === "failed") return job;
      await new Promise((r) => setTimeout(r, intervalMs));
    }
  }
}
