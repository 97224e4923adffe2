/** View-model state: endpoint selection slots and the interpolation session.
 * Mirrors the service's identical-environments rule client-side so the user
 * is blocked before ever submitting a conflicting pair. */

import type {
  IndividualResource,
  InterpolationEntry,
  InterpolationResult,
} from "./types.js";

function stableStringify(value: unknown): string {
  if (value === null || typeof value !== "object") return JSON.stringify(value);
  if (Array.isArray(value)) {
    return `[${value.map(stableStringify).join(",")}]`;
  }
  const entries = Object.entries(value as Record<string, unknown>)
    .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
    .map(([k, v]) => `${JSON.stringify(k)}:${stableStringify(v)}`);
  return `{${entries.join(",")}}`;
}

/** True when two individuals grew in identical environments: same seed and
 * byte-equal configurations (key order ignored). */
export function sameEnvironment(a: IndividualResource,
                                b: IndividualResource): boolean {
  return (
    a.env_seed === b.env_seed &&
    stableStringify(a.sim_config) === stableStringify(b.sim_config) &&
    stableStringify(a.metrics_config) === stableStringify(b.metrics_config)
  );
}

export class EnvironmentMismatchError extends Error {
  constructor() {
    super(
      "interpolation endpoints must share env_seed and configs: " +
        "the method requires identical environments",
    );
  }
}

/** The two endpoint slots feeding an interpolation request. */
export class SelectionSlots {
  a: IndividualResource | null = null;
  b: IndividualResource | null = null;

  /** Assign an individual to a slot; throws EnvironmentMismatchError when
   * the other slot holds an individual from a different environment. */
  assign(slot: "a" | "b", individual: IndividualResource): void {
    const other = slot === "a" ? this.b : this.a;
    if (other !== null && !sameEnvironment(other, individual)) {
      throw new EnvironmentMismatchError();
    }
    this[slot] = individual;
  }

  clear(slot: "a" | "b"): void {
    this[slot] = null;
  }

  /** Interpolation may be requested once both slots are filled. */
  get ready(): boolean {
    return this.a !== null && this.b !== null;
  }
}

/** Slider-driven exploration over a finished interpolation session. */
export class InterpolationSession {
  readonly result: InterpolationResult;
  private index = 0;

  constructor(result: InterpolationResult) {
    if (result.entries.length === 0) {
      throw new Error("interpolation session has no entries");
    }
    this.result = result;
  }

  /** Number of slider positions == number of entries (steps + 2). */
  get positions(): number {
    return this.result.entries.length;
  }

  /** Move the slider; positions outside the entry range are clamped. */
  seek(position: number): InterpolationEntry {
    const max = this.positions - 1;
    this.index = Math.min(Math.max(Math.round(position), 0), max);
    return this.current;
  }

  get current(): InterpolationEntry {
    return this.result.entries[this.index];
  }

  /** Entry at the slider minimum: parent A by construction (t = 0). */
  get first(): InterpolationEntry {
    return this.result.entries[0];
  }

  /** Entry at the slider maximum: parent B by construction (t = 1). */
  get last(): InterpolationEntry {
    return this.result.entries[this.positions - 1];
  }
}
