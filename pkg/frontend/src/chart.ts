/** Chart series derivation: pure projections of service payloads. Values
 * are copied from archives verbatim — the client never recomputes fitness. */

import type { InterpolationResult, RunArchive } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: Point[];
}

/** Per-generation fitness of each generation's best individual, one series
 * per component, plus the archive's running best-so-far. */
export function runSeries(archive: RunArchive): Series[] {
  const metrics = ["P", "Rc", "C", "overall"] as const;
  const series: Series[] = metrics.map((m) => ({
    label: `best ${m}`,
    points: archive.generations.map((rec) => ({
      x: rec.generation,
      y: rec.individuals[rec.best_index].fitness[m],
    })),
  }));
  series.push({
    label: "best so far",
    points: archive.best_so_far.map((y, i) => ({ x: i, y })),
  });
  return series;
}

/** Fitness-vs-step series over an interpolation session; one point per
 * entry, x = the entry's interpolation parameter t. */
export function interpolationSeries(result: InterpolationResult): Series[] {
  const metrics = ["P", "Rc", "C", "overall"] as const;
  return metrics.map((m) => ({
    label: m,
    points: result.entries.map((e) => ({ x: e.t, y: e.fitness[m] })),
  }));
}

/** SVG polyline points attribute for a series within a viewport. */
export function toPolyline(points: Point[], width: number, height: number,
                           yMin = 0, yMax = 1): string {
  if (points.length === 0) return "";
  const xs = points.map((p) => p.x);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;
  return points
    .map((p) => {
      const px = ((p.x - xMin) / xSpan) * width;
      const py = height - ((p.y - yMin) / ySpan) * height;
      return `${px.toFixed(2)},${py.toFixed(2)}`;
    })
    .join(" ");
}
