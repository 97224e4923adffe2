import { describe, expect, it } from "vitest";

import { interpolationSeries, runSeries, toPolyline } from "../src/chart.js";
import type { InterpolationResult, RunArchive } from "../src/types.js";

import archiveFixture from "./fixtures/run_archive.json";
import interpFixture from "./fixtures/interpolation.json";

const archive = archiveFixture as unknown as RunArchive;
const interp = interpFixture as unknown as InterpolationResult;

describe("run dashboard series", () => {
  it("has one point per generation in every series", () => {
    const series = runSeries(archive);
    for (const s of series) {
      expect(s.points.length).toBe(archive.generations.length);
    }
  });

  it("displays archive values exactly, no recomputation", () => {
    const byLabel = Object.fromEntries(
      runSeries(archive).map((s) => [s.label, s.points]));
    archive.generations.forEach((rec, i) => {
      const best = rec.individuals[rec.best_index].fitness;
      expect(byLabel["best P"][i]).toEqual({ x: rec.generation, y: best.P });
      expect(byLabel["best Rc"][i]).toEqual({ x: rec.generation, y: best.Rc });
      expect(byLabel["best C"][i]).toEqual({ x: rec.generation, y: best.C });
      expect(byLabel["best overall"][i]).toEqual(
        { x: rec.generation, y: best.overall });
      expect(byLabel["best so far"][i].y).toBe(archive.best_so_far[i]);
    });
  });

  it("best_index points at the top overall fitness of its generation", () => {
    for (const rec of archive.generations) {
      const top = Math.max(...rec.individuals.map((i) => i.fitness.overall));
      expect(rec.individuals[rec.best_index].fitness.overall).toBe(top);
    }
  });
});

describe("interpolation chart", () => {
  it("chart point count equals entry count", () => {
    for (const s of interpolationSeries(interp)) {
      expect(s.points.length).toBe(interp.entries.length);
    }
    // a 5-step session has 7 entries (parents + in-betweens)
    expect(interp.entries.length).toBe(interp.steps + 2);
  });

  it("points carry the archived t and fitness values verbatim", () => {
    const overall = interpolationSeries(interp)
      .find((s) => s.label === "overall")!;
    interp.entries.forEach((e, i) => {
      expect(overall.points[i]).toEqual({ x: e.t, y: e.fitness.overall });
    });
  });
});

describe("polyline projection", () => {
  it("maps points into the viewport", () => {
    const attr = toPolyline(
      [{ x: 0, y: 0 }, { x: 1, y: 0.5 }, { x: 2, y: 1 }], 100, 50, 0, 1);
    expect(attr).toBe("0.00,50.00 50.00,25.00 100.00,0.00");
  });

  it("is empty for no points", () => {
    expect(toPolyline([], 100, 50)).toBe("");
  });
});
