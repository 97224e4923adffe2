/** Single-page studio: run dashboard, generation-best gallery with A/B
 * endpoint slots, and the interpolation explorer. All numbers shown come
 * straight from service responses. */

import { ApiError, StudioClient } from "./api.js";
import { interpolationSeries, runSeries, toPolyline, type Series } from "./chart.js";
import { projectStack } from "./render.js";
import { EnvironmentMismatchError, InterpolationSession, SelectionSlots } from "./state.js";
import type { IndividualResource, RunArchive } from "./types.js";

const SERIES_COLORS: Record<string, string> = {
  "best P": "#4477aa", "best Rc": "#ee6677", "best C": "#ccbb44",
  "best overall": "#228833", "best so far": "#aa3377",
  P: "#4477aa", Rc: "#ee6677", C: "#ccbb44", overall: "#228833",
};

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, attrs: Record<string, string> = {}, text = ""):
    HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text) node.textContent = text;
  return node;
}

function svgChart(series: Series[], width = 560, height = 240): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "chart");
  for (const s of series) {
    const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
    line.setAttribute("points", toPolyline(s.points, width, height, -1, 1));
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", SERIES_COLORS[s.label] ?? "#666");
    line.append(el("title" as never, {}, s.label) as never);
    svg.append(line);
  }
  return svg;
}

class StudioApp {
  private readonly client: StudioClient;
  private readonly root: HTMLElement;
  private readonly slots = new SelectionSlots();
  private session: InterpolationSession | null = null;

  constructor(client: StudioClient, root: HTMLElement) {
    this.client = client;
    this.root = root;
  }

  async start(): Promise<void> {
    this.root.replaceChildren(el("p", {}, "loading runs…"));
    try {
      const { runs } = await this.client.listRuns();
      this.renderRunList(runs.map((r) => r.run_id));
    } catch (exc) {
      this.renderRetry(String(exc));
    }
  }

  private renderRetry(detail: string): void {
    const button = el("button", {}, "retry");
    button.onclick = () => void this.start();
    this.root.replaceChildren(
      el("p", { class: "error" }, `service unreachable: ${detail}`), button);
  }

  private renderRunList(runIds: string[]): void {
    this.root.replaceChildren(el("h1", {}, "growforms studio"));
    if (runIds.length === 0) {
      this.root.append(el("p", {}, "no runs archived yet — submit one via " +
        "the CLI or POST /api/runs"));
      return;
    }
    const list = el("ul", { class: "runs" });
    for (const id of runIds) {
      const item = el("li");
      const link = el("a", { href: `#run/${id}` }, id);
      link.onclick = () => void this.openRun(id);
      item.append(link);
      list.append(item);
    }
    this.root.append(list);
  }

  private async openRun(runId: string): Promise<void> {
    const archive = await this.client.getRun(runId);
    this.root.replaceChildren(
      el("h1", {}, `run ${archive.run_id}`),
      el("p", {}, `objective ${archive.config.objective}, ` +
        `λ=${archive.config.lambda}, ${archive.config.generations} generations`),
      svgChart(runSeries(archive)),
    );
    await this.renderGallery(archive);
  }

  private async renderGallery(archive: RunArchive): Promise<void> {
    const gallery = el("div", { class: "gallery" });
    this.root.append(el("h2", {}, "generation bests"), gallery);
    for (const rec of archive.generations) {
      const best = rec.individuals[rec.best_index];
      const card = el("div", { class: "card" });
      card.append(el("h3", {}, `gen ${rec.generation}`),
                  el("p", {}, `overall ${best.fitness.overall.toFixed(4)}`));
      try {
        const doc = await this.client.getLayers(best.id);
        const projection = projectStack(doc, 200, 150);
        const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
        svg.setAttribute("viewBox", `-100 -20 ${projection.width} ${projection.height}`);
        for (const ring of projection.rings) {
          const poly = document.createElementNS(
            "http://www.w3.org/2000/svg", "polygon");
          poly.setAttribute("points", ring.points);
          poly.setAttribute("class", "contour");
          svg.append(poly);
        }
        card.append(svg,
                    el("p", {}, `${projection.layerCount} layers`));
      } catch {
        card.append(el("p", { class: "error" }, "layers unavailable"));
      }
      for (const slot of ["a", "b"] as const) {
        const btn = el("button", {}, `slot ${slot.toUpperCase()}`);
        btn.onclick = () => void this.select(slot, best.id);
        card.append(btn);
      }
      gallery.append(card);
    }
    const bar = el("div", { class: "actions" });
    const go = el("button", { disabled: "" }, "Interpolate");
    go.id = "interpolate";
    go.onclick = () => void this.interpolate();
    bar.append(go);
    this.root.append(bar);
  }

  private async select(slot: "a" | "b", id: string): Promise<void> {
    const individual: IndividualResource = await this.client.getIndividual(id);
    try {
      this.slots.assign(slot, individual);
    } catch (exc) {
      if (exc instanceof EnvironmentMismatchError) {
        window.alert(exc.message);
        return;
      }
      throw exc;
    }
    const go = document.getElementById("interpolate") as HTMLButtonElement | null;
    if (go) go.disabled = !this.slots.ready;
  }

  private async interpolate(): Promise<void> {
    if (!this.slots.a || !this.slots.b) return;
    let submitted;
    try {
      submitted = await this.client.submitInterpolation(
        this.slots.a.id, this.slots.b.id, 99);
    } catch (exc) {
      if (exc instanceof ApiError) {
        window.alert(`${exc.code}: ${exc.message}`);
        return;
      }
      throw exc;
    }
    const progress = el("p", {}, "interpolating…");
    this.root.append(progress);
    const job = await this.client.waitForJob(submitted.job_id, 500, (j) => {
      progress.textContent = `interpolating… ${(j.progress * 100).toFixed(0)}%`;
    });
    if (job.status === "failed") {
      progress.textContent = `interpolation failed: ${job.error ?? "unknown"}`;
      return;
    }
    const result = await this.client.getInterpolation(submitted.interpolation_id);
    this.session = new InterpolationSession(result);
    this.renderExplorer();
  }

  private renderExplorer(): void {
    const session = this.session;
    if (!session) return;
    const panel = el("div", { class: "explorer" });
    panel.append(el("h2", {}, "interpolation explorer"),
                 svgChart(interpolationSeries(session.result)));
    const slider = el("input", {
      type: "range", min: "0", max: String(session.positions - 1), value: "0",
    });
    const label = el("p", {}, `t = ${session.first.t}`);
    const view = el("div", { class: "entry-view" });
    const showCurrent = async () => {
      const entry = session.current;
      label.textContent =
        `t = ${entry.t.toFixed(3)}  overall = ${entry.fitness.overall.toFixed(4)}`;
      const doc = await this.client.getLayers(entry.id);
      const projection = projectStack(doc, 320, 240);
      const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
      svg.setAttribute("viewBox", `-160 -20 ${projection.width} ${projection.height}`);
      for (const ring of projection.rings) {
        const poly = document.createElementNS("http://www.w3.org/2000/svg", "polygon");
        poly.setAttribute("points", ring.points);
        poly.setAttribute("class", "contour");
        svg.append(poly);
      }
      const exports = el("p");
      for (const fmt of ["gcode", "obj", "json"] as const) {
        exports.append(el("a", {
          href: this.client.exportUrl(entry.id, fmt), download: "",
        }, ` ${fmt} `));
      }
      view.replaceChildren(svg, exports);
    };
    slider.oninput = () => {
      session.seek(Number(slider.value));
      void showCurrent();
    };
    panel.append(slider, label, view);
    this.root.append(panel);
    void showCurrent();
  }
}

export function mount(root: HTMLElement, base = ""): StudioApp {
  const app = new StudioApp(new StudioClient(base), root);
  void app.start();
  return app;
}
