/** Stacked-contour rendering: project each layer's closed polygons at its
 * extrusion height into an isometric-style 2D view, back layers first. All
 * geometry comes from the contour payload; only the projection is local. */

import type { ContourDocument } from "./types.js";

export interface ProjectedRing {
  layer: number;
  /** SVG polygon points attribute in view coordinates. */
  points: string;
  /** Depth used for paint order (smaller = drawn first / further away). */
  depth: number;
}

export interface Projection {
  rings: ProjectedRing[];
  layerCount: number;
  width: number;
  height: number;
}

const COS30 = Math.cos(Math.PI / 6);
const SIN30 = Math.sin(Math.PI / 6);

/** Axonometric map of a world point (x, y) at height z to view space. */
export function projectPoint(x: number, y: number, z: number,
                             scale: number): [number, number] {
  const vx = (x - y) * COS30 * scale;
  const vy = (x + y) * SIN30 * scale - z * scale;
  return [vx, vy];
}

/** Project a whole contour document; z of layer i is i * layer_height in
 * millimetres, matching the mesh/G-code exporters' vertical spacing. */
export function projectStack(doc: ContourDocument, viewWidth = 640,
                             viewHeight = 480): Projection {
  const unit = doc.config.unit_to_mm;
  const dz = doc.config.layer_height;
  const [ew, eh] = doc.config.env_size;
  const worldSpan = (ew + eh) * unit;
  const scale = viewWidth / (worldSpan * COS30 || 1);

  const rings: ProjectedRing[] = [];
  doc.layers.forEach((layer, li) => {
    const z = li * dz;
    for (const poly of layer) {
      const pts = poly
        .map(([x, y]) => {
          const [vx, vy] = projectPoint(x * unit, y * unit, z, scale);
          return `${vx.toFixed(2)},${vy.toFixed(2)}`;
        })
        .join(" ");
      // back-to-front: deeper (larger x+y) first, lower layers first
      const depth = li * 1e6 +
        poly.reduce((acc, [x, y]) => Math.min(acc, -(x + y)), Infinity);
      rings.push({ layer: li, points: pts, depth });
    }
  });
  rings.sort((p, q) => p.layer - q.layer || p.depth - q.depth);
  return { rings, layerCount: doc.layers.length, width: viewWidth,
           height: viewHeight };
}
