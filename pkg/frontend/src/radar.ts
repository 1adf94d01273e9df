import { subjectColor } from "./colors.js";
import type { EntityRef, FingerprintResponse } from "./types.js";

/** No more than this many radar cells are shown per screen; the rest
 * scroll. */
export const MAX_VISIBLE_RADARS = 15;

export type MatrixSort = "subject" | "cluster";

/** Vertex positions of a radar polygon. Axes start at 12 o'clock and run
 * clockwise; a value of 1 sits exactly on the rim. */
export function radarVertices(
  values: number[],
  cx: number,
  cy: number,
  radius: number,
): [number, number][] {
  const n = values.length;
  return values.map((v, i) => {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / n;
    const r = Math.max(0, Math.min(1, v)) * radius;
    return [cx + r * Math.cos(angle), cy + r * Math.sin(angle)];
  });
}

export function radarPath(values: number[], cx: number, cy: number, radius: number): string {
  const vertices = radarVertices(values, cx, cy, radius);
  if (vertices.length === 0) return "";
  const [first, ...rest] = vertices;
  return (
    `M ${first[0].toFixed(2)} ${first[1].toFixed(2)} ` +
    rest.map(([x, y]) => `L ${x.toFixed(2)} ${y.toFixed(2)}`).join(" ") +
    " Z"
  );
}

export interface MatrixGrid {
  rows: string[]; // row labels
  columns: string[]; // column labels
  cells: { row: number; column: number; entity: EntityRef }[];
}

/** Arrange entities into the comparison grid. Sorted by subject: rows are
 * subjects, columns cluster ids. Sorted by cluster: transposed. */
export function matrixGrid(entities: EntityRef[], sort: MatrixSort): MatrixGrid {
  const subjects = [...new Set(entities.map((e) => e.subject_id))].sort();
  const clusters = [...new Set(entities.map((e) => e.cluster_id))].sort(
    (a, b) => a - b,
  );
  const clusterLabels = clusters.map((c) => `cluster ${c}`);
  const rows = sort === "subject" ? subjects : clusterLabels;
  const columns = sort === "subject" ? clusterLabels : subjects;
  const cells = entities.map((entity) => {
    const si = subjects.indexOf(entity.subject_id);
    const ci = clusters.indexOf(entity.cluster_id);
    return sort === "subject"
      ? { row: si, column: ci, entity }
      : { row: ci, column: si, entity };
  });
  return { rows, columns, cells };
}

const SVG_NS = "http://www.w3.org/2000/svg";

/** One radar chart as an SVG element. Values are shown verbatim from the
 * fingerprint; the axis order is whatever the server emitted (it sorts
 * lexicographically). */
export function buildRadarSvg(
  fingerprint: FingerprintResponse,
  size: number,
  stroke?: string,
  showLabels = false,
): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(size));
  svg.setAttribute("height", String(size));
  svg.setAttribute("class", "radar");
  const cx = size / 2;
  const cy = size / 2;
  const radius = size * 0.38;

  for (const ringFraction of [0.5, 1.0]) {
    const ring = document.createElementNS(SVG_NS, "circle");
    ring.setAttribute("cx", String(cx));
    ring.setAttribute("cy", String(cy));
    ring.setAttribute("r", String(radius * ringFraction));
    ring.setAttribute("class", "radar-ring");
    svg.appendChild(ring);
  }
  const spokes = radarVertices(
    fingerprint.values.map(() => 1),
    cx,
    cy,
    radius,
  );
  spokes.forEach(([x, y], i) => {
    const spoke = document.createElementNS(SVG_NS, "line");
    spoke.setAttribute("x1", String(cx));
    spoke.setAttribute("y1", String(cy));
    spoke.setAttribute("x2", String(x));
    spoke.setAttribute("y2", String(y));
    spoke.setAttribute("class", "radar-spoke");
    svg.appendChild(spoke);
    if (showLabels) {
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(cx + (x - cx) * 1.22));
      label.setAttribute("y", String(cy + (y - cy) * 1.22));
      label.setAttribute("class", "radar-axis-label");
      label.textContent = fingerprint.axis_names[i];
      svg.appendChild(label);
    }
  });

  const polygon = document.createElementNS(SVG_NS, "path");
  polygon.setAttribute("d", radarPath(fingerprint.values, cx, cy, radius));
  polygon.setAttribute("class", "radar-shape");
  polygon.setAttribute(
    "style",
    `stroke: ${stroke ?? subjectColor(fingerprint.subject_id)}`,
  );
  svg.appendChild(polygon);
  return svg;
}
