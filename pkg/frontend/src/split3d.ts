import { CameraPose, CameraRig, orbit, projectPoint, zoom } from "./camera.js";
import { rgbCss, subjectColor } from "./colors.js";
import type { ColormapInfo, GeometryResponse } from "./types.js";

export interface Segment {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
  depth: number;
  color: string;
}

/** Center the bundle on the camera target and split it into drawable,
 * depth-sorted 2D segments. Pure; the canvas painting sits elsewhere. */
export function geometrySegments(
  geometry: GeometryResponse,
  pose: CameraPose,
  width: number,
  height: number,
  fallbackColor: string,
): Segment[] {
  let cx = 0, cy = 0, cz = 0, count = 0;
  for (const fiber of geometry.fibers) {
    for (let i = 0; i + 2 < fiber.length; i += 3) {
      cx += fiber[i]; cy += fiber[i + 1]; cz += fiber[i + 2];
      count += 1;
    }
  }
  if (count > 0) { cx /= count; cy /= count; cz /= count; }

  const segments: Segment[] = [];
  geometry.fibers.forEach((fiber, fi) => {
    const colors = geometry.colors?.[fi];
    let previous: [number, number, number] | null = null;
    for (let i = 0, v = 0; i + 2 < fiber.length; i += 3, v += 1) {
      const world: [number, number, number] = [
        fiber[i] - cx, fiber[i + 1] - cy, fiber[i + 2] - cz,
      ];
      const projected = projectPoint(pose, world, width, height);
      if (projected && previous) {
        const color = colors
          ? rgbCss(colors[(v - 1) * 3], colors[(v - 1) * 3 + 1], colors[(v - 1) * 3 + 2])
          : fallbackColor;
        segments.push({
          x0: previous[0], y0: previous[1],
          x1: projected[0], y1: projected[1],
          depth: (previous[2] + projected[2]) / 2,
          color,
        });
      }
      previous = projected;
    }
  });
  segments.sort((a, b) => b.depth - a.depth); // far first
  return segments;
}

export function buildLegend(cmap: ColormapInfo, scalar: string): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "legend";
  const bar = document.createElement("div");
  bar.className = "legend-bar";
  const stops = cmap.control_points
    .map(([t, [r, g, b]]) => `${rgbCss(r, g, b)} ${(t * 100).toFixed(1)}%`)
    .join(", ");
  bar.style.background = `linear-gradient(to right, ${stops})`;
  const label = document.createElement("div");
  label.className = "legend-label";
  label.textContent = `${scalar} (low → high, ${cmap.name})`;
  wrap.append(bar, label);
  return wrap;
}

export class SplitScreenView {
  readonly rig = new CameraRig();
  private panels = new Map<string, { canvas: HTMLCanvasElement; geometry: GeometryResponse }>();

  constructor(
    private readonly container: HTMLElement,
    private readonly width = 300,
    private readonly height = 260,
  ) {}

  setSync(on: boolean): void {
    this.rig.setSync(on);
    this.renderAll();
  }

  clear(): void {
    this.panels.clear();
    this.container.replaceChildren();
  }

  addPanel(panelId: string, title: string, geometry: GeometryResponse): void {
    const cell = document.createElement("div");
    cell.className = "panel3d";
    const heading = document.createElement("div");
    heading.className = "panel3d-title";
    heading.textContent = title;
    heading.style.color = subjectColor(geometry.subject_id);
    const canvas = document.createElement("canvas");
    canvas.width = this.width;
    canvas.height = this.height;
    canvas.dataset.panel = panelId;
    cell.append(heading, canvas);
    this.container.appendChild(cell);
    this.panels.set(panelId, { canvas, geometry });
    this.wireInteraction(panelId, canvas);
    this.renderPanel(panelId);
  }

  private wireInteraction(panelId: string, canvas: HTMLCanvasElement): void {
    let dragging: [number, number] | null = null;
    canvas.addEventListener("mousedown", (e) => {
      dragging = [e.clientX, e.clientY];
    });
    canvas.addEventListener("mousemove", (e) => {
      if (!dragging) return;
      const [x0, y0] = dragging;
      dragging = [e.clientX, e.clientY];
      this.rotatePanel(panelId, (e.clientX - x0) * 0.01, (e.clientY - y0) * 0.01);
    });
    canvas.addEventListener("mouseup", () => (dragging = null));
    canvas.addEventListener("mouseleave", () => (dragging = null));
    canvas.addEventListener("wheel", (e) => {
      e.preventDefault();
      zoom(this.rig.poseFor(panelId), e.deltaY > 0 ? 1.1 : 1 / 1.1);
      this.renderAffected(panelId);
    });
  }

  /** Orbit one panel's camera; with sync on this moves every panel. */
  rotatePanel(panelId: string, dTheta: number, dPhi: number): void {
    orbit(this.rig.poseFor(panelId), dTheta, dPhi);
    this.renderAffected(panelId);
  }

  poseOf(panelId: string): CameraPose {
    return this.rig.poseFor(panelId);
  }

  /** Swap in recolored geometry without touching positions or cameras. */
  recolor(panelId: string, geometry: GeometryResponse): void {
    const panel = this.panels.get(panelId);
    if (!panel) return;
    panel.geometry = geometry;
    this.renderPanel(panelId);
  }

  private renderAffected(panelId: string): void {
    if (this.rig.syncEnabled) this.renderAll();
    else this.renderPanel(panelId);
  }

  renderAll(): void {
    for (const panelId of this.panels.keys()) this.renderPanel(panelId);
  }

  private renderPanel(panelId: string): void {
    const panel = this.panels.get(panelId);
    if (!panel) return;
    const ctx = panel.canvas.getContext("2d");
    if (!ctx) return; // headless test environments have no 2D context
    const pose = this.rig.poseFor(panelId);
    const segments = geometrySegments(
      panel.geometry, pose, this.width, this.height,
      subjectColor(panel.geometry.subject_id),
    );
    ctx.fillStyle = "#111418";
    ctx.fillRect(0, 0, this.width, this.height);
    ctx.lineWidth = 1.5;
    for (const s of segments) {
      ctx.strokeStyle = s.color;
      ctx.beginPath();
      ctx.moveTo(s.x0, s.y0);
      ctx.lineTo(s.x1, s.y1);
      ctx.stroke();
    }
  }
}
