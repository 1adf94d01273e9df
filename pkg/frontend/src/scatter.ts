import { categoryColor, clusterColor, subjectColor } from "./colors.js";
import type { Store } from "./state.js";
import type { LayoutPoint, Rect } from "./types.js";
import { entityKey } from "./types.js";
import { extentOf, fitTransform, toData, toPixel, ViewTransform } from "./viewport.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function pointColor(point: LayoutPoint, store: Store): string {
  const mode = store.state.colorMode;
  if (mode === "subject") return subjectColor(point.subject_id);
  if (mode === "cluster") return clusterColor(point.cluster_id);
  const subject = store.state.cohort?.subjects.find(
    (s) => s.subject_id === point.subject_id,
  );
  return categoryColor(subject?.metadata[mode] ?? "");
}

/** Normalize a drag in pixel space into a well-ordered data-space rect. */
export function dragToRect(
  t: ViewTransform,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
): Rect {
  const [ax, ay] = toData(t, x0, y0);
  const [bx, by] = toData(t, x1, y1);
  return [Math.min(ax, bx), Math.min(ay, by), Math.max(ax, bx), Math.max(ay, by)];
}

export interface HoverHandler {
  (point: LayoutPoint, pageX: number, pageY: number): void;
}

export class ScatterView {
  private svg: SVGSVGElement;
  private transform: ViewTransform | null = null;
  onHover: HoverHandler | null = null;
  onLeave: (() => void) | null = null;

  constructor(
    container: HTMLElement,
    private readonly store: Store,
    private readonly width = 520,
    private readonly height = 420,
  ) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("width", String(this.width));
    this.svg.setAttribute("height", String(this.height));
    this.svg.setAttribute("class", "scatter");
    container.appendChild(this.svg);
    this.wireBrush();
  }

  private wireBrush(): void {
    let dragStart: [number, number] | null = null;
    let rubber: SVGRectElement | null = null;
    const local = (event: MouseEvent): [number, number] => {
      const bounds = this.svg.getBoundingClientRect();
      return [event.clientX - bounds.left, event.clientY - bounds.top];
    };
    this.svg.addEventListener("mousedown", (event) => {
      dragStart = local(event);
      rubber = document.createElementNS(SVG_NS, "rect");
      rubber.setAttribute("class", "brush-rubber");
      this.svg.appendChild(rubber);
    });
    this.svg.addEventListener("mousemove", (event) => {
      if (!dragStart || !rubber) return;
      const [x, y] = local(event);
      rubber.setAttribute("x", String(Math.min(x, dragStart[0])));
      rubber.setAttribute("y", String(Math.min(y, dragStart[1])));
      rubber.setAttribute("width", String(Math.abs(x - dragStart[0])));
      rubber.setAttribute("height", String(Math.abs(y - dragStart[1])));
    });
    this.svg.addEventListener("mouseup", (event) => {
      if (!dragStart || !this.transform) return;
      const [x, y] = local(event);
      const [x0, y0] = dragStart;
      dragStart = null;
      rubber?.remove();
      rubber = null;
      if (Math.abs(x - x0) < 3 && Math.abs(y - y0) < 3) {
        void this.store.clearSelection(); // empty drag clears
        return;
      }
      const rect = dragToRect(this.transform, x0, y0, x, y);
      void this.store.brush(rect);
    });
  }

  render(): void {
    const layout = this.store.state.layout;
    this.svg.querySelectorAll(".scatter-point, .brush-outline").forEach((n) =>
      n.remove(),
    );
    if (!layout) {
      this.transform = null;
      return;
    }
    this.transform = fitTransform(
      extentOf(layout.points),
      this.width,
      this.height,
    );
    const highlightedKeys = new Set(
      this.store.state.highlighted.map((h) => entityKey(h)),
    );
    for (const point of layout.points) {
      const [px, py] = toPixel(this.transform, point.x, point.y);
      const circle = document.createElementNS(SVG_NS, "circle");
      const highlighted = highlightedKeys.has(entityKey(point));
      circle.setAttribute("cx", String(px));
      circle.setAttribute("cy", String(py));
      circle.setAttribute("r", highlighted ? "7" : "4");
      circle.setAttribute(
        "class",
        "scatter-point" + (highlighted ? " highlighted" : ""),
      );
      circle.setAttribute("fill", pointColor(point, this.store));
      circle.dataset.subject = point.subject_id;
      circle.dataset.cluster = String(point.cluster_id);
      circle.addEventListener("mouseenter", (event) => {
        this.onHover?.(point, (event as MouseEvent).pageX, (event as MouseEvent).pageY);
      });
      circle.addEventListener("mouseleave", () => this.onLeave?.());
      this.svg.appendChild(circle);
    }
    const rect = this.store.state.brushRect;
    if (rect) {
      const [x0, y0] = toPixel(this.transform, rect[0], rect[3]);
      const [x1, y1] = toPixel(this.transform, rect[2], rect[1]);
      const outline = document.createElementNS(SVG_NS, "rect");
      outline.setAttribute("class", "brush-outline");
      outline.setAttribute("x", String(x0));
      outline.setAttribute("y", String(y0));
      outline.setAttribute("width", String(x1 - x0));
      outline.setAttribute("height", String(y1 - y0));
      this.svg.appendChild(outline);
    }
  }
}
