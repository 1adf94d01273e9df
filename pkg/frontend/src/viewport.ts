/** Mapping from layout coordinates to pixels: fit-to-extent with a 5%
 * margin, aspect ratio preserved (one uniform scale for both axes). */

export const MARGIN_FRACTION = 0.05;

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface Extent {
  xmin: number;
  ymin: number;
  xmax: number;
  ymax: number;
}

export function extentOf(points: { x: number; y: number }[]): Extent {
  if (points.length === 0) {
    return { xmin: 0, ymin: 0, xmax: 1, ymax: 1 };
  }
  let xmin = Infinity, ymin = Infinity, xmax = -Infinity, ymax = -Infinity;
  for (const p of points) {
    xmin = Math.min(xmin, p.x);
    ymin = Math.min(ymin, p.y);
    xmax = Math.max(xmax, p.x);
    ymax = Math.max(ymax, p.y);
  }
  return { xmin, ymin, xmax, ymax };
}

export function fitTransform(
  extent: Extent,
  width: number,
  height: number,
): ViewTransform {
  const spanX = extent.xmax - extent.xmin || 1;
  const spanY = extent.ymax - extent.ymin || 1;
  const usableW = width * (1 - 2 * MARGIN_FRACTION);
  const usableH = height * (1 - 2 * MARGIN_FRACTION);
  const scale = Math.min(usableW / spanX, usableH / spanY);
  const cx = (extent.xmin + extent.xmax) / 2;
  const cy = (extent.ymin + extent.ymax) / 2;
  return {
    scale,
    offsetX: width / 2 - cx * scale,
    offsetY: height / 2 + cy * scale, // y flips: layout y grows upward
  };
}

export function toPixel(
  t: ViewTransform,
  x: number,
  y: number,
): [number, number] {
  return [x * t.scale + t.offsetX, -y * t.scale + t.offsetY];
}

export function toData(
  t: ViewTransform,
  px: number,
  py: number,
): [number, number] {
  return [(px - t.offsetX) / t.scale, -(py - t.offsetY) / t.scale];
}
