/** Stable entity coloring: the same subject or cluster id always maps to the
 * same color, everywhere in the UI, regardless of selection order. */

const SUBJECT_PALETTE = [
  "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
  "#a65628", "#f781bf", "#17becf", "#bcbd22", "#666666",
];

function hashString(s: string): number {
  // FNV-1a, 32-bit
  let h = 0x811c9dc5;
  for (let i = 0; i < s.length; i++) {
    h ^= s.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h >>> 0;
}

export function subjectColor(subjectId: string): string {
  return SUBJECT_PALETTE[hashString(subjectId) % SUBJECT_PALETTE.length];
}

export function clusterColor(clusterId: number): string {
  // golden-angle hue walk keyed by the id itself, not insertion order
  const hue = (clusterId * 137.50776405003785) % 360;
  return `hsl(${hue.toFixed(2)}, 65%, 52%)`;
}

export function categoryColor(value: string): string {
  const hue = hashString(value) % 360;
  return `hsl(${hue}, 60%, 48%)`;
}

export function rgbCss(r: number, g: number, b: number): string {
  return `rgb(${r}, ${g}, ${b})`;
}
