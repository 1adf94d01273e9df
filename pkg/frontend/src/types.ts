/** Payload shapes of the exploration API, mirrored verbatim. */

export interface SubjectInfo {
  subject_id: string;
  metadata: Record<string, string>;
  cluster_ids: number[];
}

export interface CohortIndex {
  subjects: SubjectInfo[];
  fields: string[];
  scalar_ranges: Record<string, [number, number]>;
  loaded_clusters: number;
}

export interface LayoutPoint {
  subject_id: string;
  cluster_id: number;
  x: number;
  y: number;
  is_pivot: boolean;
}

export interface ProjectionResponse {
  layout_key: string;
  metric_axes: string[];
  points: LayoutPoint[];
}

export interface EntityRef {
  subject_id: string;
  cluster_id: number;
}

export interface BrushResponse {
  selected: EntityRef[];
  highlighted: EntityRef[];
}

export interface FieldStats {
  mean: number;
  std: number;
  min: number;
  max: number;
  count: number;
  nan_count: number;
}

export interface ClusterSummary {
  subject_id: string;
  cluster_id: number;
  fiber_count: number;
  mean_fiber_length: number;
  per_scalar: Record<string, FieldStats>;
  per_property: Record<string, FieldStats>;
}

export interface FingerprintResponse {
  subject_id: string;
  cluster_id: number;
  axis_names: string[];
  values: number[];
}

export interface GeometryResponse {
  subject_id: string;
  cluster_id: number;
  fibers: number[][];
  colors?: number[][];
  scalar?: string;
  colormap?: string;
}

export interface ColormapInfo {
  name: string;
  control_points: [number, [number, number, number]][];
}

export type Rect = [number, number, number, number]; // xmin, ymin, xmax, ymax

export function entityKey(e: EntityRef): string {
  return `${e.subject_id}/${e.cluster_id}`;
}
