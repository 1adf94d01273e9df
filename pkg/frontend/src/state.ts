import type { ApiClient } from "./api.js";
import type {
  CohortIndex,
  EntityRef,
  ProjectionResponse,
  Rect,
} from "./types.js";
import { entityKey } from "./types.js";

export type ViewMode = "matrix" | "split";

export interface ViewState {
  cohort: CohortIndex | null;
  selectedSubjects: string[];
  activeAxes: string[];
  layout: ProjectionResponse | null;
  brushRect: Rect | null;
  /** server truth after the last brush interaction */
  selected: EntityRef[];
  highlighted: EntityRef[];
  viewMode: ViewMode;
  colorMode: string; // "subject" | "cluster" | metadata field name
  scalar: string;
  colormap: string;
  cameraSync: boolean;
  projectionSeed: number;
}

type Listener = (state: ViewState) => void;

/** Single store driving every view; one in-flight projection, latest wins. */
export class Store {
  readonly state: ViewState = {
    cohort: null,
    selectedSubjects: [],
    activeAxes: [],
    layout: null,
    brushRect: null,
    selected: [],
    highlighted: [],
    viewMode: "matrix",
    colorMode: "subject",
    scalar: "",
    colormap: "viridis",
    cameraSync: true,
    projectionSeed: 0,
  };

  private listeners: Listener[] = [];
  private projectionEpoch = 0;

  constructor(readonly api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  async loadCohort(): Promise<void> {
    this.state.cohort = await this.api.cohort();
    this.emit();
  }

  async setSubjects(subjects: string[]): Promise<void> {
    this.state.selectedSubjects = [...subjects];
    this.clearBrush();
    await this.refreshProjection();
  }

  async setAxes(axes: string[]): Promise<void> {
    this.state.activeAxes = [...axes].sort();
    await this.refreshProjection();
  }

  setViewMode(mode: ViewMode): void {
    this.state.viewMode = mode;
    this.emit();
  }

  setColorMode(mode: string): void {
    this.state.colorMode = mode;
    this.emit();
  }

  setColoring(scalar: string, colormap: string): void {
    this.state.scalar = scalar;
    this.state.colormap = colormap;
    this.emit();
  }

  setCameraSync(on: boolean): void {
    this.state.cameraSync = on;
    this.emit();
  }

  private clearBrush(): void {
    this.state.brushRect = null;
    this.state.selected = [];
    this.state.highlighted = [];
  }

  /** Fetch a fresh layout; stale responses are dropped (latest wins). */
  async refreshProjection(): Promise<void> {
    const epoch = ++this.projectionEpoch;
    if (this.state.selectedSubjects.length === 0) {
      this.state.layout = null;
      this.clearBrush();
      this.emit();
      return;
    }
    const layout = await this.api.projection(
      this.state.selectedSubjects,
      this.state.activeAxes,
      undefined,
      this.state.projectionSeed,
    );
    if (epoch !== this.projectionEpoch) return; // superseded meanwhile
    this.state.layout = layout;
    this.clearBrush();
    this.emit();
  }

  /** Resolve a brush rectangle through the server and mirror its answer. */
  async brush(rect: Rect): Promise<void> {
    if (!this.state.layout) return;
    const response = await this.api.brush(this.state.layout.layout_key, rect);
    this.state.brushRect = rect;
    this.state.selected = response.selected;
    this.state.highlighted = response.highlighted;
    this.emit();
  }

  async clearSelection(): Promise<void> {
    this.clearBrush();
    this.emit();
  }

  isHighlighted(e: EntityRef): boolean {
    return this.state.highlighted.some((h) => entityKey(h) === entityKey(e));
  }

  /** (subject, cluster) pairs the alternative views should display:
   * the brushed selection, closed over subjects by the server; otherwise
   * every cluster of the selected subjects. */
  focusEntities(limit?: number): EntityRef[] {
    const entities: EntityRef[] = [];
    if (this.state.highlighted.length > 0) {
      entities.push(...this.state.highlighted);
    } else if (this.state.cohort) {
      for (const subject of this.state.cohort.subjects) {
        if (!this.state.selectedSubjects.includes(subject.subject_id)) continue;
        for (const clusterId of subject.cluster_ids) {
          entities.push({ subject_id: subject.subject_id, cluster_id: clusterId });
        }
      }
    }
    entities.sort((a, b) =>
      a.subject_id === b.subject_id
        ? a.cluster_id - b.cluster_id
        : a.subject_id < b.subject_id ? -1 : 1,
    );
    return limit === undefined ? entities : entities.slice(0, limit);
  }
}
