import type { ApiClient } from "./api.js";
import { MatrixSort, MAX_VISIBLE_RADARS, buildRadarSvg, matrixGrid } from "./radar.js";
import { subjectColor } from "./colors.js";
import type { EntityRef, FingerprintResponse, SubjectInfo } from "./types.js";
import { entityKey } from "./types.js";

const CELL_SIZE = 130;

function demographicsLine(subject: SubjectInfo | undefined): string {
  if (!subject) return "";
  return Object.entries(subject.metadata)
    .map(([field, value]) => `${field}: ${value}`)
    .join(" · ");
}

/** Radar small multiples: one cell per (subject, cluster), rows sortable by
 * subject or cluster, subject demographics alongside the row labels. At
 * most MAX_VISIBLE_RADARS cells fit per screen; beyond that the grid
 * scrolls. */
export class MatrixView {
  sort: MatrixSort = "subject";
  private fingerprints = new Map<string, FingerprintResponse>();

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  cellCount(): number {
    return this.container.querySelectorAll(".matrix-cell").length;
  }

  async render(
    entities: EntityRef[],
    axes: string[],
    subjects: SubjectInfo[],
    contextSubjects: string[],
  ): Promise<void> {
    this.container.replaceChildren();
    if (entities.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "Nothing selected. Pick subjects in the toolbar.";
      this.container.appendChild(empty);
      return;
    }
    const grid = matrixGrid(entities, this.sort);
    const table = document.createElement("div");
    table.className = "matrix-grid";
    table.style.gridTemplateColumns = `14rem repeat(${grid.columns.length}, ${CELL_SIZE}px)`;
    // cap the visible area so at most MAX_VISIBLE_RADARS cells show at once
    const visibleRows = Math.max(1, Math.ceil(MAX_VISIBLE_RADARS / grid.columns.length));
    table.style.maxHeight = `${(visibleRows + 0.5) * (CELL_SIZE + 28)}px`;
    table.style.overflowY = "auto";

    const corner = document.createElement("div");
    corner.className = "matrix-head";
    table.appendChild(corner);
    for (const column of grid.columns) {
      const head = document.createElement("div");
      head.className = "matrix-head";
      head.textContent = column;
      table.appendChild(head);
    }

    const bySlot = new Map(grid.cells.map((c) => [`${c.row}:${c.column}`, c.entity]));
    const fetched = await Promise.all(
      entities.map((e) => this.fingerprintFor(e, axes, contextSubjects)),
    );
    const byEntity = new Map(
      entities.map((e, i) => [entityKey(e), fetched[i]] as const),
    );

    grid.rows.forEach((rowLabel, r) => {
      const label = document.createElement("div");
      label.className = "matrix-row-label";
      const name = document.createElement("div");
      name.textContent = rowLabel;
      if (this.sort === "subject") {
        name.style.color = subjectColor(rowLabel);
        const demo = document.createElement("div");
        demo.className = "matrix-demographics";
        demo.textContent = demographicsLine(
          subjects.find((s) => s.subject_id === rowLabel),
        );
        label.append(name, demo);
      } else {
        label.append(name);
      }
      table.appendChild(label);
      grid.columns.forEach((_, c) => {
        const cell = document.createElement("div");
        const entity = bySlot.get(`${r}:${c}`);
        if (entity) {
          cell.className = "matrix-cell";
          const fingerprint = byEntity.get(entityKey(entity));
          if (fingerprint) {
            cell.appendChild(buildRadarSvg(fingerprint, CELL_SIZE - 10));
          }
        } else {
          cell.className = "matrix-cell-empty";
        }
        table.appendChild(cell);
      });
    });
    this.container.appendChild(table);
  }

  private async fingerprintFor(
    entity: EntityRef,
    axes: string[],
    contextSubjects: string[],
  ): Promise<FingerprintResponse> {
    const cacheKey = `${entityKey(entity)}|${axes.join(",")}|${contextSubjects.join(",")}`;
    const cached = this.fingerprints.get(cacheKey);
    if (cached) return cached;
    const fingerprint = await this.api.fingerprint(
      entity.subject_id,
      entity.cluster_id,
      axes,
      contextSubjects,
    );
    this.fingerprints.set(cacheKey, fingerprint);
    return fingerprint;
  }
}
