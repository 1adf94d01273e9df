import type { Store } from "./state.js";
import type { ColormapInfo } from "./types.js";
import { subjectColor } from "./colors.js";
import type { MatrixSort } from "./radar.js";

/** Universal toolbar: subject and axis pickers, point-color mode, 3D/matrix
 * switch, scalar + colormap dropdowns, camera sync, matrix sort. */
export class Toolbar {
  onMatrixSort: ((sort: MatrixSort) => void) | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly store: Store,
  ) {}

  render(colormaps: ColormapInfo[]): void {
    const state = this.store.state;
    const cohort = state.cohort;
    this.container.replaceChildren();
    if (!cohort) return;

    const subjectsBox = this.section("Subjects");
    for (const subject of cohort.subjects) {
      const label = document.createElement("label");
      const checkbox = document.createElement("input");
      checkbox.type = "checkbox";
      checkbox.value = subject.subject_id;
      checkbox.checked = state.selectedSubjects.includes(subject.subject_id);
      checkbox.addEventListener("change", () => {
        const next = checkbox.checked
          ? [...state.selectedSubjects, subject.subject_id]
          : state.selectedSubjects.filter((s) => s !== subject.subject_id);
        void this.store.setSubjects(next);
      });
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.background = subjectColor(subject.subject_id);
      label.append(checkbox, swatch, subject.subject_id);
      subjectsBox.appendChild(label);
    }

    const axesBox = this.section("Scalar axes");
    for (const field of cohort.fields) {
      const label = document.createElement("label");
      const checkbox = document.createElement("input");
      checkbox.type = "checkbox";
      checkbox.value = field;
      checkbox.checked = state.activeAxes.includes(field);
      checkbox.addEventListener("change", () => {
        const next = checkbox.checked
          ? [...state.activeAxes, field]
          : state.activeAxes.filter((a) => a !== field);
        void this.store.setAxes(next);
      });
      label.append(checkbox, field);
      axesBox.appendChild(label);
    }

    const colorBox = this.section("Color points by");
    const colorSelect = document.createElement("select");
    const metadataFields = cohort.subjects[0]
      ? Object.keys(cohort.subjects[0].metadata)
      : [];
    for (const mode of ["subject", "cluster", ...metadataFields]) {
      const option = document.createElement("option");
      option.value = mode;
      option.textContent = mode;
      option.selected = state.colorMode === mode;
      colorSelect.appendChild(option);
    }
    colorSelect.addEventListener("change", () =>
      this.store.setColorMode(colorSelect.value),
    );
    colorBox.appendChild(colorSelect);

    const viewBox = this.section("View");
    const viewToggle = document.createElement("button");
    viewToggle.textContent =
      state.viewMode === "matrix" ? "switch to 3D split-screen" : "switch to matrix";
    viewToggle.addEventListener("click", () =>
      this.store.setViewMode(state.viewMode === "matrix" ? "split" : "matrix"),
    );
    viewBox.appendChild(viewToggle);

    const sortSelect = document.createElement("select");
    for (const sort of ["subject", "cluster"] as MatrixSort[]) {
      const option = document.createElement("option");
      option.value = sort;
      option.textContent = `sort matrix by ${sort}`;
      sortSelect.appendChild(option);
    }
    sortSelect.addEventListener("change", () =>
      this.onMatrixSort?.(sortSelect.value as MatrixSort),
    );
    viewBox.appendChild(sortSelect);

    const syncLabel = document.createElement("label");
    const syncBox = document.createElement("input");
    syncBox.type = "checkbox";
    syncBox.checked = state.cameraSync;
    syncBox.addEventListener("change", () =>
      this.store.setCameraSync(syncBox.checked),
    );
    syncLabel.append(syncBox, "sync 3D cameras");
    viewBox.appendChild(syncLabel);

    const colorizeBox = this.section("3D coloring");
    const scalarSelect = document.createElement("select");
    for (const field of ["", ...cohort.fields]) {
      const option = document.createElement("option");
      option.value = field;
      option.textContent = field || "(uniform subject color)";
      option.selected = state.scalar === field;
      scalarSelect.appendChild(option);
    }
    const cmapSelect = document.createElement("select");
    for (const cmap of colormaps) {
      const option = document.createElement("option");
      option.value = cmap.name;
      option.textContent = cmap.name;
      option.selected = state.colormap === cmap.name;
      cmapSelect.appendChild(option);
    }
    const apply = () => this.store.setColoring(scalarSelect.value, cmapSelect.value);
    scalarSelect.addEventListener("change", apply);
    cmapSelect.addEventListener("change", apply);
    colorizeBox.append(scalarSelect, cmapSelect);
  }

  private section(title: string): HTMLElement {
    const box = document.createElement("div");
    box.className = "toolbar-section";
    const heading = document.createElement("h3");
    heading.textContent = title;
    box.appendChild(heading);
    this.container.appendChild(box);
    return box;
  }
}
