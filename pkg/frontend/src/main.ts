import { ApiClient } from "./api.js";
import { buildLegend, SplitScreenView } from "./split3d.js";
import { MatrixView } from "./matrix.js";
import { Popup } from "./popup.js";
import { ScatterView } from "./scatter.js";
import { Store } from "./state.js";
import { Toolbar } from "./toolbar.js";
import type { ColormapInfo } from "./types.js";

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? "";
}

/** Keep the split-screen panels at most this many subjects wide. */
const MAX_PANELS = 6;

export async function boot(root: HTMLElement): Promise<void> {
  const api = new ApiClient(apiBase());
  const store = new Store(api);

  root.innerHTML = `
    <div id="toolbar" class="column"></div>
    <div class="column main">
      <div id="projection"><h2>Projection</h2></div>
      <div id="alt-view"><h2 id="alt-title">Comparison matrix</h2>
        <div id="legend-slot"></div>
        <div id="alt-body"></div>
      </div>
    </div>
  `;
  const toolbar = new Toolbar(root.querySelector("#toolbar")!, store);
  const scatter = new ScatterView(root.querySelector("#projection")!, store);
  const matrix = new MatrixView(root.querySelector("#alt-body")!, api);
  const split = new SplitScreenView(root.querySelector("#alt-body")!);
  const popup = new Popup(document.body, api);

  let colormaps: ColormapInfo[] = [];

  scatter.onHover = (point, pageX, pageY) => {
    void popup.show(
      point.subject_id,
      point.cluster_id,
      store.state.activeAxes,
      store.state.selectedSubjects,
      store.state.cohort?.subjects.find((s) => s.subject_id === point.subject_id),
      pageX,
      pageY,
    );
  };
  scatter.onLeave = () => popup.hide();
  toolbar.onMatrixSort = (sort) => {
    matrix.sort = sort;
    void renderAltView();
  };

  async function renderAltView(): Promise<void> {
    const body = root.querySelector("#alt-body")! as HTMLElement;
    const title = root.querySelector("#alt-title")!;
    const legendSlot = root.querySelector("#legend-slot")! as HTMLElement;
    legendSlot.replaceChildren();
    if (store.state.viewMode === "matrix") {
      title.textContent = "Comparison matrix";
      await matrix.render(
        store.focusEntities(),
        store.state.activeAxes,
        store.state.cohort?.subjects ?? [],
        store.state.selectedSubjects,
      );
      return;
    }
    title.textContent = "3D split-screen";
    body.replaceChildren();
    split.clear();
    split.setSync(store.state.cameraSync);
    const { scalar, colormap } = store.state;
    if (scalar && colormap) {
      const spec = colormaps.find((c) => c.name === colormap);
      if (spec) legendSlot.appendChild(buildLegend(spec, scalar));
    }
    const bySubject = new Map<string, number[]>();
    for (const entity of store.focusEntities()) {
      const list = bySubject.get(entity.subject_id) ?? [];
      list.push(entity.cluster_id);
      bySubject.set(entity.subject_id, list);
    }
    // one panel per subject; show each subject's first focused cluster
    for (const [subject, clusters] of [...bySubject].slice(0, MAX_PANELS)) {
      const cluster = clusters[0];
      const geometry = await api.geometry(
        subject,
        cluster,
        scalar || undefined,
        scalar ? colormap : undefined,
      );
      split.addPanel(`${subject}`, `${subject} / cluster ${cluster}`, geometry);
    }
  }

  store.subscribe(() => {
    toolbar.render(colormaps);
    scatter.render();
    const empty = store.state.selectedSubjects.length === 0;
    const projectionBox = root.querySelector("#projection")! as HTMLElement;
    projectionBox.querySelector(".empty-state")?.remove();
    if (empty) {
      const message = document.createElement("p");
      message.className = "empty-state";
      message.textContent = "No subjects selected – pick some on the left.";
      projectionBox.appendChild(message);
    }
    void renderAltView();
  });

  await store.loadCohort();
  colormaps = await api.colormaps();
  toolbar.render(colormaps);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
