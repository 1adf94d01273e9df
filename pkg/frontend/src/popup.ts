import type { ApiClient } from "./api.js";
import { buildRadarSvg } from "./radar.js";
import type { ClusterSummary, FingerprintResponse, SubjectInfo } from "./types.js";

/** Hover pop-up: cluster statistics, subject metadata and the radar shape.
 * Every number is printed verbatim from the API payload. */
export class Popup {
  private element: HTMLDivElement;
  private cache = new Map<string, [ClusterSummary, FingerprintResponse]>();

  constructor(parent: HTMLElement, private readonly api: ApiClient) {
    this.element = document.createElement("div");
    this.element.className = "popup hidden";
    parent.appendChild(this.element);
  }

  hide(): void {
    this.element.classList.add("hidden");
  }

  async show(
    subject: string,
    cluster: number,
    axes: string[],
    contextSubjects: string[],
    subjectInfo: SubjectInfo | undefined,
    pageX: number,
    pageY: number,
  ): Promise<void> {
    const cacheKey = `${subject}/${cluster}|${axes.join(",")}`;
    let entry = this.cache.get(cacheKey);
    if (!entry) {
      entry = await Promise.all([
        this.api.summary(subject, cluster),
        this.api.fingerprint(subject, cluster, axes, contextSubjects),
      ]);
      this.cache.set(cacheKey, entry);
    }
    const [summary, fingerprint] = entry;
    this.element.replaceChildren();

    const title = document.createElement("div");
    title.className = "popup-title";
    title.textContent = `${subject} / cluster ${cluster}`;
    this.element.appendChild(title);

    const stats = document.createElement("table");
    stats.className = "popup-stats";
    const addRow = (label: string, value: string) => {
      const row = stats.insertRow();
      row.insertCell().textContent = label;
      row.insertCell().textContent = value;
    };
    addRow("fibers", String(summary.fiber_count));
    addRow("mean fiber length", String(summary.mean_fiber_length));
    for (const [name, s] of Object.entries(summary.per_scalar)) {
      addRow(`${name} mean`, String(s.mean));
      addRow(`${name} std`, String(s.std));
    }
    for (const [name, s] of Object.entries(summary.per_property)) {
      addRow(`${name} mean`, String(s.mean));
    }
    if (subjectInfo) {
      for (const [field, value] of Object.entries(subjectInfo.metadata)) {
        addRow(field, value);
      }
    }
    this.element.appendChild(stats);
    this.element.appendChild(buildRadarSvg(fingerprint, 140, undefined, true));

    this.element.style.left = `${pageX + 14}px`;
    this.element.style.top = `${pageY + 14}px`;
    this.element.classList.remove("hidden");
  }
}
