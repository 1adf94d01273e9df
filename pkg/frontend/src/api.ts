import type {
  BrushResponse,
  ClusterSummary,
  CohortIndex,
  ColormapInfo,
  FingerprintResponse,
  GeometryResponse,
  ProjectionResponse,
  Rect,
} from "./types.js";

/** Thin typed client over the read-only exploration API. */
export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) {
      throw new Error(`GET ${path} -> ${response.status}`);
    }
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new Error(`POST ${path} -> ${response.status}`);
    }
    return (await response.json()) as T;
  }

  cohort(): Promise<CohortIndex> {
    return this.get("/api/cohort");
  }

  projection(
    subjects: string[],
    axes: string[],
    k?: number,
    seed = 0,
  ): Promise<ProjectionResponse> {
    return this.post("/api/projection", { subjects, axes, k: k ?? null, seed });
  }

  brush(layoutKey: string, rect: Rect): Promise<BrushResponse> {
    return this.post("/api/brush", { layout_key: layoutKey, rect });
  }

  summary(subject: string, cluster: number): Promise<ClusterSummary> {
    return this.get(`/api/clusters/${subject}/${cluster}/summary`);
  }

  fingerprint(
    subject: string,
    cluster: number,
    axes: string[],
    contextSubjects: string[] = [],
  ): Promise<FingerprintResponse> {
    const params = new URLSearchParams();
    if (axes.length) params.set("axes", axes.join(","));
    if (contextSubjects.length) params.set("subjects", contextSubjects.join(","));
    const query = params.toString();
    return this.get(
      `/api/clusters/${subject}/${cluster}/fingerprint${query ? "?" + query : ""}`,
    );
  }

  geometry(
    subject: string,
    cluster: number,
    scalar?: string,
    colormap?: string,
  ): Promise<GeometryResponse> {
    const params = new URLSearchParams();
    if (scalar && colormap) {
      params.set("scalar", scalar);
      params.set("colormap", colormap);
    }
    const query = params.toString();
    return this.get(
      `/api/clusters/${subject}/${cluster}/geometry${query ? "?" + query : ""}`,
    );
  }

  colormaps(): Promise<ColormapInfo[]> {
    return this.get("/api/colormaps");
  }
}
