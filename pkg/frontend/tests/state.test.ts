// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { Store } from "../src/state.js";
import { FakeApi } from "./fakeApi.js";

describe("linked selection state", () => {
  it("brushing one subject's cluster highlights the same cluster id in other subjects", async () => {
    const api = new FakeApi();
    const store = new Store(api.asClient());
    store.state.cohort = api.cohortIndex;
    await store.setSubjects(["sub-01", "sub-02"]);

    // rect contains only (sub-01, 7); (sub-02, 7) sits far outside
    await store.brush([-1, -1, 1, 1]);

    expect(store.state.selected).toEqual([
      { subject_id: "sub-01", cluster_id: 7 },
    ]);
    const highlightedKeys = store.state.highlighted.map(
      (e) => `${e.subject_id}/${e.cluster_id}`,
    );
    expect(highlightedKeys).toContain("sub-01/7");
    expect(highlightedKeys).toContain("sub-02/7"); // cross-subject closure
    expect(highlightedKeys).not.toContain("sub-02/8");
    // selections mirror server truth, nothing recomputed client-side
    expect(store.isHighlighted({ subject_id: "sub-02", cluster_id: 7 })).toBe(true);
  });

  it("keeps at most one projection in flight, latest wins", async () => {
    const api = new FakeApi();
    const store = new Store(api.asClient());
    store.state.cohort = api.cohortIndex;

    api.projectionDelayMs = 30;
    const slow = store.setSubjects(["sub-01"]);
    api.projectionDelayMs = 0;
    const fast = store.setSubjects(["sub-01", "sub-02"]);
    await Promise.all([slow, fast]);
    await new Promise((resolve) => setTimeout(resolve, 50));

    // the older (slower) response must not overwrite the newer state
    expect(store.state.selectedSubjects).toEqual(["sub-01", "sub-02"]);
    expect(store.state.layout?.layout_key).toBe("L1");
    const projectionCalls = api.calls.filter((c) => c.startsWith("projection:"));
    expect(projectionCalls.at(-1)).toContain("sub-01+sub-02");
  });

  it("deselecting every subject clears the layout and selection", async () => {
    const api = new FakeApi();
    const store = new Store(api.asClient());
    store.state.cohort = api.cohortIndex;
    await store.setSubjects(["sub-01"]);
    expect(store.state.layout).not.toBeNull();
    await store.setSubjects([]);
    expect(store.state.layout).toBeNull();
    expect(store.state.highlighted).toEqual([]);
  });

  it("axis changes trigger a fresh projection request", async () => {
    const api = new FakeApi();
    const store = new Store(api.asClient());
    store.state.cohort = api.cohortIndex;
    await store.setSubjects(["sub-01"]);
    const before = api.calls.filter((c) => c.startsWith("projection:")).length;
    await store.setAxes(["fa2", "fa1"]);
    const after = api.calls.filter((c) => c.startsWith("projection:")).length;
    expect(after).toBe(before + 1);
    expect(store.state.activeAxes).toEqual(["fa1", "fa2"]); // kept sorted
  });

  it("focus entities fall back to every cluster of the selected subjects", async () => {
    const api = new FakeApi();
    const store = new Store(api.asClient());
    store.state.cohort = api.cohortIndex;
    await store.setSubjects(["sub-01", "sub-02"]);
    expect(store.focusEntities()).toEqual([
      { subject_id: "sub-01", cluster_id: 7 },
      { subject_id: "sub-02", cluster_id: 7 },
      { subject_id: "sub-02", cluster_id: 8 },
    ]);
    await store.brush([-1, -1, 1, 1]);
    const focused = store.focusEntities();
    expect(focused.map((e) => e.cluster_id)).toEqual([7, 7]);
  });
});
