// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { defaultPose, posesEqual, projectPoint } from "../src/camera.js";
import { geometrySegments, SplitScreenView } from "../src/split3d.js";
import type { GeometryResponse } from "../src/types.js";

function geometry(subject: string): GeometryResponse {
  return {
    subject_id: subject,
    cluster_id: 0,
    fibers: [
      [0, 0, 0, 10, 0, 0, 10, 10, 0],
      [0, 5, 0, 5, 5, 5],
    ],
  };
}

function panels(view: SplitScreenView, ids: string[]): void {
  for (const id of ids) view.addPanel(id, id, geometry(id));
}

describe("split-screen camera sync", () => {
  it("rotating one panel with sync on reproduces the pose in all panels", () => {
    const view = new SplitScreenView(document.createElement("div"));
    panels(view, ["sub-01", "sub-02", "sub-03"]);
    view.setSync(true);
    view.rotatePanel("sub-02", 0.4, -0.2);
    view.rotatePanel("sub-02", 0.1, 0.05);
    const a = view.poseOf("sub-01");
    const b = view.poseOf("sub-02");
    const c = view.poseOf("sub-03");
    expect(posesEqual(a, b)).toBe(true);
    expect(posesEqual(b, c)).toBe(true);
    expect(a.theta).not.toBe(defaultPose().theta);
  });

  it("with sync off, panels move independently", () => {
    const view = new SplitScreenView(document.createElement("div"));
    panels(view, ["sub-01", "sub-02"]);
    view.setSync(false);
    const before = { ...view.poseOf("sub-02") };
    view.rotatePanel("sub-01", 0.7, 0.1);
    expect(posesEqual(view.poseOf("sub-02"), before)).toBe(true);
    expect(posesEqual(view.poseOf("sub-01"), before)).toBe(false);
  });

  it("re-enabling sync adopts one common pose again", () => {
    const view = new SplitScreenView(document.createElement("div"));
    panels(view, ["sub-01", "sub-02"]);
    view.setSync(false);
    view.rotatePanel("sub-01", 0.3, 0.0);
    view.setSync(true);
    view.rotatePanel("sub-02", 0.1, 0.1);
    expect(posesEqual(view.poseOf("sub-01"), view.poseOf("sub-02"))).toBe(true);
  });
});

describe("polyline projection", () => {
  it("projects the camera target to the canvas center", () => {
    const pose = defaultPose();
    const projected = projectPoint(pose, [0, 0, 0], 300, 260);
    expect(projected).not.toBeNull();
    expect(projected![0]).toBeCloseTo(150, 6);
    expect(projected![1]).toBeCloseTo(130, 6);
  });

  it("culls points behind the camera", () => {
    const pose = defaultPose();
    pose.distance = 5;
    // a point far beyond the eye on the view axis
    expect(projectPoint(pose, [1e6, 1e6, 1e6], 300, 260)).toBeNull();
  });

  it("builds one segment per consecutive point pair, depth-sorted", () => {
    const segments = geometrySegments(
      geometry("sub-01"),
      defaultPose(),
      300,
      260,
      "#abc",
    );
    expect(segments.length).toBe(3); // 2 + 1 segments
    for (let i = 1; i < segments.length; i++) {
      expect(segments[i - 1].depth).toBeGreaterThanOrEqual(segments[i].depth);
    }
    expect(segments.every((s) => s.color === "#abc")).toBe(true);
  });

  it("uses per-vertex colors when the server provides them", () => {
    const withColors = geometry("sub-01");
    withColors.colors = [
      [255, 0, 0, 0, 255, 0, 0, 0, 255],
      [10, 10, 10, 20, 20, 20],
    ];
    const segments = geometrySegments(withColors, defaultPose(), 300, 260, "#abc");
    expect(segments.some((s) => s.color === "rgb(255, 0, 0)")).toBe(true);
    expect(segments.every((s) => s.color !== "#abc")).toBe(true);
  });

  it("recoloring swaps colors without touching camera poses", () => {
    const view = new SplitScreenView(document.createElement("div"));
    panels(view, ["sub-01"]);
    view.rotatePanel("sub-01", 0.25, 0.1);
    const pose = { ...view.poseOf("sub-01") };
    const recolored = geometry("sub-01");
    recolored.colors = [
      [1, 2, 3, 4, 5, 6, 7, 8, 9],
      [1, 1, 1, 2, 2, 2],
    ];
    view.recolor("sub-01", recolored);
    expect(posesEqual(view.poseOf("sub-01"), pose)).toBe(true);
  });
});
