import { describe, expect, it } from "vitest";

import { StateDoc } from "../src/api.js";
import { colorFor, renderScene, statusLine } from "../src/render.js";
import {
  autoSide,
  fitCamera,
  hitTest,
  initialView,
  pan,
  projectSegments,
  screenToWorld,
  worldToScreen,
  zoom,
} from "../src/view.js";

function doc(segments: Array<[number, number, number, number]>, extra: Partial<StateDoc> = {}): StateDoc {
  return {
    session: "s",
    mode: "restricted",
    budget: segments.length,
    remaining_budget: segments.length,
    solved: segments.length === 0,
    history: [],
    segments: segments.map(([px, py, qx, qy], i) => ({
      id: i,
      p: [[px, 1], [py, 1]],
      q: [[qx, 1], [qy, 1]],
      role: null,
    })),
    ...extra,
  };
}

describe("camera", () => {
  it("fits all segments inside the viewport", () => {
    const d = doc([[0, 0, 100, 0], [0, -40, 0, 40]]);
    const cam = fitCamera(d, 960, 640);
    const screen = projectSegments(d, cam, 960, 640);
    for (const s of screen) {
      for (const [x, y] of [[s.x1, s.y1], [s.x2, s.y2]] as const) {
        expect(x).toBeGreaterThanOrEqual(0);
        expect(x).toBeLessThanOrEqual(960);
        expect(y).toBeGreaterThanOrEqual(0);
        expect(y).toBeLessThanOrEqual(640);
      }
    }
  });

  it("round-trips world and screen coordinates", () => {
    const cam = { scale: 0.5, cx: 10, cy: -3 };
    const [sx, sy] = worldToScreen(cam, 960, 640, 17, 5);
    const [wx, wy] = screenToWorld(cam, 960, 640, sx, sy);
    expect(wx).toBeCloseTo(17, 9);
    expect(wy).toBeCloseTo(5, 9);
  });

  it("flips the y axis (model up is screen up)", () => {
    const cam = { scale: 1, cx: 0, cy: 0 };
    const [, yHigh] = worldToScreen(cam, 100, 100, 0, 10);
    const [, yLow] = worldToScreen(cam, 100, 100, 0, -10);
    expect(yHigh).toBeLessThan(yLow);
  });

  it("zoom keeps the cursor's world point fixed", () => {
    const cam = { scale: 1, cx: 0, cy: 0 };
    const [wx0, wy0] = screenToWorld(cam, 960, 640, 200, 150);
    const zoomed = zoom(cam, 2, 960, 640, 200, 150);
    const [wx1, wy1] = screenToWorld(zoomed, 960, 640, 200, 150);
    expect(wx1).toBeCloseTo(wx0, 9);
    expect(wy1).toBeCloseTo(wy0, 9);
  });

  it("pan shifts the view by pixels", () => {
    const cam = { scale: 2, cx: 0, cy: 0 };
    const moved = pan(cam, 10, -5);
    expect(moved.cx).toBe(-20);
    expect(moved.cy).toBe(-10);
  });
});

describe("hit testing", () => {
  it("finds the nearest segment within tolerance, else null", () => {
    const d = doc([[0, 0, 100, 0], [0, 50, 100, 50]]);
    const cam = { scale: 1, cx: 50, cy: 25 };
    const screen = projectSegments(d, cam, 200, 200);
    const first = screen[0]!;
    expect(hitTest(screen, (first.x1 + first.x2) / 2, first.y1 + 3)).toBe(0);
    expect(hitTest(screen, (first.x1 + first.x2) / 2, first.y1 + 40)).toBeNull();
  });
});

describe("side selection", () => {
  it("defaults to the side with fewer segments", () => {
    // two segments right of the line x = 0, one on the left
    const d = doc([[0, -5, 0, 5], [3, 0, 4, 0], [5, 1, 6, 1], [-4, 0, -3, 0]]);
    expect(autoSide(d, [1, 0, 0])).toBe("left");
    // symmetric case prefers right
    const even = doc([[0, -5, 0, 5], [3, 0, 4, 0], [-4, 0, -3, 0]]);
    expect(autoSide(even, [1, 0, 0])).toBe("right");
  });

  it("uses exact cross-multiplied signs for rational endpoints", () => {
    const d: StateDoc = {
      session: "s",
      mode: "restricted",
      budget: 2,
      remaining_budget: 2,
      solved: false,
      history: [],
      segments: [
        { id: 0, p: [[0, 1], [0, 1]], q: [[0, 1], [4, 1]], role: null },
        { id: 1, p: [[1, 3], [1, 1]], q: [[2, 3], [1, 1]], role: null },
      ],
    };
    expect(autoSide(d, [1, 0, 0])).toBe("left");
  });
});

describe("scene rendering", () => {
  it("renders one line per segment and honors highlights", () => {
    const d = doc([[0, 0, 10, 0], [0, 5, 10, 5]]);
    const view = initialView();
    view.highlightIds = [1];
    const svg = renderScene(d, view, 300, 200);
    expect(svg.match(/<line /g)?.length).toBe(2);
    expect(svg).toContain('stroke="#ff4d00"');
  });

  it("renders zone rectangles when the layout is present", () => {
    const d = doc([[0, 0, 10, 0]], {
      layout: {
        gamma_x: [0, 1],
        kappa1_y: [100, 1],
        kappa2_y: [0, 1],
        w_g: 400,
        num_vars: 1,
        num_clauses: 1,
        zones: [
          ["good", 1, 10, 1, 20, 1, 0, 1, 50, 1],
          ["bad", 1, 30, 1, 40, 1, 0, 1, 50, 1],
        ],
      },
    });
    const view = initialView();
    const svg = renderScene(d, view, 300, 200);
    expect(svg).toContain('data-zone="good"');
    expect(svg).toContain('data-zone="bad"');
    view.overlays.zones = false;
    expect(renderScene(d, view, 300, 200)).not.toContain("data-zone");
  });

  it("status line reflects budget, errors, and progress", () => {
    const d = doc([[0, 0, 10, 0]]);
    const view = initialView();
    expect(statusLine(null, view)).toBe("no session");
    expect(statusLine(d, view)).toContain("budget 1/1");
    view.lastError = "nope";
    expect(statusLine(d, view)).toContain("blocked: nope");
  });

  it("role coloring can be toggled off", () => {
    expect(colorFor("x1.t", true)).not.toBe("#333333");
    expect(colorFor("x1.t", false)).toBe("#333333");
    expect(colorFor(null, true)).toBe("#333333");
  });
});
