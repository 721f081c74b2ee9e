// View state: camera, selection, overlay toggles, and the screen mapping.
// Rendering is a pure function of (server state document, ViewState); the
// client never derives new geometry, it only projects what the server sent.

import { SegmentDoc, StateDoc, toNumber } from "./api.js";

export interface Camera {
  // world-units-per-pixel scale and world coordinates of the screen center
  scale: number;
  cx: number;
  cy: number;
}

export interface Overlays {
  roles: boolean;
  zones: boolean;
  supportingLines: boolean;
}

export interface ViewState {
  camera: Camera;
  selectedLine: [number, number, number] | null;
  hoverSegment: number | null;
  overlays: Overlays;
  sideToggle: "auto" | "left" | "right";
  pendingRequest: boolean;
  lastError: string | null;
  highlightIds: number[];
}

export function initialView(): ViewState {
  return {
    camera: { scale: 1, cx: 0, cy: 0 },
    selectedLine: null,
    hoverSegment: null,
    overlays: { roles: true, zones: true, supportingLines: false },
    sideToggle: "auto",
    pendingRequest: false,
    lastError: null,
    highlightIds: [],
  };
}

export interface ScreenSegment {
  id: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  role: string | null;
}

export function fitCamera(doc: StateDoc, width: number, height: number): Camera {
  let loX = Infinity;
  let hiX = -Infinity;
  let loY = Infinity;
  let hiY = -Infinity;
  for (const s of doc.segments) {
    for (const [px, py] of [s.p, s.q]) {
      const x = toNumber(px);
      const y = toNumber(py);
      loX = Math.min(loX, x);
      hiX = Math.max(hiX, x);
      loY = Math.min(loY, y);
      hiY = Math.max(hiY, y);
    }
  }
  if (!isFinite(loX)) {
    return { scale: 1, cx: 0, cy: 0 };
  }
  const spanX = Math.max(hiX - loX, 1);
  const spanY = Math.max(hiY - loY, 1);
  const scale = Math.max(spanX / (width * 0.9), spanY / (height * 0.9));
  return { scale, cx: (loX + hiX) / 2, cy: (loY + hiY) / 2 };
}

export function worldToScreen(cam: Camera, width: number, height: number, x: number, y: number): [number, number] {
  // y grows upward in the model and downward on screen
  return [width / 2 + (x - cam.cx) / cam.scale, height / 2 - (y - cam.cy) / cam.scale];
}

export function screenToWorld(cam: Camera, width: number, height: number, sx: number, sy: number): [number, number] {
  return [cam.cx + (sx - width / 2) * cam.scale, cam.cy - (sy - height / 2) * cam.scale];
}

export function projectSegments(doc: StateDoc, cam: Camera, width: number, height: number): ScreenSegment[] {
  return doc.segments.map((s: SegmentDoc) => {
    const [x1, y1] = worldToScreen(cam, width, height, toNumber(s.p[0]), toNumber(s.p[1]));
    const [x2, y2] = worldToScreen(cam, width, height, toNumber(s.q[0]), toNumber(s.q[1]));
    return { id: s.id, x1, y1, x2, y2, role: s.role };
  });
}

export function pan(cam: Camera, dxPixels: number, dyPixels: number): Camera {
  return { scale: cam.scale, cx: cam.cx - dxPixels * cam.scale, cy: cam.cy + dyPixels * cam.scale };
}

export function zoom(cam: Camera, factor: number, width: number, height: number, sx: number, sy: number): Camera {
  // keep the world point under the cursor fixed
  const [wx, wy] = screenToWorld(cam, width, height, sx, sy);
  const scale = cam.scale * factor;
  const cx = wx - (sx - width / 2) * scale;
  const cy = wy + (sy - height / 2) * scale;
  return { scale, cx, cy };
}

function distanceToSegment(px: number, py: number, s: ScreenSegment): number {
  const vx = s.x2 - s.x1;
  const vy = s.y2 - s.y1;
  const len2 = vx * vx + vy * vy;
  let t = len2 === 0 ? 0 : ((px - s.x1) * vx + (py - s.y1) * vy) / len2;
  t = Math.max(0, Math.min(1, t));
  const dx = px - (s.x1 + t * vx);
  const dy = py - (s.y1 + t * vy);
  return Math.hypot(dx, dy);
}

export function hitTest(
  screen: ScreenSegment[],
  sx: number,
  sy: number,
  tolerancePx = 6,
): number | null {
  let best: number | null = null;
  let bestDist = tolerancePx;
  for (const s of screen) {
    const d = distanceToSegment(sx, sy, s);
    if (d <= bestDist) {
      best = s.id;
      bestDist = d;
    }
  }
  return best;
}

// Default side selection: reflect the side with fewer segments (explicit
// toggle wins). Counting uses the sign of a*x + b*y - c at the exact
// endpoint pairs, cross-multiplied to stay integral.
export function autoSide(doc: StateDoc, line: [number, number, number]): "left" | "right" {
  const [a, b, c] = line;
  let left = 0;
  let right = 0;
  for (const s of doc.segments) {
    let pos = false;
    let neg = false;
    for (const [px, py] of [s.p, s.q]) {
      const [xn, xd] = px;
      const [yn, yd] = py;
      // sign of a*xn/xd + b*yn/yd - c, scaled by xd*yd > 0
      const v = a * xn * yd + b * yn * xd - c * xd * yd;
      if (v > 0) pos = true;
      if (v < 0) neg = true;
    }
    if (pos) right += 1;
    if (neg) left += 1;
  }
  return right <= left ? "right" : "left";
}

export function chooseSide(view: ViewState, doc: StateDoc, line: [number, number, number]): "left" | "right" {
  if (view.sideToggle !== "auto") {
    return view.sideToggle;
  }
  return autoSide(doc, line);
}
