// Pure rendering: server state document + ViewState -> SVG markup string.
// The drawing approximates rationals as floats; nothing drawn here ever
// feeds back into a request.

import { LayoutDoc, StateDoc, toNumber } from "./api.js";
import { Camera, ScreenSegment, ViewState, projectSegments, worldToScreen } from "./view.js";

const ROLE_COLORS: Array<[string, string]> = [
  ["t_h", "#7a4dd8"],
  ["f_h", "#b04dd8"],
  ["t_b", "#2f7de1"],
  ["f_b", "#d8754d"],
  [".t", "#1a9850"],
  [".f", "#d73027"],
  ["b_z", "#555555"],
  [".b1", "#2f7de1"],
  [".b2", "#2f7de1"],
  [".b3", "#2f7de1"],
  [".c", "#e08214"],
  [".z", "#1f78b4"],
  [".b", "#6a3d9a"],
];

export function colorFor(role: string | null, showRoles: boolean): string {
  if (role && showRoles) {
    for (const [key, color] of ROLE_COLORS) {
      if (role.includes(key)) {
        return color;
      }
    }
  }
  return "#333333";
}

function esc(v: string): string {
  return v.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/"/g, "&quot;");
}

export function renderScene(
  doc: StateDoc,
  view: ViewState,
  width: number,
  height: number,
): string {
  const cam = view.camera;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  ];
  if (view.overlays.zones && doc.layout) {
    parts.push(...zoneRects(doc.layout, cam, width, height));
  }
  const screen = projectSegments(doc, cam, width, height);
  const highlighted = new Set(view.highlightIds);
  for (const s of screen) {
    const isHot = highlighted.has(s.id) || view.hoverSegment === s.id;
    const role = s.role;
    const color = isHot ? "#ff4d00" : colorFor(role, view.overlays.roles);
    const widthPx = isHot ? 3.5 : 1.8;
    parts.push(
      `<line x1="${fmt(s.x1)}" y1="${fmt(s.y1)}" x2="${fmt(s.x2)}" y2="${fmt(s.y2)}" ` +
        `stroke="${color}" stroke-width="${widthPx}" stroke-linecap="round" ` +
        `data-id="${s.id}"${role ? ` data-role="${esc(role)}"` : ""}/>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

function fmt(v: number): string {
  return Number.isFinite(v) ? v.toFixed(2) : "0";
}

function zoneRects(layout: LayoutDoc, cam: Camera, width: number, height: number): string[] {
  const out: string[] = [];
  for (const [kind, clause, xlN, xlD, xhN, xhD, ylN, ylD, yhN, yhD] of layout.zones) {
    const [x1, y1] = worldToScreen(cam, width, height, xlN / xlD, yhN / yhD);
    const [x2, y2] = worldToScreen(cam, width, height, xhN / xhD, ylN / ylD);
    const fill = kind === "good" ? "#ccebc5" : "#fbb4ae";
    out.push(
      `<rect x="${fmt(x1)}" y="${fmt(y1)}" width="${fmt(x2 - x1)}" height="${fmt(y2 - y1)}" ` +
        `fill="${fill}" fill-opacity="0.6" data-zone="${kind}" data-clause="${clause}"/>`,
    );
  }
  return out;
}

export function statusLine(doc: StateDoc | null, view: ViewState): string {
  if (!doc) {
    return "no session";
  }
  const bits = [
    `${doc.segments.length} segments`,
    `${doc.history.length} folds`,
    `budget ${doc.remaining_budget}/${doc.budget}`,
  ];
  if (doc.solved) {
    bits.push("solved");
  }
  if (view.pendingRequest) {
    bits.push("working…");
  }
  if (view.lastError) {
    bits.push(`blocked: ${view.lastError}`);
  }
  return bits.join(" · ");
}

export { projectSegments };
export type { ScreenSegment };
