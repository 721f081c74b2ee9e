// Browser bootstrap: wires the controller to the DOM. Everything stateful
// lives in SessionController/ViewState; this file only translates events.

import { SessionApi } from "./api.js";
import { Playback, SessionController } from "./controller.js";
import { renderScene, statusLine } from "./render.js";
import { fitCamera, hitTest, pan, projectSegments, zoom } from "./view.js";

const WIDTH = 960;
const HEIGHT = 640;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function boot(base?: string): SessionController {
  const api = new SessionApi(base ?? "");
  const controller = new SessionController(api);
  const canvas = el<HTMLDivElement>("canvas");
  const status = el<HTMLDivElement>("status");
  const historyPanel = el<HTMLUListElement>("history");
  const errorBox = el<HTMLDivElement>("error");
  let playback: Playback | null = null;

  function draw() {
    const doc = controller.state;
    status.textContent = statusLine(doc, controller.view);
    errorBox.textContent = controller.view.lastError ?? "";
    errorBox.style.display = controller.view.lastError ? "block" : "none";
    for (const btn of document.querySelectorAll<HTMLButtonElement>("button[data-mutates]")) {
      btn.disabled = controller.view.pendingRequest || !doc;
    }
    historyPanel.replaceChildren(
      ...controller.historyPanel().map((h) => {
        const li = document.createElement("li");
        li.textContent = `#${h.index + 1} fold [${h.line.join(", ")}] ${h.side}`;
        return li;
      }),
    );
    canvas.innerHTML = doc ? renderScene(doc, controller.view, WIDTH, HEIGHT) : "";
  }

  controller.onChange(draw);

  el<HTMLButtonElement>("load-cnf").addEventListener("click", async () => {
    const cnf = el<HTMLTextAreaElement>("cnf-input").value;
    const ok = await controller.loadCnf(cnf).catch((e) => {
      controller.view.lastError = String(e instanceof Error ? e.message : e);
      draw();
      return false;
    });
    if (ok && controller.state) {
      controller.view.camera = fitCamera(controller.state, WIDTH, HEIGHT);
      draw();
    }
  });

  el<HTMLButtonElement>("load-instance").addEventListener("click", async () => {
    try {
      const doc = JSON.parse(el<HTMLTextAreaElement>("cnf-input").value);
      if (await controller.loadInstance(doc)) {
        controller.view.camera = fitCamera(controller.state!, WIDTH, HEIGHT);
        draw();
      }
    } catch (e) {
      controller.view.lastError = String(e instanceof Error ? e.message : e);
      draw();
    }
  });

  el<HTMLButtonElement>("undo").addEventListener("click", () => void controller.undo());

  el<HTMLSelectElement>("side-toggle").addEventListener("change", (ev) => {
    controller.view.sideToggle = (ev.target as HTMLSelectElement).value as "auto" | "left" | "right";
  });

  el<HTMLButtonElement>("solve").addEventListener("click", async () => {
    const trace = await controller.solveTrace();
    if (trace) {
      playback = new Playback(controller, trace);
      el<HTMLButtonElement>("step").disabled = false;
      el<HTMLButtonElement>("play").disabled = false;
      el<HTMLButtonElement>("step-back").disabled = false;
    }
  });

  el<HTMLButtonElement>("step").addEventListener("click", () => void playback?.step());
  el<HTMLButtonElement>("step-back").addEventListener("click", () => void playback?.stepBack());
  el<HTMLButtonElement>("play").addEventListener("click", () => void playback?.playAll());
  el<HTMLButtonElement>("pause").addEventListener("click", () => playback?.pause());

  canvas.addEventListener("click", (ev) => {
    if (!controller.state || controller.view.pendingRequest) return;
    const rect = canvas.getBoundingClientRect();
    const sx = ev.clientX - rect.left;
    const sy = ev.clientY - rect.top;
    const screen = projectSegments(controller.state, controller.view.camera, WIDTH, HEIGHT);
    void controller.pickFold(hitTest(screen, sx, sy));
  });

  canvas.addEventListener("mousemove", (ev) => {
    if (!controller.state) return;
    const rect = canvas.getBoundingClientRect();
    const screen = projectSegments(controller.state, controller.view.camera, WIDTH, HEIGHT);
    const hover = hitTest(screen, ev.clientX - rect.left, ev.clientY - rect.top);
    if (hover !== controller.view.hoverSegment) {
      controller.view.hoverSegment = hover;
      draw();
    }
  });

  canvas.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const rect = canvas.getBoundingClientRect();
    controller.view.camera = zoom(
      controller.view.camera,
      ev.deltaY > 0 ? 1.15 : 1 / 1.15,
      WIDTH,
      HEIGHT,
      ev.clientX - rect.left,
      ev.clientY - rect.top,
    );
    draw();
  });

  let dragging: [number, number] | null = null;
  canvas.addEventListener("mousedown", (ev) => {
    if (ev.button === 1 || ev.shiftKey) {
      dragging = [ev.clientX, ev.clientY];
      ev.preventDefault();
    }
  });
  window.addEventListener("mousemove", (ev) => {
    if (dragging) {
      controller.view.camera = pan(controller.view.camera, ev.clientX - dragging[0], ev.clientY - dragging[1]);
      dragging = [ev.clientX, ev.clientY];
      draw();
    }
  });
  window.addEventListener("mouseup", () => {
    dragging = null;
  });

  draw();
  return controller;
}

declare global {
  interface Window {
    segfoldBoot: typeof boot;
  }
}

function autoBoot(): void {
  // Only self-start when the page shell is actually present (the test
  // harness imports this module and calls boot() itself).
  if (document.getElementById("canvas") && document.getElementById("status")) {
    boot();
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.segfoldBoot = boot;
  if (document.readyState !== "loading") {
    autoBoot();
  } else {
    document.addEventListener("DOMContentLoaded", autoBoot);
  }
}
