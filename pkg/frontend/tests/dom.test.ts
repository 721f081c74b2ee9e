// @vitest-environment jsdom
//
// Boots the real DOM app against the live service and drives it the way a
// user would: paste a CNF, load, click a segment, undo.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { boot } from "../src/main.js";
import { SessionController } from "../src/controller.js";
import { LiveServer, pickPort, startServer } from "./server.js";

let server: LiveServer;

const SHELL = `
  <textarea id="cnf-input"></textarea>
  <button id="load-cnf">load</button>
  <button id="load-instance">load2</button>
  <button id="undo" data-mutates>undo</button>
  <button id="solve" data-mutates>solve</button>
  <button id="step" disabled>step</button>
  <button id="step-back" disabled>back</button>
  <button id="play" disabled>play</button>
  <button id="pause">pause</button>
  <select id="side-toggle"><option value="auto">auto</option>
    <option value="left">left</option><option value="right">right</option></select>
  <div id="error"></div>
  <ul id="history"></ul>
  <div id="status"></div>
  <div id="canvas"></div>
`;

beforeAll(async () => {
  server = await startServer(pickPort(2));
}, 45_000);

afterAll(async () => {
  await server.stop();
});

async function until(cond: () => boolean, ms = 15_000): Promise<void> {
  const deadline = Date.now() + ms;
  while (!cond()) {
    if (Date.now() > deadline) {
      throw new Error("condition not reached");
    }
    await new Promise((r) => setTimeout(r, 25));
  }
}

describe("DOM app", () => {
  it("loads a CNF from the textarea and renders the scene", async () => {
    document.body.innerHTML = SHELL;
    const controller: SessionController = boot(server.base);
    (document.getElementById("cnf-input") as HTMLTextAreaElement).value = "p cnf 1 1\n1 0\n";
    (document.getElementById("load-cnf") as HTMLButtonElement).click();
    await until(() => controller.state !== null && !controller.view.pendingRequest);

    const canvas = document.getElementById("canvas")!;
    expect(canvas.querySelectorAll("line").length).toBe(20);
    expect(document.getElementById("status")!.textContent).toContain("20 segments");
    expect(document.getElementById("error")!.style.display).toBe("none");
  });

  it("shows an inline error for a bad CNF", async () => {
    document.body.innerHTML = SHELL;
    const controller: SessionController = boot(server.base);
    (document.getElementById("cnf-input") as HTMLTextAreaElement).value = "p cnf 1 1\n1 1 1 1 0\n";
    (document.getElementById("load-cnf") as HTMLButtonElement).click();
    await until(() => controller.view.lastError !== null);
    expect(controller.state).toBeNull();
    expect(document.getElementById("error")!.textContent).toContain("clause longer than 3");
  });

  it("folds through the controller and undoes from the button", async () => {
    document.body.innerHTML = SHELL;
    const controller: SessionController = boot(server.base);
    (document.getElementById("cnf-input") as HTMLTextAreaElement).value = "p cnf 1 1\n1 0\n";
    (document.getElementById("load-cnf") as HTMLButtonElement).click();
    await until(() => controller.state !== null && controller.moves !== null);

    const legal = controller.moves!.lines.find((l) => l.legal)!;
    await controller.pickFold(legal.segment_ids[0]!);
    await until(() => !controller.view.pendingRequest);
    expect(controller.state!.history.length).toBe(1);
    await until(() => document.getElementById("history")!.children.length === 1);

    (document.getElementById("undo") as HTMLButtonElement).click();
    await until(() => controller.state !== null && controller.state.history.length === 0);
    expect(document.getElementById("history")!.children.length).toBe(0);
  });
});
