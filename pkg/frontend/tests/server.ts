// Spawn the real session service for integration tests.

import { ChildProcess, spawn } from "node:child_process";
import { resolve } from "node:path";

export interface LiveServer {
  base: string;
  stop(): Promise<void>;
}

export function pickPort(salt = 0): number {
  // unique-ish per process so reruns and parallel files never collide
  return 8900 + ((process.pid + salt * 131) % 900);
}

export async function startServer(port = pickPort()): Promise<LiveServer> {
  // vitest runs from frontend/; the Python package lives one level up
  const repoRoot = resolve(process.cwd(), "..");
  const proc: ChildProcess = spawn(
    "python3",
    ["-m", "uvicorn", "segfold.server:app", "--host", "127.0.0.1", "--port", String(port), "--log-level", "warning"],
    { stdio: ["ignore", "pipe", "pipe"], cwd: repoRoot },
  );
  const base = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 30_000;
  let lastErr: unknown = null;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${base}/sessions/probe`);
      if (resp.status === 404) {
        return {
          base,
          stop: () =>
            new Promise((resolve) => {
              proc.once("exit", () => resolve());
              proc.kill("SIGTERM");
              setTimeout(() => proc.kill("SIGKILL"), 3000).unref();
            }),
        };
      }
    } catch (e) {
      lastErr = e;
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  proc.kill("SIGKILL");
  throw new Error(`server did not come up: ${lastErr}`);
}
