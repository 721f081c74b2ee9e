// Session controller: owns the authoritative server state document, the
// ViewState, and the move history panel. One mutation may be in flight at
// a time; fold controls stay disabled until the response lands, and undo
// always resynchronizes to the document the server returns.

import { ApiError, MovesDoc, SessionApi, StateDoc } from "./api.js";
import { ViewState, chooseSide, initialView } from "./view.js";

export interface HistoryEntry {
  index: number;
  line: [number, number, number];
  side: string;
}

export type Listener = (c: SessionController) => void;

export class SessionController {
  state: StateDoc | null = null;
  view: ViewState = initialView();
  moves: MovesDoc | null = null;
  private listeners: Listener[] = [];

  constructor(private readonly api: SessionApi) {}

  onChange(fn: Listener): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) {
      fn(this);
    }
  }

  historyPanel(): HistoryEntry[] {
    if (!this.state) return [];
    return this.state.history.map((mv, i) => ({
      index: i,
      line: [mv[0], mv[1], mv[2]],
      side: mv[3],
    }));
  }

  async loadCnf(cnf: string, mode = "restricted"): Promise<boolean> {
    return this.mutate(async () => {
      this.state = await this.api.createFromCnf(cnf, mode);
      this.view = initialView();
      await this.refreshMoves();
    });
  }

  async loadInstance(instance: unknown, mode = "restricted"): Promise<boolean> {
    return this.mutate(async () => {
      this.state = await this.api.createFromInstance(instance, mode);
      this.view = initialView();
      await this.refreshMoves();
    });
  }

  async refreshMoves(): Promise<void> {
    if (this.state) {
      this.moves = await this.api.moves(this.state.session);
    }
  }

  async resync(): Promise<void> {
    if (this.state) {
      this.state = await this.api.state(this.state.session);
      await this.refreshMoves();
      this.emit();
    }
  }

  lineOfSegment(segmentId: number): [number, number, number] | null {
    if (!this.moves) return null;
    for (const l of this.moves.lines) {
      if (l.segment_ids.includes(segmentId)) {
        return l.line;
      }
    }
    return null;
  }

  // Fold along the supporting line of the clicked segment. Illegal picks
  // surface the server's reason and highlight the offending segments.
  async pickFold(segmentId: number | null): Promise<boolean> {
    if (segmentId === null || !this.state) {
      return false; // click on empty space: no-op
    }
    const line = this.lineOfSegment(segmentId);
    if (!line) {
      return false;
    }
    const side = chooseSide(this.view, this.state, line);
    return this.mutate(async () => {
      try {
        this.state = await this.api.fold(this.state!.session, line, side);
        this.view.lastError = null;
        this.view.highlightIds = [];
        await this.refreshMoves();
      } catch (e) {
        if (e instanceof ApiError && e.status === 409 && e.body.illegality) {
          this.view.lastError = describeIllegality(e.body.illegality.kind);
          this.view.highlightIds = e.body.illegality.ids;
          return;
        }
        throw e;
      }
    });
  }

  // Fold along an explicitly known line (trace playback).
  async mutateFold(line: [number, number, number], side: "left" | "right"): Promise<boolean> {
    if (!this.state) return false;
    return this.mutate(async () => {
      this.state = await this.api.fold(this.state!.session, line, side);
      this.view.lastError = null;
      this.view.highlightIds = [];
      await this.refreshMoves();
    });
  }

  async undo(): Promise<boolean> {
    if (!this.state) return false;
    return this.mutate(async () => {
      try {
        this.state = await this.api.undo(this.state!.session);
        this.view.lastError = null;
        this.view.highlightIds = [];
        await this.refreshMoves();
      } catch (e) {
        if (e instanceof ApiError && e.status === 409) {
          this.view.lastError = "nothing to undo";
          return;
        }
        throw e;
      }
    });
  }

  async solveTrace(): Promise<Array<[number, number, number, string]> | null> {
    if (!this.state) return null;
    const res = await this.api.solve(this.state.session, {});
    this.emit();
    if (res.verdict === "solved") {
      return res.trace;
    }
    this.view.lastError =
      res.verdict === "unsolvable_within_budget"
        ? "no fold sequence within the remaining budget"
        : "search budget exhausted";
    this.emit();
    return null;
  }

  private async mutate(body: () => Promise<void>): Promise<boolean> {
    if (this.view.pendingRequest) {
      return false; // a mutation is already in flight
    }
    this.view.pendingRequest = true;
    this.emit();
    try {
      await body();
      return true;
    } finally {
      this.view.pendingRequest = false;
      this.emit();
    }
  }
}

export function describeIllegality(kind: string): string {
  switch (kind) {
    case "no_segment_on_line":
      return "no segment lies on that line";
    case "stabs_interior":
      return "the fold line passes through another segment's interior";
    case "creates_crossing":
      return "folding would make two segments cross at a right angle";
    case "creates_oblique_crossing":
      return "folding would make two segments cross";
    default:
      return kind;
  }
}

// Trace playback: step through a solver trace, one server fold per step,
// with pause and undo-to-step. Every displayed state is the server's
// document for that prefix; divergence would surface as a failed fold.
export class Playback {
  position = 0;
  playing = false;

  constructor(
    private readonly controller: SessionController,
    private readonly trace: Array<[number, number, number, string]>,
  ) {}

  get length(): number {
    return this.trace.length;
  }

  async step(): Promise<boolean> {
    if (this.position >= this.trace.length) {
      return false;
    }
    const mv = this.trace[this.position]!;
    const ok = await this.controller.mutateFold([mv[0], mv[1], mv[2]], mv[3] as "left" | "right");
    if (ok) {
      this.position += 1;
    }
    return ok;
  }

  async stepBack(): Promise<boolean> {
    if (this.position === 0) {
      return false;
    }
    const ok = await this.controller.undo();
    if (ok) {
      this.position -= 1;
    }
    return ok;
  }

  async seek(target: number): Promise<void> {
    target = Math.max(0, Math.min(target, this.trace.length));
    while (this.position < target) {
      if (!(await this.step())) return;
    }
    while (this.position > target) {
      if (!(await this.stepBack())) return;
    }
  }

  async playAll(): Promise<void> {
    this.playing = true;
    while (this.playing && this.position < this.trace.length) {
      if (!(await this.step())) break;
    }
    this.playing = false;
  }

  pause(): void {
    this.playing = false;
  }
}
