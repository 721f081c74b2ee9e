// Typed client for the folding session API. The server is the single
// source of exactness: every coordinate arrives as an exact
// [numerator, denominator] pair and is only approximated for drawing.

export type Pair = [number, number];

export interface SegmentDoc {
  id: number;
  p: [Pair, Pair];
  q: [Pair, Pair];
  role: string | null;
}

export interface StateDoc {
  session: string;
  mode: string;
  budget: number;
  remaining_budget: number;
  solved: boolean;
  history: Array<[number, number, number, string]>;
  segments: SegmentDoc[];
  layout?: LayoutDoc;
}

export interface LayoutDoc {
  gamma_x: Pair;
  kappa1_y: Pair;
  kappa2_y: Pair;
  w_g: number;
  num_vars: number;
  num_clauses: number;
  zones: Array<[string, number, number, number, number, number, number, number, number, number]>;
}

export interface IllegalityDoc {
  kind: string;
  ids: number[];
}

export interface MoveLineDoc {
  line: [number, number, number];
  segment_ids: number[];
  legal: boolean;
  illegality: IllegalityDoc | null;
  sides: string[];
}

export interface MovesDoc {
  session: string;
  lines: MoveLineDoc[];
}

export type SolveDoc =
  | { verdict: "solved"; trace: Array<[number, number, number, string]>; nodes: number }
  | { verdict: "unsolvable_within_budget"; depth: number; nodes: number }
  | { verdict: "resource_exhausted"; nodes: number };

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: { error?: string; illegality?: IllegalityDoc },
  ) {
    super(body.error ?? `request failed (${status})`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, body as { error?: string });
  }
  return body as T;
}

export class SessionApi {
  constructor(private readonly base: string) {}

  createFromCnf(cnf: string, mode = "restricted"): Promise<StateDoc> {
    return request<StateDoc>(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ cnf, mode }),
    });
  }

  createFromInstance(instance: unknown, mode = "restricted"): Promise<StateDoc> {
    return request<StateDoc>(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ instance, mode }),
    });
  }

  state(id: string): Promise<StateDoc> {
    return request<StateDoc>(`${this.base}/sessions/${id}`);
  }

  moves(id: string): Promise<MovesDoc> {
    return request<MovesDoc>(`${this.base}/sessions/${id}/moves`);
  }

  fold(id: string, line: [number, number, number], side: "left" | "right"): Promise<StateDoc> {
    return request<StateDoc>(`${this.base}/sessions/${id}/fold`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ line, reflected_side: side }),
    });
  }

  undo(id: string): Promise<StateDoc> {
    return request<StateDoc>(`${this.base}/sessions/${id}/undo`, { method: "POST" });
  }

  solve(id: string, opts: { depth?: number; node_cap?: number; time_cap?: number } = {}): Promise<SolveDoc> {
    return request<SolveDoc>(`${this.base}/sessions/${id}/solve`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(opts),
    });
  }
}

export function toNumber(pair: Pair): number {
  return pair[0] / pair[1];
}
