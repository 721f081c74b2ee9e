"""Session-scoped HTTP JSON API for interactive folding.

Sessions live in memory with idle eviction. All coordinates cross the wire
as exact integer numerator/denominator pairs; clients render approximately
but the server is the single source of exactness. Requests within one
session serialize on the session lock; distinct sessions proceed
concurrently.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import io as formats
from .cnf import CnfError, normalize_formula
from .folding import (
    FoldMode,
    FoldMove,
    FoldState,
    Instance,
    apply_fold,
    check_legal,
    fold_lines,
    is_solved,
    legal_lines,
)
from .geometry import Line, Side
from .layout import Layout, LayoutParams, compile_formula
from .search import Outcome, SearchBudget, solve

IDLE_EVICTION_S = 3600.0


@dataclass
class Session:
    id: str
    instance: Instance
    mode: FoldMode
    budget: int
    state: FoldState
    undo_stack: list[FoldState] = field(default_factory=list)
    layout: Optional[Layout] = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    touched: float = field(default_factory=time.monotonic)


class SessionStore:
    def __init__(self, idle_eviction_s: float = IDLE_EVICTION_S):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._idle = idle_eviction_s

    def create(self, session: Session):
        with self._lock:
            self._evict()
            self._sessions[session.id] = session

    def get(self, sid: str) -> Optional[Session]:
        with self._lock:
            self._evict()
            s = self._sessions.get(sid)
            if s:
                s.touched = time.monotonic()
            return s

    def _evict(self):
        now = time.monotonic()
        stale = [k for k, s in self._sessions.items() if now - s.touched > self._idle]
        for k in stale:
            del self._sessions[k]


def _pair(v):
    f = Fraction(v)
    return [f.numerator, f.denominator]


def _state_doc(session: Session) -> dict:
    st = session.state
    return {
        "session": session.id,
        "mode": session.mode.value,
        "budget": session.budget,
        "remaining_budget": session.budget - len(st.history),
        "solved": is_solved(st),
        "history": [
            [mv.line.a, mv.line.b, mv.line.c, mv.reflected_side.name.lower()] for mv in st.history
        ],
        "segments": [
            {
                "id": sid,
                "p": [_pair(s.p.x), _pair(s.p.y)],
                "q": [_pair(s.q.x), _pair(s.q.y)],
                "role": _role_of(session, sid),
            }
            for sid, s in st.segments
        ],
    }


def _role_of(session: Session, sid: int) -> Optional[str]:
    roles = dict(session.instance.roles)
    srcs = session.state.provenance.get(sid)
    if not srcs:
        return None
    names = sorted(r for r in (roles.get(o) for o in srcs) if r)
    if not names:
        return None
    return "+".join(names)


def _line_doc(l: Line) -> list[int]:
    return [l.a, l.b, l.c]


def _parse_move(body: dict) -> FoldMove:
    line = body.get("line")
    side = body.get("reflected_side", "right")
    if not isinstance(line, list) or len(line) != 3:
        raise ValueError("move needs line=[a,b,c]")
    if side not in ("left", "right"):
        raise ValueError("reflected_side must be 'left' or 'right'")
    return FoldMove(
        Line(int(line[0]), int(line[1]), int(line[2])),
        Side.LEFT if side == "left" else Side.RIGHT,
    )


def create_app(store: Optional[SessionStore] = None) -> FastAPI:
    app = FastAPI(title="segfold sessions", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = store or SessionStore()

    def _not_found():
        return JSONResponse({"error": "unknown session"}, status_code=404)

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.json()
        mode = FoldMode.RESTRICTED if body.get("mode", "restricted") == "restricted" else FoldMode.UNRESTRICTED
        layout = None
        try:
            if "cnf" in body:
                cnf = formats.parse_dimacs(body["cnf"])
                norm = normalize_formula(cnf)
                params = LayoutParams(w_g=int(body.get("w_g", 400)))
                layout = compile_formula(norm, params)
                inst = layout.instance
            elif "instance" in body:
                inst = formats.read_instance(body["instance"])
            else:
                return JSONResponse({"error": "body needs 'cnf' or 'instance'"}, status_code=400)
        except (formats.FormatError, CnfError, ValueError, KeyError, TypeError) as e:
            return JSONResponse({"error": str(e)}, status_code=400)
        session = Session(
            id=secrets.token_urlsafe(12),
            instance=inst,
            mode=mode,
            budget=len(inst),
            state=FoldState.initial(inst),
            layout=layout,
        )
        sessions.create(session)
        doc = _state_doc(session)
        if layout is not None:
            doc["layout"] = formats.write_instance(inst, layout)["layout"]
        return doc

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        session = sessions.get(sid)
        if session is None:
            return _not_found()
        with session.lock:
            return _state_doc(session)

    @app.get("/sessions/{sid}/moves")
    def list_moves(sid: str):
        session = sessions.get(sid)
        if session is None:
            return _not_found()
        with session.lock:
            st = session.state
            lines = []
            for l in fold_lines(st):
                problem = check_legal(st, FoldMove(l, Side.RIGHT), session.mode)
                lines.append(
                    {
                        "line": _line_doc(l),
                        "segment_ids": list(st.line_map()[l]),
                        "legal": problem is None,
                        "illegality": None if problem is None else {
                            "kind": problem.kind.value,
                            "ids": list(problem.ids),
                        },
                        "sides": ["left", "right"] if problem is None else [],
                    }
                )
            return {"session": sid, "lines": lines}

    @app.post("/sessions/{sid}/fold")
    async def fold(sid: str, request: Request):
        session = sessions.get(sid)
        if session is None:
            return _not_found()
        body = await request.json()
        try:
            mv = _parse_move(body)
        except (ValueError, TypeError) as e:
            return JSONResponse({"error": str(e)}, status_code=400)
        with session.lock:
            problem = check_legal(session.state, mv, session.mode)
            if problem is not None:
                return JSONResponse(
                    {"error": "illegal move", "illegality": {"kind": problem.kind.value, "ids": list(problem.ids)}},
                    status_code=409,
                )
            session.undo_stack.append(session.state)
            session.state = apply_fold(session.state, mv, session.mode)
            return _state_doc(session)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = sessions.get(sid)
        if session is None:
            return _not_found()
        with session.lock:
            if not session.undo_stack:
                return JSONResponse({"error": "nothing to undo"}, status_code=409)
            session.state = session.undo_stack.pop()
            return _state_doc(session)

    @app.post("/sessions/{sid}/solve")
    async def solve_session(sid: str, request: Request):
        session = sessions.get(sid)
        if session is None:
            return _not_found()
        try:
            body = await request.json()
        except Exception:
            body = {}
        with session.lock:
            remaining = session.budget - len(session.state.history)
            depth = int(body.get("depth", remaining))
            depth = max(0, depth)
            inst = Instance(session.state.segments, dict(session.instance.roles))
            res = solve(
                inst,
                session.mode,
                SearchBudget(
                    depth,
                    int(body.get("node_cap", 500_000)),
                    float(body.get("time_cap", 60.0)),
                ),
            )
            if res.outcome is Outcome.SOLVED:
                return {
                    "verdict": "solved",
                    "trace": [
                        [mv.line.a, mv.line.b, mv.line.c, mv.reflected_side.name.lower()]
                        for mv in res.moves
                    ],
                    "nodes": res.stats.nodes,
                }
            if res.outcome is Outcome.UNSOLVABLE_WITHIN_BUDGET:
                return {"verdict": "unsolvable_within_budget", "depth": depth, "nodes": res.stats.nodes}
            return {"verdict": "resource_exhausted", "nodes": res.stats.nodes}

    return app


app = create_app()
