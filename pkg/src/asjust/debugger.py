"""Interactive debugging sessions over the solver, exposed as an HTTP service.

A session owns one stepping solver plus the incremental justifier; pauses
(breakpoints, models, plain steps) store resumable checkpoints in a bounded
state table.  Handlers serialize per-session work through an exclusive lock.

Note: no postponed annotations here; FastAPI must resolve the handler models
at runtime.
"""

import threading
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass
from typing import Optional, Sequence

from .egraph import egraph_to_dot, egraph_to_json, node_for
from .online import OnlineJustifier
from .program import Atom, GroundingError, ParseError, PInterpretation, Program, load_program
from .solver import SolverEngine, StepEvent

STATE_TABLE_CAP = 1024
DEFAULT_TTL_SECONDS = 30 * 60
RUN_STEP_LIMIT = 200_000


@dataclass(frozen=True)
class Breakpoint:
    id: int
    kind: str  # 'atom' | 'conflict' | 'conflict-atom' | 'answer'
    atom: Optional[Atom] = None
    value: str = "any"  # atom kind: 'true' | 'false' | 'any'
    answer_index: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "atom": self.atom.name if self.atom else None,
            "value": self.value if self.kind == "atom" else None,
            "answer": self.answer_index,
        }


class SessionError(Exception):
    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status


class DebugSession:
    def __init__(
        self,
        session_id: str,
        program: Program,
        sign_order: str = "tf",
        choice_order: Sequence[str] = (),
    ):
        self.id = session_id
        self.program = program
        self.engine = SolverEngine(program, sign_order, choice_order)
        self.justifier = OnlineJustifier(program)
        self.breakpoints: dict[int, Breakpoint] = {}
        self._bp_counter = 0
        self.checkpoints: "OrderedDict[int, tuple[SolverEngine, OnlineJustifier]]" = (
            OrderedDict()
        )
        self._cp_counter = 0
        self.last_event: Optional[dict] = None
        self.lock = threading.Lock()
        self.touched = time.time()
        self._save_checkpoint()

    # -- breakpoints --------------------------------------------------------

    def add_breakpoint(
        self,
        kind: str,
        atom_name: Optional[str] = None,
        value: str = "any",
        answer_index: Optional[int] = None,
    ) -> Breakpoint:
        atom = None
        if kind in ("atom", "conflict-atom"):
            if atom_name is None:
                raise SessionError(f"breakpoint kind {kind!r} needs an atom")
            atom = self.program.try_atom(atom_name)
            if atom is None:
                raise SessionError(f"unknown atom {atom_name!r}")
        if kind == "atom" and value not in ("true", "false", "any"):
            raise SessionError("value must be true, false, or any")
        if kind == "answer" and (answer_index is None or answer_index < 1):
            raise SessionError("answer breakpoints need a positive index")
        if kind not in ("atom", "conflict", "conflict-atom", "answer"):
            raise SessionError(f"unknown breakpoint kind {kind!r}")
        self._bp_counter += 1
        bp = Breakpoint(self._bp_counter, kind, atom, value, answer_index)
        self.breakpoints[bp.id] = bp
        return bp

    def clear_breakpoint(self, bp_id: int) -> None:
        if bp_id not in self.breakpoints:
            raise SessionError(f"no breakpoint {bp_id}", status=404)
        del self.breakpoints[bp_id]

    # -- stepping -------------------------------------------------------------

    def _save_checkpoint(self) -> int:
        self._cp_counter += 1
        self.checkpoints[self._cp_counter] = (
            self.engine.clone(),
            self.justifier.clone(),
        )
        while len(self.checkpoints) > STATE_TABLE_CAP:
            self.checkpoints.popitem(last=False)
        return self._cp_counter

    def _fired_breakpoints(
        self, before: PInterpretation, event: StepEvent
    ) -> list[Breakpoint]:
        fired = []
        after = event.state
        new_plus = after.plus - before.plus
        new_minus = after.minus - before.minus
        conflict_arose = bool(after.conflict) and not before.conflict
        for bp in self.breakpoints.values():
            if bp.kind == "atom" and event.kind == "transition":
                hit_true = bp.atom in new_plus and bp.value in ("true", "any")
                hit_false = bp.atom in new_minus and bp.value in ("false", "any")
                if hit_true or hit_false:
                    fired.append(bp)
            elif bp.kind == "conflict" and conflict_arose:
                fired.append(bp)
            elif bp.kind == "conflict-atom" and conflict_arose:
                if bp.atom in after.conflict or self._on_conflict_graph(bp.atom):
                    fired.append(bp)
            elif bp.kind == "answer" and event.kind == "model":
                if len(self.engine.models) == bp.answer_index:
                    fired.append(bp)
        return fired

    def _on_conflict_graph(self, atom: Atom) -> bool:
        snap = self.justifier.current
        for a in self.engine.current.conflict:
            for sign in "+-":
                g = snap.graph_for(node_for(a, sign))
                if g and any(n.atom == atom for n in g.nodes if n.is_annotated):
                    return True
        return False

    def _advance(self) -> tuple[StepEvent, list[Breakpoint]]:
        before = self.engine.current
        event = self.engine.step()
        if event.kind == "transition":
            self.justifier.observe(event.tag, event.state)
        fired = self._fired_breakpoints(before, event)
        return event, fired

    def step(self) -> dict:
        """Apply exactly one transition and pause."""
        if self.engine.done:
            raise SessionError("session is done", status=409)
        event, fired = self._advance()
        return self._record(event, fired)

    def run(self) -> dict:
        """Advance until a breakpoint fires, a model completes, or exhaustion."""
        if self.engine.done:
            raise SessionError("session is done", status=409)
        for _ in range(RUN_STEP_LIMIT):
            event, fired = self._advance()
            if event.kind in ("model", "exhausted") or fired:
                return self._record(event, fired)
        raise SessionError("run exceeded the step limit", status=500)

    def resume_from(self, checkpoint: int, sign_order: Optional[str] = None) -> dict:
        if checkpoint not in self.checkpoints:
            raise SessionError(f"no checkpoint {checkpoint}", status=404)
        engine, justifier = self.checkpoints[checkpoint]
        self.engine = engine.clone()
        self.justifier = justifier.clone()
        if sign_order is not None:
            if sign_order not in ("tf", "ft"):
                raise SessionError("sign_order must be 'tf' or 'ft'")
            self.engine.sign_order = sign_order
        event = StepEvent("resume", self.engine.current)
        return self._record(event, [])

    def _record(self, event: StepEvent, fired: list[Breakpoint]) -> dict:
        self.last_event = {
            "type": event.kind,
            "tag": event.tag.to_json() if event.tag else None,
            "model": event.model.to_json() if event.model else None,
            "firedBreakpoints": [bp.id for bp in fired],
        }
        return self.digest(checkpoint=self._save_checkpoint())

    # -- views ------------------------------------------------------------------

    def digest(self, checkpoint: Optional[int] = None) -> dict:
        cur = self.engine.current
        unknown = [
            a.name for a in self.program.atoms if a not in cur.plus and a not in cur.minus
        ]
        return {
            "id": self.id,
            "status": "done" if self.engine.done else "paused",
            "state": {
                "plus": [a.name for a in sorted(cur.plus)],
                "minus": [a.name for a in sorted(cur.minus)],
                "unknown": unknown,
                "conflict": sorted(a.name for a in cur.conflict),
            },
            "models": [m.to_json() for m in self.engine.models],
            "checkpoint": checkpoint if checkpoint is not None else self._cp_counter,
            "lastEvent": self.last_event,
        }

    def snapshot_json(self) -> dict:
        return self.justifier.current.to_json()

    def justification(self, atom_name: str, sign: str) -> "EGraph":
        atom = self.program.try_atom(atom_name)
        if atom is None:
            raise SessionError(f"unknown atom {atom_name!r}", status=404)
        if sign not in ("+", "-"):
            raise SessionError("sign must be '+' or '-'")
        g = self.justifier.current.graph_for(node_for(atom, sign))
        if g is None:
            raise SessionError(
                f"no justification for {atom_name}{sign} in the current state",
                status=404,
            )
        return g


class SessionManager:
    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.sessions: dict[str, DebugSession] = {}
        self.ttl = ttl_seconds
        self.lock = threading.Lock()

    def create(self, program_text: str, sign_order: str = "tf", choice_order=()) -> DebugSession:
        try:
            program = load_program(program_text)
        except ParseError as exc:
            raise SessionError(
                f"syntax error at {exc.line}:{exc.column}: {exc.message}"
            ) from exc
        except GroundingError as exc:
            raise SessionError(str(exc)) from exc
        session = DebugSession(uuid.uuid4().hex[:12], program, sign_order, choice_order)
        with self.lock:
            self._sweep()
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> DebugSession:
        with self.lock:
            self._sweep()
            session = self.sessions.get(session_id)
        if session is None:
            raise SessionError(f"no session {session_id}", status=404)
        session.touched = time.time()
        return session

    def _sweep(self) -> None:
        cutoff = time.time() - self.ttl
        for sid in [s for s, sess in self.sessions.items() if sess.touched < cutoff]:
            del self.sessions[sid]


def create_app(manager: Optional[SessionManager] = None, static_dir: Optional[str] = None):
    """FastAPI application exposing the debugger over plain HTTP + JSON."""
    from fastapi import FastAPI, Request
    from fastapi.middleware.cors import CORSMiddleware
    from fastapi.responses import JSONResponse, PlainTextResponse
    from pydantic import BaseModel

    manager = manager or SessionManager()
    app = FastAPI(title="asjust debugger")
    app.state.manager = manager
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    class SessionIn(BaseModel):
        program: str
        sign_order: str = "tf"
        choice_order: list[str] = []

    class BreakpointIn(BaseModel):
        kind: str
        atom: Optional[str] = None
        value: str = "any"
        answer: Optional[int] = None

    class ResumeIn(BaseModel):
        checkpoint: int
        sign_order: Optional[str] = None

    @app.exception_handler(SessionError)
    async def session_error(_request: Request, exc: SessionError):
        return JSONResponse({"error": str(exc)}, status_code=exc.status)

    @app.post("/sessions")
    def create_session(body: SessionIn):
        session = manager.create(body.program, body.sign_order, body.choice_order)
        return {"id": session.id}

    @app.post("/sessions/{sid}/breakpoints")
    def add_breakpoint(sid: str, body: BreakpointIn):
        session = manager.get(sid)
        with session.lock:
            bp = session.add_breakpoint(body.kind, body.atom, body.value, body.answer)
        return {"bpId": bp.id}

    @app.delete("/sessions/{sid}/breakpoints/{bp_id}")
    def clear_breakpoint(sid: str, bp_id: int):
        session = manager.get(sid)
        with session.lock:
            session.clear_breakpoint(bp_id)
        return {"ok": True}

    @app.post("/sessions/{sid}/run")
    def run(sid: str):
        session = manager.get(sid)
        with session.lock:
            return session.run()

    @app.post("/sessions/{sid}/step")
    def step(sid: str):
        session = manager.get(sid)
        with session.lock:
            return session.step()

    @app.post("/sessions/{sid}/resume")
    def resume(sid: str, body: ResumeIn):
        session = manager.get(sid)
        with session.lock:
            return session.resume_from(body.checkpoint, body.sign_order)

    @app.get("/sessions/{sid}/state")
    def state(sid: str):
        session = manager.get(sid)
        with session.lock:
            return session.digest()

    @app.get("/sessions/{sid}/snapshot")
    def snapshot_view(sid: str):
        session = manager.get(sid)
        with session.lock:
            return session.snapshot_json()

    @app.get("/sessions/{sid}/justification")
    def justification(sid: str, atom: str, sign: str = "+", format: str = "json"):
        session = manager.get(sid)
        with session.lock:
            g = session.justification(atom, sign)
        if format == "dot":
            return PlainTextResponse(egraph_to_dot(g))
        return egraph_to_json(g)

    @app.get("/sessions/{sid}/checkpoints")
    def checkpoints(sid: str):
        session = manager.get(sid)
        with session.lock:
            return {"checkpoints": list(session.checkpoints.keys())}

    @app.get("/sessions/{sid}/models")
    def models(sid: str):
        session = manager.get(sid)
        with session.lock:
            return {"models": [m.to_json() for m in session.engine.models]}

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
