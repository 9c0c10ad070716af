"""Chronological-backtracking answer-set search built from the AtLeast cases,
the positive-closure AtMost falsification, and a deterministic choice rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .online import Computation, TransitionTag
from .program import Atom, Interpretation, PInterpretation, Program, nant
from .semantics import is_answer_set, well_founded


def _body_false(r, i: PInterpretation) -> bool:
    return bool(r.pos & i.minus) or bool(r.neg & i.plus)


def al_step(
    p: Program, i: PInterpretation
) -> Optional[tuple[PInterpretation, TransitionTag]]:
    """One application of the lowest-numbered applicable AtLeast case.

    Case 1 derives heads of satisfied bodies; case 2 falsifies atoms with no
    unfalsified rule; case 3 forces the body of the single live rule of a true
    atom; case 4 constrains the last open literal of a rule with a false head.
    Returns None at quiescence.
    """
    # case 1
    for r in p.rules:
        if r.head not in i.plus and r.pos <= i.plus and r.neg <= i.minus:
            return i.with_true(r.head), TransitionTag("AL1", r.head, r.index)
    # case 2
    for a in p.atoms:
        if a in i.plus or a in i.minus:
            continue
        if all(_body_false(r, i) for r in p.rules_for(a)):
            return i.with_false(a), TransitionTag("AL2", a)
    # case 3
    for a in sorted(i.plus):
        live = [r for r in p.rules_for(a) if not _body_false(r, i)]
        if len(live) == 1:
            r = live[0]
            if not (r.pos <= i.plus and r.neg <= i.minus):
                new = PInterpretation(i.plus | r.pos, i.minus | r.neg)
                return new, TransitionTag("AL3", a, r.index)
    # case 4
    for r in p.rules:
        if r.head not in i.minus or _body_false(r, i):
            continue
        if r.neg <= i.minus:
            open_pos = r.pos - i.plus
            if len(open_pos) == 1:
                (b,) = open_pos
                return i.with_false(b), TransitionTag("AL4", b, r.index)
        if r.pos <= i.plus:
            open_neg = r.neg - i.minus
            if len(open_neg) == 1:
                (b,) = open_neg
                return i.with_true(b), TransitionTag("AL4", b, r.index)
    return None


def at_most(p: Program, i: PInterpretation) -> PInterpretation:
    """Falsify atoms outside the positive closure seeded with the true side."""
    closure = set(i.plus)
    changed = True
    while changed:
        changed = False
        for r in p.rules:
            if r.head not in closure and r.pos <= closure:
                closure.add(r.head)
                changed = True
    outside = frozenset(a for a in p.atoms if a not in closure)
    if outside <= i.minus:
        return i
    return PInterpretation(i.plus, i.minus | outside)


def expand(
    p: Program,
    s: PInterpretation,
    record: Optional[Computation] = None,
) -> PInterpretation:
    """AtLeast to quiescence, then AtMost, repeated to the joint fixpoint.

    Stops early on a conflict so the conflicting state is observable.
    `record`, when given, receives every changing transition.
    """
    while True:
        while True:
            step = al_step(p, s)
            if step is None:
                break
            s, tag = step
            if record is not None:
                record.extend(tag, s)
            if s.conflict:
                return s
        after = at_most(p, s)
        if after == s:
            return s
        s = after
        if record is not None:
            record.extend(TransitionTag("atmost"), s)


def choose(
    p: Program,
    i: PInterpretation,
    wf: Optional[Interpretation] = None,
    preferred: Sequence[str] = (),
) -> Atom:
    """Smallest-id unknown NAF atom outside the well-founded model; falls back
    to any unknown atom when no such atom remains (non-tight programs)."""
    if wf is None:
        wf, _ = well_founded(p)
    unknown = [a for a in p.atoms if a not in i.plus and a not in i.minus]
    if not unknown:
        raise ValueError("choose requires an incomplete interpretation")
    eligible = [
        a for a in unknown if a in nant(p) and a not in wf.plus and a not in wf.minus
    ]
    pool = eligible or unknown
    for name in preferred:
        for a in pool:
            if a.name == name:
                return a
    return min(pool)


@dataclass
class _Frame:
    atom: Atom
    untried: list[str]
    base_state: PInterpretation
    base_len: int

    def clone(self) -> "_Frame":
        return _Frame(self.atom, list(self.untried), self.base_state, self.base_len)


@dataclass(frozen=True)
class StepEvent:
    kind: str  # 'transition' | 'model' | 'exhausted'
    state: PInterpretation
    tag: Optional[TransitionTag] = None
    model: Optional[Interpretation] = None


class SolverEngine:
    """Stepping search over one program; owns the current p-interpretation,
    the decision stack, and the monotone trace of the current branch."""

    def __init__(
        self,
        program: Program,
        sign_order: str = "tf",
        choice_order: Sequence[str] = (),
    ):
        if sign_order not in ("tf", "ft"):
            raise ValueError("sign_order must be 'tf' or 'ft'")
        self.program = program
        self.sign_order = sign_order
        self.choice_order = tuple(choice_order)
        self.wf, _ = well_founded(program)
        self.current = PInterpretation()
        self.path = Computation()
        self.stack: list[_Frame] = []
        self.models: list[Interpretation] = []
        self.done = False
        self._redo_choice = False
        self._retreat = False  # set after a conflict, a model, or a dead end

    # -- state management -------------------------------------------------

    def clone(self) -> "SolverEngine":
        new = object.__new__(SolverEngine)
        new.program = self.program
        new.sign_order = self.sign_order
        new.choice_order = self.choice_order
        new.wf = self.wf
        new.current = self.current
        new.path = self.path.copy()
        new.stack = [f.clone() for f in self.stack]
        new.models = list(self.models)
        new.done = self.done
        new._redo_choice = self._redo_choice
        new._retreat = self._retreat
        return new

    def _signs(self) -> list[str]:
        return ["+", "-"] if self.sign_order == "tf" else ["-", "+"]

    def _apply_choice(self, frame: _Frame) -> StepEvent:
        sign = frame.untried.pop(0)
        if sign == "+":
            self.current = self.current.with_true(frame.atom)
        else:
            self.current = self.current.with_false(frame.atom)
        tag = TransitionTag("choice", frame.atom, sign=sign)
        self.path.extend(tag, self.current)
        return StepEvent("transition", self.current, tag)

    def _backtrack(self) -> StepEvent:
        self._retreat = False
        while self.stack and not self.stack[-1].untried:
            self.stack.pop()
        if not self.stack:
            self.done = True
            return StepEvent("exhausted", self.current)
        frame = self.stack[-1]
        self.current = frame.base_state
        del self.path.tags[frame.base_len :]
        del self.path.states[frame.base_len + 1 :]
        self._redo_choice = True
        return StepEvent(
            "transition", self.current, TransitionTag("backtrack", frame.atom)
        )

    # -- the single-transition step ----------------------------------------

    def step(self) -> StepEvent:
        """Apply exactly one transition (or report a model / exhaustion)."""
        if self.done:
            raise RuntimeError("search already exhausted")
        if self._retreat:
            return self._backtrack()
        if self._redo_choice:
            self._redo_choice = False
            return self._apply_choice(self.stack[-1])

        step = al_step(self.program, self.current)
        if step is not None:
            self.current, tag = step
            self.path.extend(tag, self.current)
            if self.current.conflict:
                self._retreat = True
            return StepEvent("transition", self.current, tag)
        after = at_most(self.program, self.current)
        if after != self.current:
            self.current = after
            tag = TransitionTag("atmost")
            self.path.extend(tag, self.current)
            return StepEvent("transition", self.current, tag)

        # expand fixpoint: judge the state
        if self.current.is_complete(self.program):
            m = Interpretation(self.current.plus, self.current.minus)
            self._retreat = True
            if is_answer_set(self.program, m):
                self.models.append(m)
                return StepEvent("model", self.current, model=m)
            return self._backtrack()
        atom = choose(self.program, self.current, self.wf, self.choice_order)
        frame = _Frame(atom, self._signs(), self.current, len(self.path.tags))
        self.stack.append(frame)
        return self._apply_choice(frame)


def solve(
    p: Program,
    max_models: Optional[int] = None,
    sign_order: str = "tf",
    trace: bool = False,
    choice_order: Sequence[str] = (),
) -> Iterator[tuple[Interpretation, Optional[Computation]]]:
    """Enumerate the answer sets of p, each with its complete computation
    when tracing is on."""
    engine = SolverEngine(p, sign_order, choice_order)
    found = 0
    while not engine.done:
        event = engine.step()
        if event.kind == "model":
            yield event.model, engine.path.copy() if trace else None
            found += 1
            if max_models is not None and found >= max_models:
                return


# --- Smodels-computation validity -------------------------------------------


def _al_case_applicable(p: Program, i: PInterpretation, case: int) -> bool:
    if case == 1:
        return any(
            r.head not in i.plus and r.pos <= i.plus and r.neg <= i.minus
            for r in p.rules
        )
    if case == 2:
        return any(
            a not in i.plus
            and a not in i.minus
            and all(_body_false(r, i) for r in p.rules_for(a))
            for a in p.atoms
        )
    if case == 3:
        for a in i.plus:
            live = [r for r in p.rules_for(a) if not _body_false(r, i)]
            if len(live) == 1 and not (
                live[0].pos <= i.plus and live[0].neg <= i.minus
            ):
                return True
        return False
    for r in p.rules:
        if r.head not in i.minus or _body_false(r, i):
            continue
        if r.neg <= i.minus and len(r.pos - i.plus) == 1:
            return True
        if r.pos <= i.plus and len(r.neg - i.minus) == 1:
            return True
    return False


def _al_case_yields(
    p: Program, i: PInterpretation, case: int, result: PInterpretation
) -> bool:
    """Some witness rule/atom of this case produces exactly `result`."""
    if case == 1:
        return any(
            r.head not in i.plus
            and r.pos <= i.plus
            and r.neg <= i.minus
            and i.with_true(r.head) == result
            for r in p.rules
        )
    if case == 2:
        return any(
            a not in i.plus
            and a not in i.minus
            and all(_body_false(r, i) for r in p.rules_for(a))
            and i.with_false(a) == result
            for a in p.atoms
        )
    if case == 3:
        for a in i.plus:
            live = [r for r in p.rules_for(a) if not _body_false(r, i)]
            if len(live) == 1:
                r = live[0]
                if PInterpretation(i.plus | r.pos, i.minus | r.neg) == result:
                    return True
        return False
    for r in p.rules:
        if r.head not in i.minus or _body_false(r, i):
            continue
        if r.neg <= i.minus and len(r.pos - i.plus) == 1:
            (b,) = r.pos - i.plus
            if i.with_false(b) == result:
                return True
        if r.pos <= i.plus and len(r.neg - i.minus) == 1:
            (b,) = r.neg - i.minus
            if i.with_true(b) == result:
                return True
    return False


def smodels_computation_violations(p: Program, c: Computation) -> list[str]:
    """Checks the AL-purity/atmost/choice shape and every step's validity."""
    problems: list[str] = []
    if not c.states or c.states[0] != PInterpretation():
        return ["computation must start at the empty p-interpretation"]
    if len(c.tags) != len(c.states) - 1:
        return ["one tag per transition required"]
    wf, _ = well_founded(p)
    eligible = nant(p) - (wf.plus | wf.minus)
    quiescence_points = []
    for idx, tag in enumerate(c.tags):
        before, after = c.states[idx], c.states[idx + 1]
        if tag.kind == "backtrack":
            problems.append(f"step {idx}: backtrack inside an Smodels computation")
            continue
        if tag.kind.startswith("AL"):
            case = int(tag.kind[2])
            for lower in range(1, case):
                if _al_case_applicable(p, before, lower):
                    problems.append(
                        f"step {idx}: AL{case} applied but AL{lower} was applicable"
                    )
            if not _al_case_yields(p, before, case, after):
                problems.append(f"step {idx}: state is not an AL{case} result")
        elif tag.kind == "atmost":
            if after == before:
                problems.append(f"step {idx}: no-op atmost transition")
            if at_most(p, before) != after:
                problems.append(f"step {idx}: state is not the AtMost result")
            if al_step(p, before) is not None:
                problems.append(f"step {idx}: atmost before AtLeast quiescence")
        elif tag.kind == "choice":
            quiescence_points.append(idx)
            added_plus = after.plus - before.plus
            added_minus = after.minus - before.minus
            added = added_plus | added_minus
            if len(added) != 1 or (added_plus and added_minus):
                problems.append(f"step {idx}: choice must set exactly one atom")
                continue
            (a,) = added
            if a in before.plus or a in before.minus:
                problems.append(f"step {idx}: chosen atom {a.name} was not unknown")
            unknown_eligible = [
                x
                for x in eligible
                if x not in before.plus and x not in before.minus
            ]
            if a not in eligible and unknown_eligible:
                problems.append(
                    f"step {idx}: chose {a.name} while NAF atoms were available"
                )
    quiescence_points.append(len(c.tags))
    for idx in quiescence_points:
        state = c.states[idx]
        if al_step(p, state) is not None:
            problems.append(f"state {idx}: AtLeast not at quiescence")
        if at_most(p, state) != state:
            problems.append(f"state {idx}: AtMost not at a fixpoint")
    return problems


def check_smodels_computation(p: Program, c: Computation) -> bool:
    return not smodels_computation_violations(p, c)
