"""Snapshots of partial computations: the justifiable sub-interpretation D and
one e-graph per atom, split into off-line (derivable) and on-line (guessed)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .egraph import ASSUME_NODE, EGraph, Edge, ENode, neg_node, pos_node
from .justify import (
    Sigma,
    build_sigma,
    greatest_cycle,
    offline_violations,
    tentative_assumptions,
)
from .program import Atom, Interpretation, PInterpretation, Program
from .semantics import is_answer_set, well_founded

cycles_greatest = greatest_cycle

_TAG_KINDS = ("AL1", "AL2", "AL3", "AL4", "atmost", "choice", "backtrack")


@dataclass(frozen=True)
class TransitionTag:
    """Label of one computation step; atom/rule/sign are kind-specific."""

    kind: str
    atom: Optional[Atom] = None
    rule: Optional[int] = None
    sign: Optional[str] = None  # choice only: '+' or '-'

    def __post_init__(self):
        if self.kind not in _TAG_KINDS:
            raise ValueError(f"unknown transition kind {self.kind!r}")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "atom": self.atom.name if self.atom else None,
            "rule": self.rule,
            "sign": self.sign,
        }

    def __str__(self):
        bits = [self.kind]
        if self.atom is not None:
            bits.append(self.atom.name)
        if self.sign is not None:
            bits.append(self.sign)
        if self.rule is not None:
            bits.append(f"r{self.rule}")
        return ":".join(bits)


@dataclass
class Computation:
    """States from the empty p-interpretation onward, one tag per step."""

    states: list[PInterpretation] = field(default_factory=lambda: [PInterpretation()])
    tags: list[TransitionTag] = field(default_factory=list)

    def extend(self, tag: TransitionTag, state: PInterpretation) -> None:
        self.tags.append(tag)
        self.states.append(state)

    def copy(self) -> "Computation":
        return Computation(list(self.states), list(self.tags))

    def to_json(self) -> list[dict]:
        out = [{"tag": None, "state": self.states[0].to_json()}]
        for tag, state in zip(self.tags, self.states[1:]):
            out.append({"tag": tag.to_json(), "state": state.to_json()})
        return out


def gamma_delta(
    p: Program,
    j: PInterpretation,
    wf: Optional[Interpretation] = None,
    warm: Optional[PInterpretation] = None,
) -> PInterpretation:
    """Fixpoint of the justifiable-true/justifiable-false operators at j.

    `warm` may carry the fixpoint of an earlier, information-smaller state;
    monotonicity makes seeding from it safe.
    """
    if wf is None:
        wf, _ = well_founded(p)
    ta = tentative_assumptions(p, j, wf)
    gamma = set(p.facts & j.plus)
    delta = set(ta)
    delta.update(a for a in j.minus if not p.rules_for(a))
    delta.update(greatest_cycle(p, PInterpretation(), j.minus))
    if warm is not None:
        gamma |= warm.plus & j.plus
        delta |= warm.minus & j.minus
    changed = True
    while changed:
        changed = False
        i_cur = PInterpretation(frozenset(gamma), frozenset(delta))
        for a in j.plus - gamma:
            if any(
                r.pos <= i_cur.plus and r.neg <= i_cur.minus
                for r in p.rules_for(a)
            ):
                gamma.add(a)
                changed = True
        for a in j.minus - delta:
            fam = [
                (r.pos & i_cur.minus) or (r.neg & i_cur.plus)
                for r in p.rules_for(a)
            ]
            if all(fam):
                delta.add(a)
                changed = True
        for a in greatest_cycle(p, i_cur, j.minus) - delta:
            delta.add(a)
            changed = True
    return PInterpretation(frozenset(gamma), frozenset(delta))


@dataclass(frozen=True)
class Snapshot:
    """Per-state justification record: off-line graphs for D, assume graphs
    for the rest of the state."""

    off: dict[ENode, EGraph]
    on: dict[ENode, EGraph]
    d: PInterpretation

    def graph_for(self, node: ENode) -> Optional[EGraph]:
        if node in self.off:
            return self.off[node]
        return self.on.get(node)

    def edge_view(self) -> tuple[frozenset, frozenset]:
        """(off edges, on edges) as label triples, for order-free comparison."""
        off = frozenset(t for g in self.off.values() for t in g.edge_labels())
        on = frozenset(t for g in self.on.values() for t in g.edge_labels())
        return off, on

    def to_json(self) -> dict:
        from .egraph import egraph_to_json

        def key(n: ENode) -> str:
            return f"{n.atom.name}@{'+' if n.kind.value == 'pos' else '-'}"

        return {
            "d": self.d.to_json(),
            "off": {key(n): egraph_to_json(g) for n, g in sorted(self.off.items())},
            "on": {key(n): egraph_to_json(g) for n, g in sorted(self.on.items())},
        }


def _assume_graph(node: ENode) -> EGraph:
    sign = "+" if node.kind.value == "pos" else "-"
    return EGraph.from_edges([Edge(node, ASSUME_NODE, sign)], root=node)


def _snapshot_from_sigma(sigma: Sigma, j: PInterpretation) -> Snapshot:
    off: dict[ENode, EGraph] = {}
    on: dict[ENode, EGraph] = {}
    for a in sorted(sigma.gamma):
        off[pos_node(a)] = sigma.justification(pos_node(a))
    for a in sorted(sigma.delta):
        off[neg_node(a)] = sigma.justification(neg_node(a))
    for a in sorted(j.plus - sigma.gamma):
        on[pos_node(a)] = _assume_graph(pos_node(a))
    for a in sorted(j.minus - sigma.delta):
        on[neg_node(a)] = _assume_graph(neg_node(a))
    return Snapshot(off, on, PInterpretation(sigma.gamma, sigma.delta))


def snapshot(
    p: Program, j: PInterpretation, wf: Optional[Interpretation] = None
) -> Snapshot:
    """Self-contained snapshot of one computation state."""
    if wf is None:
        wf, _ = well_founded(p)
    sigma = build_sigma(p, j, tentative_assumptions(p, j, wf))
    return _snapshot_from_sigma(sigma, j)


class OnlineJustifier:
    """Single-owner incremental snapshot builder for one computation.

    The justifiable sets are carried forward monotonically between states;
    graphs are rebuilt from the layered construction each step so that the
    incremental result coincides with `snapshot` recomputed from scratch.
    Choices made on the true side keep D fixed and only add an assume graph,
    so that step is taken without recomputation.
    """

    def __init__(self, program: Program):
        self.program = program
        self.wf, _ = well_founded(program)
        self.state = PInterpretation()
        self.current = snapshot(program, self.state, self.wf)
        self._checkpoints: list[tuple[PInterpretation, Snapshot]] = []

    def clone(self) -> "OnlineJustifier":
        new = object.__new__(OnlineJustifier)
        new.program = self.program
        new.wf = self.wf
        new.state = self.state
        new.current = self.current
        new._checkpoints = list(self._checkpoints)
        return new

    def observe(self, tag: TransitionTag, state: PInterpretation) -> Snapshot:
        """Advance to `state` reached by `tag` and return its snapshot."""
        if tag.kind == "choice":
            self._checkpoints.append((self.state, self.current))
            if tag.sign == "+" and self._d_unchanged(state):
                # a guess at an expand fixpoint justifies nothing new
                node = pos_node(tag.atom)
                on = dict(self.current.on)
                on[node] = _assume_graph(node)
                self.state = state
                self.current = Snapshot(dict(self.current.off), on, self.current.d)
                return self.current
        elif tag.kind == "backtrack":
            restored = None
            while self._checkpoints:
                prev_state, prev_snap = self._checkpoints.pop()
                if prev_state == state:
                    restored = prev_snap
                    break
            self.state = state
            self.current = restored or snapshot(self.program, state, self.wf)
            return self.current
        self.state = state
        self.current = snapshot(self.program, state, self.wf)
        return self.current

    def _d_unchanged(self, state: PInterpretation) -> bool:
        refreshed = gamma_delta(self.program, state, self.wf, warm=self.current.d)
        return refreshed == self.current.d


def online_justification(p: Program, c: Computation) -> list[Snapshot]:
    """One snapshot per computation state (Def's sequence form)."""
    _check_computation_shape(p, c)
    justifier = OnlineJustifier(p)
    out = [justifier.current]
    for tag, state in zip(c.tags, c.states[1:]):
        out.append(justifier.observe(tag, state))
    return out


def _check_computation_shape(p: Program, c: Computation) -> None:
    if not c.states or c.states[0] != PInterpretation():
        raise ValueError("computations start at the empty p-interpretation")
    if len(c.tags) != len(c.states) - 1:
        raise ValueError("need exactly one transition tag per step")
    for i, tag in enumerate(c.tags):
        if tag.kind != "backtrack" and not c.states[i].leq(c.states[i + 1]):
            raise ValueError(f"non-monotone step {i} without a backtrack tag")


def final_snapshot_is_offline(p: Program, c: Computation) -> bool:
    """For a complete computation: the last snapshot's graphs are off-line
    justifications w.r.t. the computed answer set, and nothing is guessed."""
    last = c.states[-1]
    if last.conflict or not last.is_complete(p):
        raise ValueError("computation is not complete")
    m = Interpretation(last.plus, last.minus)
    if not is_answer_set(p, m):
        raise ValueError("computation does not end in an answer set")
    snap = online_justification(p, c)[-1]
    if snap.on:
        return False
    ta = tentative_assumptions(p, m)
    return all(
        not offline_violations(p, g, node, m, ta)
        for node, g in snap.off.items()
    )
