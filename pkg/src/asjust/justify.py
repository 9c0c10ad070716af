"""Local consistent explanations, assumption sets, and off-line justifications.

The builder follows the layered dependency-graph construction: facts, ruleless
atoms, assumed atoms and unfounded cycles seed layer 0; each later layer adds
one supporting rule per newly-true atom and one minimal falsifying set per
newly-false atom, always drawing on strictly earlier layers for true atoms so
the result is safe (no positive cycle through a true node).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .egraph import (
    ASSUME_NODE,
    BOT_NODE,
    EGraph,
    ENode,
    Edge,
    Marker,
    TOP_NODE,
    egraph_violations,
    is_safe,
    neg_node,
    pos_node,
    subgraph,
    support,
)
from .program import Atom, Interpretation, Literal, PInterpretation, Program, Rule, nant
from .semantics import is_answer_set, well_founded

Explanation = Union[Marker, frozenset[Literal]]


class ExplanationCapError(Exception):
    """Raised when full LCE enumeration would exceed the configured cap."""


def _lit_key(lit: Literal) -> tuple[int, bool]:
    return (lit.atom.id, lit.negated)


def falsifiers(
    p: Program, b: Atom, j: PInterpretation, u: frozenset[Atom]
) -> list[tuple[Rule, frozenset[Literal]]]:
    """Per-rule maximal falsifying sets S_r: false positive atoms of the body
    plus NAF literals whose atom is true, relative to (j, u)."""
    out = []
    false_side = j.minus | u
    for r in p.rules_for(b):
        s = {Literal(a) for a in r.pos & false_side} | {
            Literal(a, True) for a in r.neg & j.plus
        }
        out.append((r, frozenset(s)))
    return out


def lce_pos(
    p: Program, b: Atom, j: PInterpretation, u: frozenset[Atom] = frozenset()
) -> frozenset[Explanation]:
    """All local consistent explanations of b being true w.r.t. (j, u)."""
    if b not in j.plus:
        return frozenset()
    false_side = j.minus | u
    out: set[Explanation] = {Marker.ASSUME}
    for r in p.rules_for(b):
        if r.pos <= j.plus and r.neg <= false_side:
            out.add(Marker.TOP if r.is_fact else r.body())
    return frozenset(out)


def _hits_all(s: Iterable[Literal], family: Sequence[frozenset[Literal]]) -> bool:
    s = set(s)
    return all(s & f for f in family)


def _is_irredundant(s: frozenset[Literal], family: Sequence[frozenset[Literal]]) -> bool:
    return all(not _hits_all(s - {lit}, family) for lit in s)


def _prune_hitting(
    s: set[Literal], family: Sequence[frozenset[Literal]]
) -> frozenset[Literal]:
    """Drop redundant elements (largest key first) until irredundant."""
    for lit in sorted(s, key=_lit_key, reverse=True):
        if _hits_all(s - {lit}, family):
            s.discard(lit)
    return frozenset(s)


def _minimal_hitting_sets(
    family: Sequence[frozenset[Literal]], cap: int
) -> list[frozenset[Literal]]:
    """All subset-minimal hitting sets; raises beyond the cap."""
    if any(not f for f in family):
        return []
    found: set[frozenset[Literal]] = set()

    def rec(current: frozenset[Literal]):
        if len(found) > 8 * cap:
            raise ExplanationCapError(f"more than {cap} negative LCEs")
        unhit = [f for f in family if not (current & f)]
        if not unhit:
            found.add(current)
            return
        for lit in sorted(unhit[0], key=_lit_key):
            rec(current | {lit})

    rec(frozenset())
    minimal = [
        s for s in found if not any(t < s for t in found)
    ]
    if len(minimal) > cap:
        raise ExplanationCapError(f"more than {cap} negative LCEs")
    return sorted(minimal, key=lambda s: sorted(map(_lit_key, s)))


def lce_neg(
    p: Program,
    b: Atom,
    j: PInterpretation,
    u: frozenset[Atom] = frozenset(),
    cap: int = 64,
) -> frozenset[Explanation]:
    """All local consistent explanations of b being false w.r.t. (j, u)."""
    if b not in (j.minus | u):
        return frozenset()
    rules = p.rules_for(b)
    if not rules:
        return frozenset({Marker.ASSUME, Marker.BOT})
    family = [s for _, s in falsifiers(p, b, j, u)]
    out: set[Explanation] = {Marker.ASSUME}
    out.update(_minimal_hitting_sets(family, cap))
    return frozenset(out)


def lce_neg_single(
    p: Program, b: Atom, j: PInterpretation, u: frozenset[Atom] = frozenset()
) -> Optional[Explanation]:
    """One non-assume negative LCE via the greedy rule scan, or None.

    The greedy pick takes the smallest-keyed falsifier of each not-yet-hit
    rule; a final pruning pass restores subset minimality.
    """
    if b not in (j.minus | u):
        return None
    fam = falsifiers(p, b, j, u)
    if not fam:
        return Marker.BOT
    family = [s for _, s in fam]
    if any(not s for s in family):
        return None
    chosen: set[Literal] = set()
    for _, s in fam:
        if not (chosen & s):
            chosen.add(min(s, key=_lit_key))
    return _prune_hitting(chosen, family)


def is_negative_lce(
    p: Program,
    b: Atom,
    s: Explanation,
    j: PInterpretation,
    u: frozenset[Atom],
) -> bool:
    """Membership test for the negative-LCE set, without enumeration."""
    if b not in (j.minus | u):
        return False
    if s is Marker.ASSUME:
        return True
    if s is Marker.TOP:
        return False
    rules = p.rules_for(b)
    if s is Marker.BOT:
        return not rules
    false_side = j.minus | u
    for lit in s:
        if lit.negated and lit.atom not in j.plus:
            return False
        if not lit.negated and lit.atom not in false_side:
            return False
    family = [fs for _, fs in falsifiers(p, b, j, u)]
    return _hits_all(s, family) and _is_irredundant(s, family)


def is_positive_lce(
    p: Program,
    b: Atom,
    s: Explanation,
    j: PInterpretation,
    u: frozenset[Atom],
) -> bool:
    if b not in j.plus:
        return False
    if s is Marker.ASSUME:
        return True
    if s is Marker.BOT:
        return False
    false_side = j.minus | u
    if s is Marker.TOP:
        return any(r.is_fact for r in p.rules_for(b))
    for lit in s:
        if lit.negated and lit.atom not in false_side:
            return False
        if not lit.negated and lit.atom not in j.plus:
            return False
    return any(r.body() == s and not r.is_fact for r in p.rules_for(b))


# --- assumptions ---------------------------------------------------------------


@dataclass(frozen=True)
class AssumptionSet:
    atoms: frozenset[Atom]
    minimal: bool = False

    def __str__(self):
        return "{" + ",".join(a.name for a in sorted(self.atoms)) + "}"


def tentative_assumptions(
    p: Program, m: PInterpretation, wf: Optional[Interpretation] = None
) -> frozenset[Atom]:
    """NAF atoms false in m whose value the well-founded model leaves open."""
    if wf is None:
        wf, _ = well_founded(p)
    return frozenset(nant(p) & m.minus - (wf.plus | wf.minus))


def negative_reduct(p: Program, u: Iterable[Atom]) -> Program:
    """p without the rules whose head lies in u (forces u false)."""
    u = frozenset(u)
    return p.restrict([r for r in p.rules if r.head not in u])


def _as_atom_set(u) -> frozenset[Atom]:
    if isinstance(u, AssumptionSet):
        return u.atoms
    return frozenset(u)


def is_assumption(
    p: Program,
    m: Interpretation,
    u,
    wf: Optional[Interpretation] = None,
) -> bool:
    """u reconstructs m: the well-founded model of the negative reduct is m."""
    if not is_answer_set(p, m):
        raise ValueError("assumptions are defined relative to an answer set")
    atoms = _as_atom_set(u)
    ta = tentative_assumptions(p, m, wf)
    if not atoms <= ta:
        extra = ",".join(a.name for a in sorted(atoms - ta))
        raise ValueError(f"not tentative assumptions: {{{extra}}}")
    wf_nr, _ = well_founded(negative_reduct(p, atoms))
    return wf_nr == Interpretation(m.plus, m.minus)


def minimal_assumptions(
    p: Program, m: Interpretation, cap: int = 20
) -> frozenset[AssumptionSet]:
    """All subset-minimal assumptions, by cardinality-ordered subset search."""
    import itertools

    if not is_answer_set(p, m):
        raise ValueError("assumptions are defined relative to an answer set")
    ta = sorted(tentative_assumptions(p, m))
    if len(ta) > cap:
        raise ValueError(f"|TA| = {len(ta)} exceeds the search cap {cap}")
    found: list[frozenset[Atom]] = []
    for k in range(len(ta) + 1):
        for combo in itertools.combinations(ta, k):
            cand = frozenset(combo)
            if any(prev <= cand for prev in found):
                continue
            wf_nr, _ = well_founded(negative_reduct(p, cand))
            if wf_nr == Interpretation(m.plus, m.minus):
                found.append(cand)
    return frozenset(AssumptionSet(c, minimal=True) for c in found)


# --- the layered justification builder ------------------------------------------


def greatest_cycle(
    p: Program, i: PInterpretation, within: Iterable[Atom]
) -> frozenset[Atom]:
    """Greatest S inside `within` whose atoms only have rules that i falsifies
    or that positively depend back into S (union of all cycles w.r.t. i)."""
    s = set(within)
    changed = True
    while changed:
        changed = False
        for a in sorted(s):
            for r in p.rules_for(a):
                falsified = (r.pos & i.minus) or (r.neg & i.plus)
                if not falsified and not (r.pos & s):
                    s.discard(a)
                    changed = True
                    break
    return frozenset(s)


@dataclass
class Sigma:
    """Union dependency graph with exactly one support per justified node."""

    program: Program
    j: PInterpretation
    u: frozenset[Atom]
    gamma: frozenset[Atom]
    delta: frozenset[Atom]
    supports: dict[ENode, tuple[Edge, ...]]
    _graph: Optional[EGraph] = None

    def graph(self) -> EGraph:
        if self._graph is None:
            edges = [e for es in self.supports.values() for e in es]
            self._graph = EGraph.from_edges(edges)
        return self._graph

    def justification(self, target: ENode) -> EGraph:
        if target not in self.supports:
            raise KeyError(f"no justification built for {target}")
        return subgraph(target, self.graph())


def _rule_satisfied(r: Rule, i: PInterpretation) -> bool:
    return r.pos <= i.plus and r.neg <= i.minus


def _neg_support_edges(a: Atom, lits: frozenset[Literal]) -> tuple[Edge, ...]:
    edges = []
    for lit in sorted(lits, key=_lit_key):
        if lit.negated:
            edges.append(Edge(neg_node(a), pos_node(lit.atom), "-"))
        else:
            edges.append(Edge(neg_node(a), neg_node(lit.atom), "+"))
    return tuple(edges)


def build_sigma(p: Program, j: PInterpretation, u) -> Sigma:
    """Layered construction of one e-graph per justifiable atom of j.

    Atoms of u are assumed false outright; everything else is explained from
    strictly earlier layers (true atoms) or falsifier sets and unfounded-cycle
    membership (false atoms).
    """
    u = _as_atom_set(u)
    supports: dict[ENode, tuple[Edge, ...]] = {}
    gamma: set[Atom] = set()
    delta: set[Atom] = set()

    def full_family(a: Atom) -> list[frozenset[Literal]]:
        return [s for _, s in falsifiers(p, a, j, u)]

    # layer 0: facts, ruleless atoms, assumptions, unfounded cycles
    for a in sorted(p.facts & j.plus):
        gamma.add(a)
        supports[pos_node(a)] = (Edge(pos_node(a), TOP_NODE, "+"),)
    cycle0 = greatest_cycle(p, PInterpretation(), j.minus)
    for a in sorted(j.minus | u):
        if not p.rules_for(a):
            delta.add(a)
            supports[neg_node(a)] = (Edge(neg_node(a), BOT_NODE, "-"),)
        elif a in u:
            delta.add(a)
            supports[neg_node(a)] = (Edge(neg_node(a), ASSUME_NODE, "-"),)
    for a in sorted(cycle0 - delta):
        chosen = {
            Literal(min(r.pos & cycle0, key=lambda x: x.id))
            for r in p.rules_for(a)
        }
        lits = _prune_hitting(chosen, full_family(a))
        delta.add(a)
        supports[neg_node(a)] = _neg_support_edges(a, lits)

    # later layers: one rule per new true atom, one falsifying set per new false
    while True:
        i_cur = PInterpretation(frozenset(gamma), frozenset(delta))
        new_gamma: dict[Atom, Rule] = {}
        for a in sorted(j.plus - gamma):
            for r in p.rules_for(a):
                if _rule_satisfied(r, i_cur):
                    new_gamma[a] = r
                    break
        new_delta: dict[Atom, frozenset[Literal]] = {}
        cyc = greatest_cycle(p, i_cur, j.minus)
        for a in sorted(j.minus - delta):
            fam_layer = falsifiers(p, a, i_cur, frozenset())
            full = full_family(a)
            chosen: set[Literal] = set()
            if all(s for _, s in fam_layer):
                for (_, s), s_full in zip(fam_layer, full):
                    if not (chosen & s_full):
                        chosen.add(min(s, key=_lit_key))
            elif a in cyc:
                # rules the layer cannot falsify positively re-enter the cycle
                for (r, s), s_full in zip(fam_layer, full):
                    if chosen & s_full:
                        continue
                    if s:
                        chosen.add(min(s, key=_lit_key))
                    else:
                        chosen.add(Literal(min(r.pos & cyc, key=lambda x: x.id)))
            else:
                continue
            new_delta[a] = _prune_hitting(chosen, full)
        if not new_gamma and not new_delta:
            break
        for a, r in new_gamma.items():
            gamma.add(a)
            edges = [Edge(pos_node(a), pos_node(b), "+") for b in sorted(r.pos)]
            edges += [Edge(pos_node(a), neg_node(b), "-") for b in sorted(r.neg)]
            supports[pos_node(a)] = tuple(edges)
        for a, lits in new_delta.items():
            delta.add(a)
            supports[neg_node(a)] = _neg_support_edges(a, lits)

    return Sigma(p, j, u, frozenset(gamma), frozenset(delta), supports)


def build_offline_justification(
    p: Program, m: Interpretation, u, target: ENode
) -> EGraph:
    """Justification of one annotated atom w.r.t. an answer set and a validated
    assumption set; the result is offline-valid and free of negative cycles
    when u covers the tentative assumptions."""
    atoms = _as_atom_set(u)
    if not is_assumption(p, m, atoms):
        raise ValueError("u is not an assumption w.r.t. m")
    if target.atom is None or p.try_atom(target.atom.name) != target.atom:
        raise ValueError(f"target {target} is not an atom of the program")
    sigma = build_sigma(p, m, atoms)
    return sigma.justification(target)


# --- validators ------------------------------------------------------------------


def ju_based_violations(
    p: Program, g: EGraph, b: ENode, j: PInterpretation, u
) -> list[str]:
    """Relevance + correctness checks on top of the structural e-graph ones."""
    u = _as_atom_set(u)
    problems = egraph_violations(g)
    if b not in g.nodes:
        problems.append(f"root {b} is not a node")
        return problems
    reached = {b}
    frontier = [b]
    while frontier:
        n = frontier.pop()
        for e in g.outgoing(n):
            if e.dst not in reached:
                reached.add(e.dst)
                frontier.append(e.dst)
    for n in sorted(g.nodes - reached):
        problems.append(f"node {n} unreachable from {b}")
    for n in sorted(g.nodes):
        if not n.is_annotated or n not in {e.src for e in g.edges}:
            continue
        s = support(n, g)
        if n.kind.value == "pos":
            ok = is_positive_lce(p, n.atom, s, j, u)
        else:
            ok = is_negative_lce(p, n.atom, s, j, u)
        if not ok:
            shown = str(s) if isinstance(s, Marker) else "{" + ",".join(
                str(x) for x in sorted(s, key=_lit_key)
            ) + "}"
            problems.append(f"support of {n} is not an LCE: {shown}")
    return problems


def validate_ju_based(
    p: Program, g: EGraph, b: ENode, j: PInterpretation, u
) -> bool:
    return not ju_based_violations(p, g, b, j, u)


def offline_violations(
    p: Program, g: EGraph, b: ENode, j: PInterpretation, u
) -> list[str]:
    u = _as_atom_set(u)
    problems = ju_based_violations(p, g, b, j, u)
    for e in sorted(g.edges):
        if e.src.kind.value == "pos" and e.dst == ASSUME_NODE:
            problems.append(f"true atom treated as assumption: {e}")
    for n in sorted(g.nodes):
        if n.kind.value != "neg":
            continue
        assumed = Edge(n, ASSUME_NODE, "-") in g.edges
        if assumed and n.atom not in u:
            problems.append(f"{n} assumed but {n.atom.name} is not in U")
        if not assumed and n.atom in u:
            problems.append(f"{n.atom.name} is in U but {n} is not assumed")
    if not is_safe(g):
        problems.append("graph has a positive cycle through a true atom")
    return problems


def validate_offline(
    p: Program, g: EGraph, b: ENode, j: PInterpretation, u
) -> bool:
    return not offline_violations(p, g, b, j, u)
