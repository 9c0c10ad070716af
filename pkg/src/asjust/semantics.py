"""Reducts, least models, the well-founded model, and testing oracles.

Two independent routes to the well-founded model are provided: the K/U
alternating fixpoint (`well_founded`) and a rewrite system to normal form
(`normal_form`) whose facts/heads encode the same model.  They are kept
separate on purpose so each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from .program import Atom, Interpretation, PInterpretation, Program, Rule


@dataclass(frozen=True)
class KUPair:
    """One step of the alternating well-founded computation."""

    k: frozenset[Atom]
    u: frozenset[Atom]
    index: int


def tpv(p: Program, s: frozenset[Atom], v: frozenset[Atom]) -> frozenset[Atom]:
    """One application of the immediate-consequence operator relative to v."""
    return frozenset(
        r.head for r in p.rules if r.pos <= s and not (r.neg & v)
    )


def _lfp_tpv(p: Program, v: frozenset[Atom]) -> frozenset[Atom]:
    """Least fixpoint of tpv with v held fixed, by worklist iteration."""
    derived: set[Atom] = set()
    pending = [r for r in p.rules if not (r.neg & v)]
    changed = True
    while changed:
        changed = False
        for r in pending:
            if r.head not in derived and r.pos <= derived:
                derived.add(r.head)
                changed = True
    return frozenset(derived)


def reduct(p: Program, i: PInterpretation) -> Program:
    """Gelfond-Lifschitz reduct: drop rules with a true negated atom, strip NAF."""
    kept = []
    for r in p.rules:
        if r.neg & i.plus:
            continue
        kept.append(Rule(r.head, r.pos, frozenset(), r.index))
    return p.restrict(kept)


def least_model(p: Program) -> frozenset[Atom]:
    """Least Herbrand model of a definite program."""
    for r in p.rules:
        if r.neg:
            raise ValueError(f"program is not definite: rule {r.index} ({r})")
    return _lfp_tpv(p, frozenset())


def is_answer_set(p: Program, i: Interpretation) -> bool:
    """I+ equals the least model of the reduct w.r.t. I (I must be complete)."""
    if not i.is_complete(p):
        raise ValueError("answer-set check requires a complete interpretation")
    return i.plus == least_model(reduct(p, i))


def well_founded(p: Program) -> tuple[Interpretation, list[KUPair]]:
    """Alternating K/U fixpoint; returns the model and the full trace.

    K_0 is the least model of the definite part; each K_i collects atoms
    derivable treating U_{i-1} as the possibly-true set, each U_i the atoms
    derivable treating K_i as surely-true.  Stops at the first repeated pair.
    """
    definite = p.restrict([r for r in p.rules if r.is_definite])
    all_atoms = frozenset(p.atoms)
    k = _lfp_tpv(definite, all_atoms)  # neg is empty everywhere; v irrelevant
    u = _lfp_tpv(p, k)
    trace = [KUPair(k, u, 0)]
    while True:
        k2 = _lfp_tpv(p, u)
        u2 = _lfp_tpv(p, k2)
        trace.append(KUPair(k2, u2, len(trace)))
        if (k2, u2) == (k, u):
            break
        k, u = k2, u2
    return Interpretation(k, all_atoms - u), trace


# --- normal-form rewriting oracle -------------------------------------------


@dataclass(frozen=True)
class NormalFormTrace:
    steps: tuple[tuple[str, str], ...]  # (transformation tag, description)
    result: Program

    def wfs(self) -> Interpretation:
        """Read the well-founded model off the irreducible program."""
        heads = {r.head for r in self.result.rules}
        return Interpretation(
            frozenset(self.result.facts),
            frozenset(a for a in self.result.atoms if a not in heads),
        )


class _WorkRule:
    __slots__ = ("head", "pos", "neg", "index")

    def __init__(self, r: Rule):
        self.head = r.head
        self.pos = set(r.pos)
        self.neg = set(r.neg)
        self.index = r.index

    def freeze(self, index: int) -> Rule:
        return Rule(self.head, frozenset(self.pos), frozenset(self.neg), index)

    def __str__(self):
        return str(self.freeze(self.index))


def _loop_set(rules: list[_WorkRule]) -> frozenset[Atom]:
    """Greatest S such that every rule for an S-atom positively re-enters S."""
    heads = {r.head for r in rules}
    s = set(heads)
    changed = True
    while changed:
        changed = False
        for a in list(s):
            if any(r.head == a and not (r.pos & s) for r in rules):
                s.discard(a)
                changed = True
    return frozenset(s)


def normal_form(p: Program) -> NormalFormTrace:
    """Exhaustively apply the P/N/S/F rewrites, looping in L only at quiescence.

    P: drop ``not b`` when b has no rules      N: drop rules with ``not b``, b a fact
    S: drop positive b when b is a fact        F: drop rules with positive b, b ruleless
    L: drop all rules whose positive body meets the greatest loop set
    """
    work = [_WorkRule(r) for r in p.rules]
    steps: list[tuple[str, str]] = []
    while True:
        heads = {r.head for r in work}
        facts = {r.head for r in work if not r.pos and not r.neg}
        applied = False
        for r in work:
            gone_neg = sorted(b for b in r.neg if b not in heads)
            if gone_neg:
                b = gone_neg[0]
                r.neg.discard(b)
                steps.append(("P", f"rule {r.index}: drop 'not {b.name}' (no rules for it)"))
                applied = True
                break
            hit_neg = sorted(b for b in r.neg if b in facts)
            if hit_neg:
                work.remove(r)
                steps.append(("N", f"rule {r.index}: removed ('not {hit_neg[0].name}' is a fact)"))
                applied = True
                break
            hit_pos = sorted(b for b in r.pos if b in facts)
            if hit_pos:
                r.pos.discard(hit_pos[0])
                steps.append(("S", f"rule {r.index}: drop '{hit_pos[0].name}' (fact)"))
                applied = True
                break
            gone_pos = sorted(b for b in r.pos if b not in heads)
            if gone_pos:
                work.remove(r)
                steps.append(("F", f"rule {r.index}: removed ('{gone_pos[0].name}' has no rules)"))
                applied = True
                break
        if applied:
            continue
        loop = _loop_set(work)
        doomed = [r for r in work if r.pos & loop]
        if loop and doomed:
            for r in doomed:
                work.remove(r)
            names = ",".join(a.name for a in sorted(loop))
            steps.append(("L", f"loop {{{names}}}: removed rules {[r.index for r in doomed]}"))
            continue
        break
    seen: set[tuple] = set()
    rules: list[Rule] = []
    for r in work:
        key = (r.head, frozenset(r.pos), frozenset(r.neg))
        if key not in seen:
            seen.add(key)
            rules.append(r.freeze(len(rules)))
    return NormalFormTrace(tuple(steps), p.restrict(rules))


# --- brute-force enumeration oracle -------------------------------------------


def brute_force_answer_sets(
    p: Program, atom_cap: int = 16
) -> list[Interpretation]:
    """Enumerate all complete interpretations and keep the answer sets.

    Intended as an independent oracle for small programs; candidate order is
    ascending in the I+ bitset (bit i is atom id i).
    """
    n = len(p.atoms)
    if n > atom_cap:
        raise ValueError(f"{n} atoms exceeds the brute-force cap of {atom_cap}")
    rule_bits = [
        (
            1 << r.head.id,
            sum(1 << a.id for a in r.pos),
            sum(1 << a.id for a in r.neg),
        )
        for r in p.rules
    ]
    out = []
    for mask in range(1 << n):
        kept = [(h, pos) for h, pos, neg in rule_bits if not (neg & mask)]
        derived = 0
        changed = True
        while changed:
            changed = False
            for h, pos in kept:
                if not (derived & h) and (pos & derived) == pos:
                    derived |= h
                    changed = True
        if derived == mask:
            plus = frozenset(a for a in p.atoms if mask >> a.id & 1)
            out.append(Interpretation(plus, frozenset(p.atoms) - plus))
    return out
