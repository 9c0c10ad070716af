"""Shared programs and small helpers for the test suite."""

from __future__ import annotations

from asjust import (
    Interpretation,
    Literal,
    Marker,
    PInterpretation,
    Program,
    load_program,
)

# four-rule program with two symmetric answer sets and a definite core
P1_TEXT = "q :- a, not p. p :- a, not q. a :- b. b."

# definite program with one answer set; q has a fact and a derived route
P3_TEXT = "p :- q, r. q. q :- r. r."

# the two-atom even loop
P6_TEXT = "p :- not q. q :- not p."

# six-atom program: even loop over a/b on top of facts, plus a positive cycle
P5_TEXT = "a :- f, not b. b :- e, not a. e. f :- e. d :- c, e. c :- d, f."

# P5 extended with a guarded cycle and an extra NAF atom k
PKW_TEXT = (
    "a :- f, not b. b :- e, not a. e. f :- e. d :- c, e. "
    "c :- d, f, not k. k :- a."
)

# the negative-reduct walkthrough program
PNR_TEXT = "p :- not q. q :- not p. r :- p, s. t :- q, u. s."

# no answer set has p false; propagation runs into a conflict
PC_TEXT = "p :- not q. q :- not p. r :- not p. p :- r."

# the on-line justification walkthrough program
PS5_TEXT = "s :- a, not t. a :- f, not b. b :- e, not a. e. f :- e."

# the Hamiltonian-cycle encoding over the four-vertex example graph
HAM_TEXT = """
vertex(a). vertex(b). vertex(c). vertex(d).
edge(a,b). edge(a,c). edge(b,d). edge(b,c). edge(c,d). edge(d,a).
in(U,V) :- edge(U,V), not nin(U,V).
nin(U,V) :- edge(U,V), not in(U,V).
false :- vertex(U), vertex(V), vertex(W), V != W, in(U,V), in(U,W).
false :- vertex(U), vertex(V), vertex(W), U != V, in(U,W), in(V,W).
reachable(U) :- vertex(U), in(a,U).
reachable(V) :- vertex(V), vertex(U), reachable(U), in(U,V).
false :- vertex(U), U != a, not reachable(U).
"""

HAM_VERTICES = ["a", "b", "c", "d"]
HAM_EDGES = [("a", "b"), ("a", "c"), ("b", "d"), ("b", "c"), ("c", "d"), ("d", "a")]


def p1() -> Program:
    return load_program(P1_TEXT)


def p3() -> Program:
    return load_program(P3_TEXT)


def p5() -> Program:
    return load_program(P5_TEXT)


def p6() -> Program:
    return load_program(P6_TEXT)


def pkw() -> Program:
    return load_program(PKW_TEXT)


def pc() -> Program:
    return load_program(PC_TEXT)


def ps5() -> Program:
    return load_program(PS5_TEXT)


def names(atoms) -> set[str]:
    return {a.name for a in atoms}


def interp(p: Program, plus: str, minus: str = "") -> Interpretation:
    return Interpretation(p.atom_set(plus.split()), p.atom_set(minus.split()))


def pinterp(p: Program, plus: str, minus: str = "") -> PInterpretation:
    return PInterpretation(p.atom_set(plus.split()), p.atom_set(minus.split()))


def lits(p: Program, spec: str) -> frozenset[Literal]:
    """'q not r' -> {q, not r}"""
    out = []
    tokens = spec.split()
    i = 0
    while i < len(tokens):
        if tokens[i] == "not":
            out.append(Literal(p.atom(tokens[i + 1]), True))
            i += 2
        else:
            out.append(Literal(p.atom(tokens[i])))
            i += 1
    return frozenset(out)


def explanations(p: Program, *parts):
    """Build an LCE set from 'assume'/'top'/'bot' markers and literal strings."""
    out = set()
    for part in parts:
        if part in ("assume", "top", "bot"):
            out.add(Marker(part))
        else:
            out.add(lits(p, part))
    return frozenset(out)


def rule_shape(p: Program) -> set[tuple]:
    return {
        (r.head.name, frozenset(a.name for a in r.pos), frozenset(a.name for a in r.neg))
        for r in p.rules
    }
