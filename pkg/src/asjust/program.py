"""Ground normal logic programs: parsing, grounding, and basic predicates.

The input language is a small lparse-like fragment: rules ``h :- b1, ..., bn.``
where each body element is an atom, a NAF literal ``not a``, or an inequality
guard ``X != Y`` that is evaluated away at grounding time.  Identifiers start
lowercase, variables start uppercase, ``%`` begins a comment.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union


class ParseError(Exception):
    """Syntax error with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class GroundingError(Exception):
    """Raised for rules that cannot be safely grounded."""


@dataclass(frozen=True, order=True)
class Atom:
    """Interned ground atom; ids are dense and unique within one Program."""

    id: int
    name: str

    def __repr__(self):
        return f"Atom({self.id}, {self.name!r})"

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or its negation-as-failure form ``not atom``."""

    atom: Atom
    negated: bool = False

    def __str__(self):
        return f"not {self.atom.name}" if self.negated else self.atom.name


@dataclass(frozen=True)
class Rule:
    head: Atom
    pos: frozenset[Atom]
    neg: frozenset[Atom]
    index: int

    def body(self) -> frozenset[Literal]:
        return frozenset(
            {Literal(a) for a in self.pos} | {Literal(a, True) for a in self.neg}
        )

    @property
    def is_fact(self) -> bool:
        return not self.pos and not self.neg

    @property
    def is_definite(self) -> bool:
        return not self.neg

    def __str__(self):
        if self.is_fact:
            return f"{self.head.name}."
        parts = [a.name for a in sorted(self.pos)] + [
            f"not {a.name}" for a in sorted(self.neg)
        ]
        return f"{self.head.name} :- {', '.join(parts)}."


class Program:
    """Immutable ground program over an interned atom table."""

    def __init__(self, atoms: Iterable[Atom], rules: Iterable[Rule]):
        self.atoms: tuple[Atom, ...] = tuple(atoms)
        self.rules: tuple[Rule, ...] = tuple(rules)
        self._by_name = {a.name: a for a in self.atoms}
        by_head: dict[Atom, list[Rule]] = {a: [] for a in self.atoms}
        for r in self.rules:
            by_head[r.head].append(r)
        self._by_head = {a: tuple(rs) for a, rs in by_head.items()}
        self.facts: frozenset[Atom] = frozenset(
            r.head for r in self.rules if r.is_fact
        )
        for i, a in enumerate(self.atoms):
            if a.id != i:
                raise ValueError(f"atom table not dense at {a!r}")

    def atom(self, name: str) -> Atom:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown atom {name!r}") from None

    def try_atom(self, name: str) -> Optional[Atom]:
        return self._by_name.get(name)

    def rules_for(self, a: Atom) -> tuple[Rule, ...]:
        return self._by_head.get(a, ())

    def atom_set(self, names: Iterable[str]) -> frozenset[Atom]:
        return frozenset(self.atom(n) for n in names)

    def restrict(self, rules: Iterable[Rule]) -> "Program":
        """New program over the same atom table with a rule subset."""
        return Program(self.atoms, rules)

    def __len__(self):
        return len(self.rules)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Program(atoms={len(self.atoms)}, rules={len(self.rules)})"

    def to_json(self) -> dict:
        return {
            "atoms": [a.name for a in self.atoms],
            "rules": [
                {
                    "head": r.head.id,
                    "pos": sorted(a.id for a in r.pos),
                    "neg": sorted(a.id for a in r.neg),
                }
                for r in self.rules
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "Program":
        atoms = [Atom(i, name) for i, name in enumerate(data["atoms"])]
        rules = []
        for i, r in enumerate(data["rules"]):
            rules.append(
                Rule(
                    atoms[r["head"]],
                    frozenset(atoms[j] for j in r["pos"]),
                    frozenset(atoms[j] for j in r["neg"]),
                    i,
                )
            )
        return Program(atoms, rules)


@dataclass(frozen=True)
class PInterpretation:
    """Possible interpretation: truth-value overlap allowed (= conflict)."""

    plus: frozenset[Atom] = frozenset()
    minus: frozenset[Atom] = frozenset()

    @property
    def conflict(self) -> frozenset[Atom]:
        return self.plus & self.minus

    def is_complete(self, program: Program) -> bool:
        return self.plus | self.minus == set(program.atoms)

    def leq(self, other: "PInterpretation") -> bool:
        """The information order I ⊑ J."""
        return self.plus <= other.plus and self.minus <= other.minus

    def with_true(self, a: Atom) -> "PInterpretation":
        return PInterpretation(self.plus | {a}, self.minus)

    def with_false(self, a: Atom) -> "PInterpretation":
        return PInterpretation(self.plus, self.minus | {a})

    def __str__(self):
        p = ",".join(a.name for a in sorted(self.plus))
        m = ",".join(a.name for a in sorted(self.minus))
        return f"<{{{p}}},{{{m}}}>"

    def to_json(self) -> dict:
        return {
            "plus": [a.name for a in sorted(self.plus)],
            "minus": [a.name for a in sorted(self.minus)],
        }


@dataclass(frozen=True)
class Interpretation(PInterpretation):
    """Three-valued interpretation: the two sides must be disjoint."""

    def __post_init__(self):
        overlap = self.plus & self.minus
        if overlap:
            names = ",".join(a.name for a in sorted(overlap))
            raise ValueError(f"interpretation sides overlap on {{{names}}}")


# --- source-level representation (may contain variables) ------------------

Term = str  # constants are lowercase identifiers, variables uppercase


@dataclass(frozen=True)
class TermAtom:
    """Possibly non-ground atom: predicate plus term arguments."""

    pred: str
    args: tuple[Term, ...] = ()

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(t for t in self.args if _is_variable(t))

    def name(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(self.args)})"

    def __str__(self):
        return self.name()


@dataclass(frozen=True)
class SourceRule:
    head: TermAtom
    pos: tuple[TermAtom, ...]
    neg: tuple[TermAtom, ...]
    guards: tuple[tuple[Term, Term], ...]  # inequality pairs t1 != t2
    index: int

    def __str__(self):
        body = (
            [str(a) for a in self.pos]
            + [f"{x} != {y}" for x, y in self.guards]
            + [f"not {a}" for a in self.neg]
        )
        if not body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(body)}."


@dataclass(frozen=True)
class SourceProgram:
    rules: tuple[SourceRule, ...]

    def __str__(self):
        return "\n".join(str(r) for r in self.rules) + ("\n" if self.rules else "")


def _is_variable(t: Term) -> bool:
    return t[0].isupper()


# --- tokenizer / parser ----------------------------------------------------

_PUNCT = {":-", "!=", ",", ".", "(", ")"}


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident', 'var', 'punct', 'eof'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> Iterator[_Token]:
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith(":-", i):
            yield _Token("punct", ":-", line, col)
            i, col = i + 2, col + 2
            continue
        if text.startswith("!=", i):
            yield _Token("punct", "!=", line, col)
            i, col = i + 2, col + 2
            continue
        if c in ",.()":
            yield _Token("punct", c, line, col)
            i, col = i + 1, col + 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            yield _Token("var" if word[0].isupper() else "ident", word, line, col)
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    yield _Token("eof", "", line, col)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.kind == "eof" or tok.text != text:
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected {text!r}, found {got}", tok)
        return tok

    def parse(self) -> SourceProgram:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.rule(len(rules)))
        return SourceProgram(tuple(rules))

    def rule(self, index: int) -> SourceRule:
        head = self.atom()
        pos: list[TermAtom] = []
        neg: list[TermAtom] = []
        guards: list[tuple[Term, Term]] = []
        if self.peek().text == ":-":
            self.next()
            while True:
                self.body_element(pos, neg, guards)
                if self.peek().text == ",":
                    self.next()
                    continue
                break
        self.expect(".")
        return SourceRule(head, tuple(pos), tuple(neg), tuple(guards), index)

    def body_element(self, pos, neg, guards):
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "not":
            self.next()
            neg.append(self.atom())
            return
        if tok.kind == "var":
            # a body element starting with a variable can only be a guard
            left = self.next().text
            self.expect("!=")
            guards.append((left, self.term()))
            return
        if tok.kind != "ident":
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected body literal, found {got}", tok)
        # constant != term is also a guard; otherwise an atom
        nxt = self.tokens[self.pos + 1]
        if nxt.text == "!=":
            left = self.next().text
            self.next()
            guards.append((left, self.term()))
            return
        pos.append(self.atom())

    def atom(self) -> TermAtom:
        tok = self.next()
        if tok.kind != "ident":
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected atom, found {got}", tok)
        if tok.text == "not":
            self.fail("'not' is a keyword, not an atom", tok)
        if self.peek().text != "(":
            return TermAtom(tok.text)
        self.next()
        args = [self.term()]
        while self.peek().text == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return TermAtom(tok.text, tuple(args))

    def term(self) -> Term:
        tok = self.next()
        if tok.kind not in ("ident", "var"):
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected term, found {got}", tok)
        return tok.text


def parse_program(text: str) -> SourceProgram:
    """Parse source text into rules (variables allowed, order preserved)."""
    return _Parser(text).parse()


def render(p: Union[Program, SourceProgram]) -> str:
    """Parseable text form; inverse of parse_program up to rule structure."""
    return "\n".join(str(r) for r in p.rules) + ("\n" if p.rules else "")


# --- grounding --------------------------------------------------------------


def _rule_constants(rule: SourceRule) -> Iterator[Term]:
    for atom in (rule.head, *rule.pos, *rule.neg):
        for t in atom.args:
            if not _is_variable(t):
                yield t
    for x, y in rule.guards:
        for t in (x, y):
            if not _is_variable(t):
                yield t


def _rule_variables(rule: SourceRule) -> list[str]:
    seen: list[str] = []
    for atom in (rule.head, *rule.pos, *rule.neg):
        for t in atom.args:
            if _is_variable(t) and t not in seen:
                seen.append(t)
    for x, y in rule.guards:
        for t in (x, y):
            if _is_variable(t) and t not in seen:
                seen.append(t)
    return seen


def ground(source: SourceProgram) -> Program:
    """Instantiate variables over the program's constants and intern atoms.

    Inequality guards filter instances; interning follows first occurrence
    (head first, then body in written order) so downstream tie-breaking is
    reproducible.
    """
    constants: list[Term] = []
    for rule in source.rules:
        for c in _rule_constants(rule):
            if c not in constants:
                constants.append(c)

    names: dict[str, int] = {}
    atoms: list[Atom] = []

    def intern(atom: TermAtom, subst: dict[str, str]) -> Atom:
        name = TermAtom(
            atom.pred, tuple(subst.get(t, t) for t in atom.args)
        ).name()
        if name not in names:
            names[name] = len(atoms)
            atoms.append(Atom(len(atoms), name))
        return atoms[names[name]]

    rules: list[Rule] = []
    seen_rules: set[tuple] = set()
    for rule in source.rules:
        variables = _rule_variables(rule)
        bound = {v for a in rule.pos for v in a.variables}
        unsafe = [v for v in variables if v not in bound]
        if unsafe:
            raise GroundingError(
                f"rule {rule.index} ({rule}): variable(s) "
                f"{', '.join(unsafe)} do not occur in a positive body atom"
            )
        if variables and not constants:
            raise GroundingError(
                f"rule {rule.index} ({rule}): variables but no constants to ground over"
            )
        for combo in itertools.product(constants, repeat=len(variables)):
            subst = dict(zip(variables, combo))
            ok = True
            for x, y in rule.guards:
                if subst.get(x, x) == subst.get(y, y):
                    ok = False
                    break
            if not ok:
                continue
            head = intern(rule.head, subst)
            pos = frozenset(intern(a, subst) for a in rule.pos)
            neg = frozenset(intern(a, subst) for a in rule.neg)
            key = (head, pos, neg)
            if key in seen_rules:
                continue
            seen_rules.add(key)
            rules.append(Rule(head, pos, neg, len(rules)))
    return Program(atoms, rules)


def load_program(text: str) -> Program:
    """parse + ground in one step."""
    return ground(parse_program(text))


# --- basic predicates --------------------------------------------------------


def nant(p: Program) -> frozenset[Atom]:
    """Atoms occurring under negation-as-failure somewhere in p."""
    out: set[Atom] = set()
    for r in p.rules:
        out |= r.neg
    return frozenset(out)


def satisfies(
    i: PInterpretation, x: Union[Literal, Rule, Iterable[Literal]]
) -> bool:
    """Truth of a literal, literal set, or rule under a (p-)interpretation.

    Undefined atoms satisfy nothing; a rule holds when its body fails or its
    head holds.
    """
    if isinstance(x, Literal):
        return x.atom in (i.minus if x.negated else i.plus)
    if isinstance(x, Rule):
        body_true = x.pos <= i.plus and x.neg <= i.minus
        return (not body_true) or x.head in i.plus
    return all(satisfies(i, lit) for lit in x)


def is_supported(i: PInterpretation, a: Atom, p: Program) -> bool:
    """True iff some rule with head a has its body satisfied by i."""
    return any(
        r.pos <= i.plus and r.neg <= i.minus for r in p.rules_for(a)
    )


def is_model(i: PInterpretation, p: Program) -> bool:
    return all(satisfies(i, r) for r in p.rules)


def program_to_json_str(p: Program) -> str:
    return json.dumps(p.to_json())
