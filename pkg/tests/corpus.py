"""Seeded random-program corpus shared by the property and acceptance suites."""

from __future__ import annotations

import random

from asjust import PInterpretation, Program, load_program


def random_program_text(seed: int, max_atoms: int = 10, max_rules: int = 20) -> str:
    rng = random.Random(seed)
    n_atoms = rng.randint(2, max_atoms)
    atoms = [chr(ord("a") + i) for i in range(n_atoms)]
    neg_density = rng.random()
    lines: list[str] = []
    seen: set[tuple] = set()
    for _ in range(rng.randint(1, max_rules)):
        head = rng.choice(atoms)
        body_atoms = rng.sample(atoms, rng.randint(0, min(3, n_atoms)))
        pos = [b for b in body_atoms if rng.random() >= neg_density]
        neg = [b for b in body_atoms if b not in pos]
        key = (head, frozenset(pos), frozenset(neg))
        if key in seen:
            continue
        seen.add(key)
        body = pos + [f"not {b}" for b in neg]
        lines.append(f"{head} :- {', '.join(body)}." if body else f"{head}.")
    return "\n".join(lines) + "\n"


def random_program(seed: int, max_atoms: int = 10, max_rules: int = 20) -> Program:
    return load_program(random_program_text(seed, max_atoms, max_rules))


def random_pinterp(p: Program, rng: random.Random) -> PInterpretation:
    plus, minus = set(), set()
    for a in p.atoms:
        roll = rng.random()
        if roll < 0.35:
            plus.add(a)
        elif roll < 0.7:
            minus.add(a)
    return PInterpretation(frozenset(plus), frozenset(minus))


def shrink_pinterp(j: PInterpretation, rng: random.Random) -> PInterpretation:
    """A random information-smaller state (for monotonicity checks)."""
    plus = frozenset(a for a in j.plus if rng.random() < 0.7)
    minus = frozenset(a for a in j.minus if rng.random() < 0.7)
    return PInterpretation(plus, minus)
