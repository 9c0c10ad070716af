"""Off-line justification construction and validation."""

import pytest

from asjust import (
    ASSUME_NODE,
    EGraph,
    Edge,
    build_offline_justification,
    build_sigma,
    has_negative_cycle,
    load_program,
    neg_node,
    pos_node,
    tentative_assumptions,
    validate_offline,
    validate_ju_based,
)
from asjust.justify import offline_violations

from .fixtures import interp, p5, pinterp, pkw


def fig2_graphs(p):
    """Expected edge-label sets of the five justification graphs."""
    return {
        "b+": {("b+", "e+", "+"), ("b+", "a-", "-"), ("a-", "assume", "-"), ("e+", "⊤", "+")},
        "f+": {("f+", "e+", "+"), ("e+", "⊤", "+")},
        "e+": {("e+", "⊤", "+")},
        "c-": {("c-", "d-", "+"), ("d-", "c-", "+")},
        "a-": {("a-", "assume", "-")},
    }


class TestBuilder:
    def test_five_reference_graphs(self):
        p = p5()
        m1 = interp(p, "f e b", "a c d")
        u = p.atom_set({"a"})
        targets = {
            "b+": pos_node(p.atom("b")),
            "f+": pos_node(p.atom("f")),
            "e+": pos_node(p.atom("e")),
            "c-": neg_node(p.atom("c")),
            "a-": neg_node(p.atom("a")),
        }
        for key, expected in fig2_graphs(p).items():
            g = build_offline_justification(p, m1, u, targets[key])
            assert g.edge_labels() == frozenset(expected), key
            assert validate_offline(p, g, targets[key], m1, u)
            assert not has_negative_cycle(g)

    def test_fact_atom(self):
        p = p5()
        m1 = interp(p, "f e b", "a c d")
        g = build_offline_justification(p, m1, p.atom_set({"a"}), pos_node(p.atom("e")))
        assert g.edge_labels() == frozenset({("e+", "⊤", "+")})

    def test_rejects_non_assumption(self):
        p = p5()
        m1 = interp(p, "f e b", "a c d")
        with pytest.raises(ValueError):
            build_offline_justification(p, m1, frozenset(), pos_node(p.atom("b")))

    def test_guarded_cycle_program_both_assumption_sets(self):
        p = pkw()
        m1 = interp(p, "f e b", "a c d k")
        # with the minimal assumption {a}, k- is explained through a-
        g = build_offline_justification(p, m1, p.atom_set({"a"}), neg_node(p.atom("k")))
        assert g.edge_labels() == frozenset(
            {("k-", "a-", "+"), ("a-", "assume", "-")}
        )
        # with the full tentative assumptions, k- is itself assumed
        g2 = build_offline_justification(
            p, m1, p.atom_set({"a", "k"}), neg_node(p.atom("k"))
        )
        assert g2.edge_labels() == frozenset({("k-", "assume", "-")})

    def test_every_atom_justifiable_under_ta(self):
        p = pkw()
        m1 = interp(p, "f e b", "a c d k")
        ta = tentative_assumptions(p, m1)
        sigma = build_sigma(p, m1, ta)
        assert sigma.gamma == m1.plus
        assert sigma.delta == m1.minus

    def test_wfs_atoms_justified_without_assumptions(self):
        # non-assumption route: seed the builder with an empty U and check
        # the well-founded atoms still come out negative-cycle-free
        p = p5()
        m1 = interp(p, "f e b", "a c d")
        sigma = build_sigma(p, m1, frozenset())
        for name in ("e", "f"):
            g = sigma.justification(pos_node(p.atom(name)))
            assert not has_negative_cycle(g)
        for name in ("c", "d"):
            g = sigma.justification(neg_node(p.atom(name)))
            assert not has_negative_cycle(g)


class TestValidators:
    def test_assume_edge_requires_membership(self):
        p = p5()
        m1 = interp(p, "f e b", "a c d")
        u = p.atom_set({"a"})
        g = build_offline_justification(p, m1, u, pos_node(p.atom("b")))
        # valid w.r.t. {a}, invalid w.r.t. the empty assumption set
        assert validate_offline(p, g, pos_node(p.atom("b")), m1, u)
        assert not validate_offline(p, g, pos_node(p.atom("b")), m1, frozenset())

    def test_assumed_false_atom_graph(self):
        p = p6 = load_program("p :- not q. q :- not p.")
        j = pinterp(p, "", "p")
        g = EGraph.from_edges([Edge(neg_node(p.atom("p")), ASSUME_NODE, "-")])
        root = neg_node(p.atom("p"))
        assert validate_offline(p, g, root, j, p.atom_set({"p"}))
        assert not validate_offline(p, g, root, j, frozenset())

    def test_relevance_checked(self):
        p = p5()
        m1 = interp(p, "f e b", "a c d")
        stray = EGraph.from_edges(
            [
                Edge(pos_node(p.atom("e")), ASSUME_NODE, "+"),
                Edge(pos_node(p.atom("f")), pos_node(p.atom("e")), "+"),
            ]
        )
        problems = offline_violations(
            p, stray, pos_node(p.atom("e")), m1, frozenset()
        )
        assert any("unreachable" in msg for msg in problems)

    def test_support_must_be_lce(self):
        p = p5()
        m1 = interp(p, "f e b", "a c d")
        # b+ supported only by e+ is not a rule body of b
        g = EGraph.from_edges(
            [
                Edge(pos_node(p.atom("b")), pos_node(p.atom("e")), "+"),
                Edge(pos_node(p.atom("e")), ASSUME_NODE, "+"),
            ]
        )
        assert not validate_ju_based(p, g, pos_node(p.atom("b")), m1, frozenset())

    def test_unsafe_graph_rejected(self):
        p = load_program("a :- a.")
        m = pinterp(p, "a")
        g = EGraph.from_edges([Edge(pos_node(p.atom("a")), pos_node(p.atom("a")), "+")])
        problems = offline_violations(p, g, pos_node(p.atom("a")), m, frozenset())
        assert any("positive cycle" in msg for msg in problems)
