"""Corpus-wide invariants tying the solver, the semantics oracles, and the
justification machinery together."""

import random

from asjust import (
    Marker,
    brute_force_answer_sets,
    build_sigma,
    final_snapshot_is_offline,
    gamma_delta,
    has_negative_cycle,
    is_supported,
    lce_pos,
    neg_node,
    negative_reduct,
    normal_form,
    online_justification,
    pos_node,
    satisfies,
    snapshot,
    solve,
    tentative_assumptions,
    validate_offline,
    well_founded,
)
from asjust.justify import offline_violations

from .corpus import random_pinterp, random_program, shrink_pinterp

N_PROGRAMS = 60  # the acceptance suite reruns these checks over 200 programs


def corpus():
    for seed in range(N_PROGRAMS):
        yield seed, random_program(seed)


def test_solver_agrees_with_brute_force():
    for seed, p in corpus():
        expected = set(brute_force_answer_sets(p))
        got = {m for m, _ in solve(p)}
        assert got == expected, seed


def test_answer_sets_are_supported_models():
    for seed, p in corpus():
        for m in brute_force_answer_sets(p):
            assert all(satisfies(m, r) for r in p.rules), seed
            assert all(is_supported(m, a, p) for a in m.plus), seed


def test_wfs_oracle_agreement_and_bound():
    for seed, p in corpus():
        wf, trace = well_founded(p)
        assert normal_form(p).wfs() == wf, seed
        for earlier, later in zip(trace, trace[1:]):
            assert earlier.k <= later.k and later.u <= earlier.u
        for m in brute_force_answer_sets(p):
            assert wf.plus <= m.plus and wf.minus <= m.minus, seed


def test_reconstruction_from_tentative_assumptions():
    for seed, p in corpus():
        for m in brute_force_answer_sets(p):
            ta = tentative_assumptions(p, m)
            wf_nr, _ = well_founded(negative_reduct(p, ta))
            assert wf_nr == m, seed


def test_every_built_justification_is_offline_valid():
    for seed, p in corpus():
        for m in brute_force_answer_sets(p):
            ta = tentative_assumptions(p, m)
            sigma = build_sigma(p, m, ta)
            assert sigma.gamma == m.plus and sigma.delta == m.minus, seed
            for a in p.atoms:
                node = pos_node(a) if a in m.plus else neg_node(a)
                g = sigma.justification(node)
                assert not offline_violations(p, g, node, m, ta), (seed, a.name)
                assert not has_negative_cycle(g), (seed, a.name)


def test_positive_lce_soundness():
    rng = random.Random(4242)
    for seed, p in corpus():
        j = random_pinterp(p, rng)
        for a in p.atoms:
            for exp in lce_pos(p, a, j):
                if isinstance(exp, Marker):
                    continue
                assert any(r.body() == exp for r in p.rules_for(a))
                for lit in exp:
                    if lit.negated:
                        assert lit.atom in j.minus
                    else:
                        assert lit.atom in j.plus


def test_gamma_delta_properties():
    rng = random.Random(31337)
    for seed, p in corpus():
        wf, _ = well_founded(p)
        assert gamma_delta(p, wf) .plus == wf.plus
        assert gamma_delta(p, wf).minus == wf.minus
        for m in brute_force_answer_sets(p):
            d = gamma_delta(p, m)
            assert d.plus == m.plus and d.minus == m.minus, seed
        j = random_pinterp(p, rng)
        d = gamma_delta(p, j)
        assert d.plus <= j.plus and d.minus <= j.minus, seed
        smaller = shrink_pinterp(j, rng)
        ds = gamma_delta(p, smaller)
        assert ds.plus <= d.plus and ds.minus <= d.minus, seed
        if not j.conflict:
            assert not (d.plus & d.minus), seed


def test_snapshot_key_partition():
    rng = random.Random(777)
    for seed, p in corpus():
        j = random_pinterp(p, rng)
        snap = snapshot(p, j)
        off_keys, on_keys = set(snap.off), set(snap.on)
        assert not (off_keys & on_keys), seed
        expected = {pos_node(a) for a in j.plus} | {neg_node(a) for a in j.minus}
        assert off_keys | on_keys == expected, seed


def test_incremental_equals_from_scratch_and_final_offline():
    for seed, p in corpus():
        wf, _ = well_founded(p)
        for m, comp in solve(p, trace=True):
            snaps = online_justification(p, comp)
            for state, snap in zip(comp.states, snaps):
                fresh = snapshot(p, state, wf)
                assert snap.d == fresh.d, seed
                assert snap.edge_view() == fresh.edge_view(), seed
            assert final_snapshot_is_offline(p, comp), seed


def test_final_snapshot_graphs_are_offline_justifications():
    for seed, p in corpus():
        for m, comp in solve(p, trace=True):
            snap = online_justification(p, comp)[-1]
            ta = tentative_assumptions(p, m)
            assert not snap.on, seed
            for node, g in snap.off.items():
                assert validate_offline(p, g, node, m, ta), (seed, str(node))
