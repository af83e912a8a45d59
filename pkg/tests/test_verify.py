"""Simulation preorder and the two-directional check."""

import itertools

import pytest

from gadgetbench.catalog import entries, gadget
from gadgetbench.network import Instance, Network, induced_behavior
from gadgetbench.verify import (
    LTS,
    VERDICT_FAIL_COMPLETE,
    VERDICT_FAIL_SOUND,
    VERDICT_PASS,
    check_simulation,
    closure_lts,
    compose_episodes,
    lts_of_induced,
    replay_counterexample,
    simulation_preorder,
)


def wire_net():
    g = gadget("wire")
    return Network([Instance("w", g, "s")], {("w", "a"): "IN", ("w", "b"): "OUT"}, ["IN", "OUT"])


def diode_net():
    g = gadget("diode")
    return Network([Instance("d", g, "s")], {("d", "in"): "IN", ("d", "out"): "OUT"}, ["IN", "OUT"])


def test_closure_lts_diode():
    lts = closure_lts(gadget("diode"), "s")
    assert lts.states == ("s",)
    assert ("s", ("in", "out"), "s") in lts.moves
    assert ("s", ("in", "in"), "s") in lts.moves
    assert ("s", ("out", "out"), "s") in lts.moves


def test_closure_lts_symmetric_scd():
    lts = closure_lts(gadget("scd-sym-dir"), "closed")
    assert set(lts.states) == {"closed", "open"}
    assert ("closed", ("A0", "A1"), "open") in lts.moves
    assert ("open", ("B0", "B1"), "closed") in lts.moves
    for s in lts.states:
        for loc in gadget("scd-sym-dir").locations:
            assert (s, (loc, loc), s) in lts.moves


def test_closure_lts_open_optional_scd():
    lts = closure_lts(gadget("scd-dir-oo"), "closed")
    assert ("closed", ("O", "O"), "open") in lts.moves
    assert ("open", ("S0", "S1"), "closed") in lts.moves


def test_simulation_reflexive():
    lts = closure_lts(gadget("scd-sym-dir"), "closed")
    labels = {x for _, lab, _ in lts.moves for x in lab}
    rel = simulation_preorder(lts, lts, {x: x for x in labels})
    assert rel is not None
    assert all((p, p) in rel for p in lts.states)


def test_diode_below_wire_but_not_conversely():
    d = compose_episodes(lts_of_induced(induced_behavior(diode_net())))
    w = compose_episodes(lts_of_induced(induced_behavior(wire_net())))
    ident = {"IN": "IN", "OUT": "OUT"}
    assert simulation_preorder(d, w, ident) is not None
    assert simulation_preorder(w, d, ident) is None


def test_wire_vs_diode_fails_soundness_with_replayable_counterexample():
    rep = check_simulation(wire_net(), gadget("diode"), "s", {"IN": "in", "OUT": "out"})
    assert rep.verdict == VERDICT_FAIL_SOUND
    cex = rep.counterexample
    assert cex.labels[-1] == ("OUT", "IN")
    assert replay_counterexample(cex, rep.network_lts, rep.target_lts, {"IN": "in", "OUT": "out"})


def test_fail_completeness_direction():
    # a dead network (diode stuck closed behind nothing) cannot match the wire
    rep = check_simulation(diode_net(), gadget("wire"), "s", {"IN": "a", "OUT": "b"})
    assert rep.verdict == VERDICT_FAIL_COMPLETE
    assert rep.counterexample is not None


def test_pass_has_witness_relation_with_initial_pair():
    net = diode_net()
    rep = check_simulation(net, gadget("diode"), "s", {"IN": "in", "OUT": "out"})
    assert rep.verdict == VERDICT_PASS
    assert (("s",), "s") in rep.witness_relation
    # closed under both matching conditions: every network move from a related
    # state is matched into the sound relation, every target move into the
    # complete relation
    sound = rep.witness_sound
    comp = rep.witness_complete
    assert (rep.network_lts.initial, rep.target_lts.initial) in sound
    assert (rep.target_lts.initial, rep.network_lts.initial) in comp


def test_port_map_must_be_bijection():
    with pytest.raises(ValueError):
        check_simulation(diode_net(), gadget("diode"), "s", {"IN": "in", "OUT": "in"})
    with pytest.raises(ValueError):
        check_simulation(diode_net(), gadget("scd-dir-oo"), "closed", {"IN": "O", "OUT": "S0"})


def test_pass_stable_under_internal_relabeling():
    g = gadget("scd-dir-oo")
    att = {("d", "O"): "nO", ("d", "S0"): "nO", ("d", "S1"): "nB"}
    net1 = Network([Instance("d", g, "closed")], att, ["nO", "nB"])
    att2 = {("zz", "O"): "nO", ("zz", "S0"): "nO", ("zz", "S1"): "nB"}
    net2 = Network([Instance("zz", g, "closed")], att2, ["nO", "nB"])
    pm = {"nO": "in", "nB": "out"}
    r1 = check_simulation(net1, gadget("diode"), "s", pm)
    r2 = check_simulation(net2, gadget("diode"), "s", pm)
    assert r1.verdict == r2.verdict == VERDICT_PASS


def _catalog_lts_pool():
    pool = []
    for name in ("diode", "wire", "scd-dir-oo", "scd-sym-dir", "twl-par"):
        g = gadget(name)
        pool.append((name, closure_lts(g, g.states[0])))
    return pool


def test_preorder_transitive_on_catalog_ltss():
    # a <= b and b <= c implies a <= c, over same-interface pairs
    pool = _catalog_lts_pool()
    for (na, a), (nb, b), (nc, c) in itertools.product(pool, repeat=3):
        la = sorted({x for _, lab, _ in a.moves for x in lab})
        lb = sorted({x for _, lab, _ in b.moves for x in lab})
        lc = sorted({x for _, lab, _ in c.moves for x in lab})
        if len(la) != len(lb) or len(lb) != len(lc):
            continue
        ab = {x: y for x, y in zip(la, lb)}
        bc = {x: y for x, y in zip(lb, lc)}
        ac = {x: bc[ab[x]] for x in la}
        if simulation_preorder(a, b, ab) is not None and simulation_preorder(b, c, bc) is not None:
            assert simulation_preorder(a, c, ac) is not None, (na, nb, nc)


def test_soundness_completeness_decomposition():
    # pass iff both directional checks succeed
    for e in list(entries().values())[:6]:
        g = gadget(e.target)
        rep = check_simulation(e.network, g, e.target_initial, e.port_map)
        a = compose_episodes(lts_of_induced(induced_behavior(e.network)))
        b = closure_lts(g, e.target_initial)
        sound = simulation_preorder(a, b, e.port_map)
        inverse = {v: k for k, v in e.port_map.items()}
        complete = simulation_preorder(b, a, inverse)
        assert (rep.verdict == VERDICT_PASS) == (sound is not None and complete is not None)


def test_compose_episodes_adds_pause_composites():
    lts = LTS(
        ("q0", "q1", "q2"),
        "q0",
        (
            ("q0", ("e", "e"), "q1"),
            ("q1", ("e", "f"), "q2"),
        ),
    )
    closed = compose_episodes(lts)
    assert ("q0", ("e", "f"), "q2") in closed.moves
