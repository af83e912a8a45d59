"""Network composition, reachability search, induced behavior, substitution."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from gadgetbench.catalog import gadget
from gadgetbench.core import make_gadget
from gadgetbench.network import (
    CapExceeded,
    Configuration,
    EpisodeLabel,
    Instance,
    Network,
    NetworkError,
    Realization,
    induced_behavior,
    legal_moves,
    reachable_configurations,
    solve,
    substitute,
)

from .oracles import brute_reachable, brute_solvable


def diode_net(start=None, goal=None):
    g = gadget("diode")
    return Network(
        [Instance("d", g, "s")],
        {("d", "in"): "n1", ("d", "out"): "n2"},
        ["n1", "n2"],
        start=start,
        goal=goal,
    )


def scd_net(initial="closed", start=None, goal=None):
    g = gadget("scd-dir-oo")
    att = {("d", "O"): "nO", ("d", "S0"): "nA", ("d", "S1"): "nB"}
    return Network([Instance("d", g, initial)], att, ["nO", "nA", "nB"], start=start, goal=goal)


def test_build_network_two_nodes():
    net = diode_net()
    assert net.nodes == ("n1", "n2")


def test_build_rejects_unknown_state():
    g = gadget("diode")
    with pytest.raises(NetworkError) as exc:
        Network([Instance("d", g, "nope")], {("d", "in"): "a", ("d", "out"): "b"}, [])
    assert exc.value.code == "unknown-state"


def test_build_rejects_missing_attachment():
    g = gadget("diode")
    with pytest.raises(NetworkError) as exc:
        Network([Instance("d", g, "s")], {("d", "in"): "a"}, [])
    assert exc.value.code == "dangling-attachment"


def test_build_rejects_unattached_external():
    g = gadget("diode")
    with pytest.raises(NetworkError) as exc:
        Network([Instance("d", g, "s")], {("d", "in"): "a", ("d", "out"): "b"}, ["zzz"])
    assert exc.value.code == "dangling-attachment"


def test_legal_moves_closed_door_has_none_at_traverse():
    g = gadget("door-dir-or")
    att = {("d", loc): loc for loc in g.locations}
    net = Network([Instance("d", g, "closed")], att, [])
    moves = legal_moves(net, Configuration("T0", ("closed",)))
    assert moves == []


def test_legal_moves_open_door_traverses():
    g = gadget("door-dir-or")
    att = {("d", loc): loc for loc in g.locations}
    net = Network([Instance("d", g, "open")], att, [])
    moves = legal_moves(net, Configuration("T0", ("open",)))
    assert [(m.instance, c.node, c.state_vector) for m, c in moves] == [("d", "T1", ("open",))]


def test_legal_moves_symmetric_door_flips_state():
    g = gadget("scd-sym-dir")
    att = {("d", loc): loc for loc in g.locations}
    net = Network([Instance("d", g, "closed")], att, [])
    moves = legal_moves(net, Configuration("A0", ("closed",)))
    assert [(c.node, c.state_vector) for _, c in moves] == [("A1", ("open",))]


def test_reachable_single_configuration():
    net = diode_net()
    got = reachable_configurations(net, Configuration("n2", ("s",)))
    assert got == {Configuration("n2", ("s",))}


def test_reachable_enumerates_scd():
    net = scd_net()
    got = reachable_configurations(net, Configuration("nO", ("closed",)))
    assert got == {Configuration("nO", ("closed",)), Configuration("nO", ("open",))}
    got = reachable_configurations(net, Configuration("nA", ("open",)))
    assert got == {Configuration("nA", ("open",)), Configuration("nB", ("closed",))}


def test_reachable_cap_exceeded():
    net = diode_net()
    with pytest.raises(CapExceeded):
        reachable_configurations(net, Configuration("n1", ("s",)), cap=1)


def test_solve_start_equals_goal():
    net = diode_net(start="n1", goal="n1")
    result = solve(net)
    assert result.reachable and result.witness == ()


def test_solve_closed_scd_unreachable_without_opener():
    g = gadget("scd-dir-oo")
    att = {("d", "O"): "elsewhere", ("d", "S0"): "a", ("d", "S1"): "b"}
    net = Network([Instance("d", g, "closed")], att, [], start="a", goal="b")
    assert not solve(net).reachable


def test_solve_with_opener_and_witness_replays():
    g = gadget("scd-dir-oo")
    att = {("d", "O"): "a", ("d", "S0"): "a", ("d", "S1"): "b"}
    net = Network([Instance("d", g, "closed")], att, [], start="a", goal="b")
    result = solve(net)
    assert result.reachable
    c = net.initial_configuration
    for step in result.witness:
        options = {m.transition: c2 for m, c2 in legal_moves(net, c) if m.instance == step.instance}
        assert step.transition in options
        c = options[step.transition]
    assert c.node == net.goal


def test_induced_behavior_diode():
    net = diode_net()
    lts = induced_behavior(net)
    assert lts.lts_states == (("s",),)
    labels = {(m[1].entry, m[1].exit) for m in lts.moves}
    assert labels == {("n1", "n2"), ("n1", "n1"), ("n2", "n2")}


def test_induced_behavior_requires_externals():
    g = gadget("diode")
    net = Network([Instance("d", g, "s")], {("d", "in"): "a", ("d", "out"): "b"}, [])
    with pytest.raises(NetworkError):
        induced_behavior(net)


def test_induced_behavior_reflexive_moves_present():
    net = scd_net()
    lts = induced_behavior(net)
    for q in lts.lts_states:
        for e in net.externals:
            assert (q, EpisodeLabel(e, e), q) in lts.moves


def test_open_loop_behavior_is_open_optional():
    # open-required door with the open tunnel fused: visiting the loop node opens it
    g = gadget("door-dir-or")
    att = {("d", loc): loc for loc in g.locations}
    att[("d", "O0")] = "X"
    att[("d", "O1")] = "X"
    net = Network([Instance("d", g, "closed")], att, ["X", "T0", "T1", "C0", "C1"])
    lts = induced_behavior(net)
    assert (("closed",), EpisodeLabel("X", "X"), ("open",)) in lts.moves


def test_determinism_identical_runs():
    net = scd_net()
    a = induced_behavior(net)
    b = induced_behavior(net)
    assert a == b
    s1 = solve(scd_net(start="nO", goal="nB"))
    s2 = solve(scd_net(start="nO", goal="nB"))
    assert s1 == s2


def test_monotone_frontier_cap():
    g = gadget("scd-dir-oo")
    att = {("d", "O"): "a", ("d", "S0"): "a", ("d", "S1"): "b"}
    net = Network([Instance("d", g, "closed")], att, [])
    c0 = Configuration("a", ("closed",))
    small = reachable_configurations(net, c0, cap=3)
    large = reachable_configurations(net, c0, cap=100)
    assert small <= large


def _identity_realization(name):
    g = gadget(name)
    att = {("d", loc): loc for loc in g.locations}
    sub = Network([Instance("d", g, g.states[0])], att, list(g.locations))
    return Realization(sub, {loc: loc for loc in g.locations}, {s: {"d": s} for s in g.states})


def test_substitute_identity_preserves_behavior():
    net = scd_net()
    out = substitute(net, {"scd-dir-oo": _identity_realization("scd-dir-oo")})
    assert [i.id for i in out.instances] == ["d.d"]
    assert induced_behavior(out).moves == induced_behavior(net).moves


def test_substitute_port_mismatch():
    net = diode_net()
    bad = Realization(
        _identity_realization("wire").network,
        {"a": "a", "b": "b"},
        {"s": {"d": "s"}},
    )
    with pytest.raises(NetworkError) as exc:
        substitute(net, {"diode": bad})
    assert exc.value.code == "port-mismatch"


def test_substitute_scd_diode_for_diode_keeps_behavior():
    # replace a diode instance with the self-closing-door diode realization
    g = gadget("scd-dir-oo")
    att = {("x", "O"): "p", ("x", "S0"): "p", ("x", "S1"): "q"}
    sub = Network([Instance("x", g, "closed")], att, ["p", "q"])
    real = Realization(sub, {"in": "p", "out": "q"}, {"s": {"x": "closed"}})
    net = diode_net()
    out = substitute(net, {"diode": real})
    from gadgetbench.verify import check_simulation

    rep = check_simulation(out, gadget("diode"), "s", {"n1": "in", "n2": "out"})
    assert rep.verdict == "pass"


def _random_network(rng: random.Random):
    n_g = rng.randint(1, 3)
    gadgets = []
    for k in range(n_g):
        states = [f"s{i}" for i in range(rng.randint(1, 3))]
        locs = [f"l{i}" for i in range(rng.randint(1, 3))]
        transitions = set()
        for _ in range(rng.randint(1, 5)):
            transitions.add(
                (rng.choice(states), rng.choice(locs), rng.choice(states), rng.choice(locs))
            )
        gadgets.append(make_gadget(f"g{k}", states, locs, sorted(transitions)))
    instances = []
    for i in range(rng.randint(1, 6)):
        g = rng.choice(gadgets)
        instances.append(Instance(f"i{i}", g, rng.choice(g.states)))
    n_nodes = rng.randint(1, 5)
    nodes = [f"n{k}" for k in range(n_nodes)]
    att = {}
    for inst in instances:
        for loc in inst.gadget.locations:
            att[(inst.id, loc)] = rng.choice(nodes)
    used = sorted(set(att.values()))
    return Network(instances, att, [], start=rng.choice(used), goal=rng.choice(used))


def test_solve_matches_brute_force_oracle_on_100_seeded_networks():
    agree = 0
    for seed in range(100):
        rng = random.Random(1000 + seed)
        net = _random_network(rng)
        got = solve(net).reachable
        want = brute_solvable(net)
        assert got == want, f"seed {seed}"
        agree += 1
    assert agree == 100


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_reachable_matches_oracle_property(seed):
    rng = random.Random(seed)
    net = _random_network(rng)
    got = {(c.node, c.state_vector) for c in reachable_configurations(net, net.initial_configuration)}
    want = brute_reachable(net, net.start)
    assert got == want
