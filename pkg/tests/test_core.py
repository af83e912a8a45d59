"""Gadget-level classifiers, closure, and embedding canonicalization."""

import pytest
from hypothesis import given, strategies as st

from gadgetbench.core import (
    DOOR_CASE_NAMES,
    INTERNAL_CROSSING,
    Gadget,
    MissingRolesError,
    PlanarEmbedding,
    Transition,
    canonical_cycle,
    canonical_embedding,
    classify_planar_door_case,
    classify_structure,
    make_gadget,
    transitive_closure,
    validate_gadget,
)
from gadgetbench.catalog import GADGETS, gadget

from .oracles import closure_by_paths


def diode():
    return gadget("diode")


def test_validate_minimal_diode():
    assert validate_gadget(diode()) == []


def test_validate_unknown_location():
    g = Gadget("bad", ("s",), ("a",), (Transition("s", "a", "s", "x"),))
    problems = validate_gadget(g)
    assert any("unknown-location" in p and "x" in p for p in problems)


def test_validate_duplicate_location():
    g = Gadget("bad", ("s",), ("a", "a"), ())
    assert any("duplicate-location" in p for p in validate_gadget(g))


def test_validate_duplicate_transition():
    t = Transition("s", "a", "s", "b")
    g = Gadget("bad", ("s",), ("a", "b"), (t, t))
    assert any("duplicate-transition" in p for p in validate_gadget(g))


def test_closure_diode_adds_reflexive_pairs_only():
    closed = transitive_closure(diode())
    got = {(t.from_state, t.from_location, t.to_state, t.to_location) for t in closed.transitions}
    assert got == {("s", "in", "s", "out"), ("s", "in", "s", "in"), ("s", "out", "s", "out")}


def test_closure_chain_two_hops():
    g = make_gadget("chain", ["0"], ["a", "b", "c"], [("0", "a", "0", "b"), ("0", "b", "0", "c")])
    closed = transitive_closure(g)
    assert Transition("0", "a", "0", "c") in closed.transitions


def test_closure_directed_door_adds_only_reflexive():
    g = gadget("door-dir-or")
    closed = transitive_closure(g)
    extra = set(closed.transitions) - set(g.transitions)
    assert extra == {Transition(s, l, s, l) for s in g.states for l in g.locations}


@pytest.mark.parametrize("name", sorted(GADGETS))
def test_closure_matches_path_oracle(name):
    g = gadget(name)
    got = {(t.from_state, t.from_location, t.to_state, t.to_location) for t in transitive_closure(g).transitions}
    assert got == closure_by_paths(g)


@pytest.mark.parametrize("name", sorted(GADGETS))
def test_closure_idempotent_and_monotone(name):
    g = gadget(name)
    c1 = transitive_closure(g)
    c2 = transitive_closure(c1)
    assert c1.transitions == c2.transitions
    assert set(g.transitions) <= set(c1.transitions)


def test_classify_undirected_tripwire_lock():
    rep = classify_structure(gadget("twl-undir"))
    assert rep.deterministic and rep.reversible
    assert rep.k_tunnel is not None and rep.k_tunnel[0] == 2
    pairs = {frozenset(p) for p in rep.k_tunnel[1]}
    assert pairs == {frozenset(("W0", "W1")), frozenset(("L0", "L1"))}


def test_classify_directed_door_not_reversible():
    rep = classify_structure(gadget("door-dir-or"))
    assert not rep.reversible
    assert rep.door_class.directedness == "directed"
    assert rep.door_class.open_mode == "open-required"


def test_classify_open_optional_not_deterministic():
    rep = classify_structure(gadget("door-dir-oo"))
    assert not rep.deterministic
    assert rep.door_class.open_mode == "open-optional"


def test_classify_mixed_door():
    rep = classify_structure(gadget("door-mixed-oo"))
    assert rep.door_class.directedness == "mixed"


def test_door_class_requires_roles():
    rep = classify_structure(diode())
    assert rep.door_class is None


def test_twelve_cases_classify_to_themselves():
    numbers = set()
    for n, order in DOOR_CASE_NAMES.items():
        case = classify_planar_door_case(gadget(f"door-case-{n}-{order}"))
        assert case.number == n and case.order == order
        numbers.add(case.number)
    assert numbers == set(range(1, 13))


def test_case_count_is_twelve():
    assert sum(1 for name in GADGETS if name.startswith("door-case-")) == 12


@pytest.mark.parametrize("n,order", sorted(DOOR_CASE_NAMES.items()))
def test_case_invariant_under_rotation_and_reflection(n, order):
    g = gadget(f"door-case-{n}-{order}")
    cycle = list(g.embedding.cycle)
    variants = []
    for rev in (cycle, cycle[::-1]):
        for i in range(len(rev)):
            variants.append(rev[i:] + rev[:i])
    for var in variants:
        g2 = Gadget(g.name, g.states, g.locations, g.transitions, PlanarEmbedding(tuple(var)), g.roles)
        case = classify_planar_door_case(g2)
        assert case.number == n


def test_interleaved_tunnels_report_internal_crossing():
    for k in range(1, 5):
        assert classify_planar_door_case(gadget(f"door-crossing-{k}")) == INTERNAL_CROSSING


def test_case_2_example_order():
    # cyclic [O, T_in, T_out, C_in, C_out]
    g = gadget("door-case-2-OTtCc")
    assert list(g.embedding.cycle) == ["O", "T0", "T1", "C0", "C1"]
    assert classify_planar_door_case(g).number == 2


def test_classify_requires_roles_and_embedding():
    with pytest.raises(MissingRolesError):
        classify_planar_door_case(diode())


def test_canonical_embedding_rotation_reflection():
    assert canonical_cycle(("a", "b", "c")) == canonical_cycle(("b", "c", "a"))
    assert canonical_cycle(("a", "b", "c")) == canonical_cycle(("c", "b", "a"))
    assert canonical_cycle(("a", "b", "c", "d")) != canonical_cycle(("a", "c", "b", "d"))
    e = PlanarEmbedding(("x", "y", "z"))
    assert canonical_embedding(e) == e.canonical()


@given(st.permutations(["a", "b", "c", "d", "e"]), st.integers(0, 4), st.booleans())
def test_canonical_cycle_invariance(perm, rot, reflect):
    cycle = list(perm)
    variant = cycle[rot:] + cycle[:rot]
    if reflect:
        variant = variant[::-1]
    assert canonical_cycle(cycle) == canonical_cycle(variant)


@given(
    st.integers(2, 4).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, 1), st.integers(0, n - 1), st.integers(0, 1), st.integers(0, n - 1)),
                max_size=8,
            ),
        )
    )
)
def test_closure_random_gadgets_match_oracle(data):
    n, raw = data
    locs = [f"l{i}" for i in range(n)]
    transitions = []
    for s0, l0, s1, l1 in raw:
        t = (f"s{s0}", locs[l0], f"s{s1}", locs[l1])
        if t not in transitions:
            transitions.append(t)
    g = make_gadget("rand", ["s0", "s1"], locs, transitions)
    got = {(t.from_state, t.from_location, t.to_state, t.to_location) for t in transitive_closure(g).transitions}
    assert got == closure_by_paths(g)
