"""Simulation checking: does a network behave like a target gadget?

The comparison object on both sides is a labeled transition system whose
moves are episodes (entry, exit).  The target side reads the gadget's
transitive closure as episodes; the network side is its induced behavior.
A pass requires mutual similarity: every network episode is legal in the
target closure (soundness) and every closure episode is available in the
network (completeness).  Soundness deliberately allows network states that
offer fewer options; that is how the player-disincentive reading of
simulatability is formalized here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Gadget, transitive_closure
from .network import InducedLTS, Network, induced_behavior

Label = tuple[str, str]


@dataclass(frozen=True)
class LTS:
    states: tuple
    initial: object
    moves: tuple  # of (state, Label, state)

    def succ(self):
        index: dict = {}
        for p, lab, p2 in self.moves:
            index.setdefault(p, {}).setdefault(lab, []).append(p2)
        return index


def lts_of_induced(ind: InducedLTS) -> LTS:
    moves = tuple((q, (lab.entry, lab.exit), q2) for q, lab, q2 in ind.moves)
    return LTS(ind.lts_states, ind.initial, moves)


def compose_episodes(lts: LTS) -> LTS:
    """Close the move set under composition at shared externals: an agent that
    exits at x and immediately re-enters is unobservable, so (q,(e,x),q') then
    (q',(x,e'),q'') yields (q,(e,e'),q'').  The target-side closure LTS is
    composition-closed by construction; closing the network side makes the
    similarity check compare like with like."""
    moves = set(lts.moves)
    by_entry: dict[tuple, set] = {}
    for q, (e, x), q2 in moves:
        by_entry.setdefault((q, e), set()).add((x, q2))
    changed = True
    while changed:
        changed = False
        for q, (e, x), q2 in list(moves):
            for x2, q3 in list(by_entry.get((q2, x), ())):
                m = (q, (e, x2), q3)
                if m not in moves:
                    moves.add(m)
                    by_entry.setdefault((q, e), set()).add((x2, q3))
                    changed = True
    return LTS(lts.states, lts.initial, tuple(sorted(moves)))


def closure_lts(g: Gadget, s0: str) -> LTS:
    """Target-side comparison object: states reachable from s0, moves are the
    closure's transitions read as episodes.  Reflexive no-change episodes come
    from the closure's reflexive pairs."""
    if s0 not in g.states:
        raise ValueError(f"unknown state {s0!r}")
    closed = transitive_closure(g)
    succ: dict[str, set[str]] = {s: set() for s in g.states}
    for t in closed.transitions:
        succ[t.from_state].add(t.to_state)
    reach = {s0}
    stack = [s0]
    while stack:
        for s2 in succ[stack.pop()]:
            if s2 not in reach:
                reach.add(s2)
                stack.append(s2)
    states = tuple(s for s in g.states if s in reach)
    moves = tuple(
        sorted(
            (t.from_state, (t.from_location, t.to_location), t.to_state)
            for t in closed.transitions
            if t.from_state in reach
        )
    )
    return LTS(states, s0, moves)


@dataclass(frozen=True)
class Counterexample:
    """Alternating play of the simulation game ending in an unmatched move.

    pairs[i] is the (a state, b state) position before labels[i] is played;
    labels[:-1] were matched by the recorded b states, labels[-1] has no
    b-response from pairs[-1][1].
    """

    pairs: tuple[tuple[object, object], ...]
    labels: tuple[Label, ...]


def _map_label(lab: Label, port_map: dict[str, str]) -> Label:
    return (port_map[lab[0]], port_map[lab[1]])


def _refine(a: LTS, b: LTS, port_map: dict[str, str]):
    """Greatest simulation by iterated refinement from the full relation.
    Returns (relation, removal_rank)."""
    a_succ = a.succ()
    b_succ = b.succ()
    rel = {(p, q) for p in a.states for q in b.states}
    rank: dict[tuple, int] = {}
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for pair in sorted(rel):
            p, q = pair
            ok = True
            for lab, targets in a_succ.get(p, {}).items():
                blab = _map_label(lab, port_map)
                responses = b_succ.get(q, {}).get(blab, [])
                for p2 in targets:
                    if not any((p2, q2) in rel for q2 in responses):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                rel.discard(pair)
                rank[pair] = rounds
                changed = True
    return rel, rank


def simulation_preorder(a: LTS, b: LTS, port_map: dict[str, str]):
    """Greatest relation R containing (a.initial, b.initial) such that every
    a-move from a related state is matched by a b-move with related targets;
    None when no such relation contains the initial pair."""
    _check_port_map(a, b, port_map)
    rel, _ = _refine(a, b, port_map)
    if (a.initial, b.initial) in rel:
        return frozenset(rel)
    return None


def _check_port_map(a: LTS, b: LTS, port_map: dict[str, str]) -> None:
    a_labels = {x for _, lab, _ in a.moves for x in lab}
    if not a_labels <= set(port_map.keys()):
        raise ValueError(f"port-mismatch: unmapped labels {sorted(a_labels - set(port_map))}")
    if len(set(port_map.values())) != len(port_map):
        raise ValueError("port-mismatch: map is not injective")


def _counterexample(a: LTS, b: LTS, port_map: dict[str, str], rank: dict) -> Counterexample:
    """Minimal alternating trace from the initial pair, built by descending
    removal ranks: a plays a killing move, b responds with its best defense."""
    a_succ = a.succ()
    b_succ = b.succ()
    pair = (a.initial, b.initial)
    pairs = []
    labels = []
    while True:
        p, q = pair
        r = rank[pair]
        best = None
        for lab in sorted(a_succ.get(p, {})):
            blab = _map_label(lab, port_map)
            responses = b_succ.get(q, {}).get(blab, [])
            for p2 in sorted(a_succ[p][lab]):
                worst = 0
                for q2 in responses:
                    rr = rank.get((p2, q2))
                    if rr is None:
                        worst = None
                        break
                    worst = max(worst, rr)
                if worst is None or worst >= r:
                    continue
                key = (worst, lab, p2)
                if best is None or key < best[0]:
                    best = (key, lab, p2, responses)
        assert best is not None, "removed pair must have a killing move"
        _, lab, p2, responses = best
        pairs.append(pair)
        labels.append(lab)
        if not responses:
            return Counterexample(tuple(pairs), tuple(labels))
        q2 = max(sorted(responses), key=lambda x: (rank.get((p2, x), 0), str(x)))
        pair = (p2, q2)


def replay_counterexample(cex: Counterexample, a: LTS, b: LTS, port_map: dict[str, str]) -> bool:
    """Mechanical check: the trace is executable on the moving side and the
    final move is unmatched on the other."""
    a_succ = a.succ()
    b_succ = b.succ()
    if not cex.pairs or cex.pairs[0] != (a.initial, b.initial):
        return False
    for i, lab in enumerate(cex.labels[:-1]):
        p, q = cex.pairs[i]
        p2, q2 = cex.pairs[i + 1]
        if p2 not in a_succ.get(p, {}).get(lab, []):
            return False
        if q2 not in b_succ.get(q, {}).get(_map_label(lab, port_map), []):
            return False
    p, q = cex.pairs[-1]
    lab = cex.labels[-1]
    if not a_succ.get(p, {}).get(lab):
        return False
    return not b_succ.get(q, {}).get(_map_label(lab, port_map))


VERDICT_PASS = "pass"
VERDICT_FAIL_SOUND = "fail-soundness"
VERDICT_FAIL_COMPLETE = "fail-completeness"


@dataclass(frozen=True)
class SimReport:
    verdict: str
    witness_sound: frozenset | None
    witness_complete: frozenset | None
    counterexample: Counterexample | None
    network_lts: LTS
    target_lts: LTS

    @property
    def witness_relation(self) -> tuple | None:
        """Pairs (network lts state, target state) related in both directions."""
        if self.verdict != VERDICT_PASS:
            return None
        back = {(s, q) for (s, q) in self.witness_complete}
        return tuple(sorted((q, s) for (q, s) in self.witness_sound if (s, q) in back))


def check_simulation(
    net: Network,
    g: Gadget,
    s0: str,
    port_map: dict[str, str],
    cap: int | None = None,
    stats: dict | None = None,
) -> SimReport:
    """Two-directional simulation check of a network against a target gadget.

    port_map maps network externals to gadget locations (a bijection).
    Soundness is checked first; the failing direction carries a minimal
    counterexample trace.
    """
    from .network import DEFAULT_CAP

    cap = DEFAULT_CAP if cap is None else cap
    if sorted(port_map.keys()) != sorted(net.externals):
        raise ValueError("port-mismatch: map keys must be the network externals")
    if sorted(port_map.values()) != sorted(set(port_map.values())) or set(port_map.values()) - set(g.locations):
        raise ValueError("port-mismatch: map values must be distinct gadget locations")
    if len(port_map) != len(g.locations):
        raise ValueError("port-mismatch: map must cover every gadget location")
    a = compose_episodes(lts_of_induced(induced_behavior(net, cap, stats=stats)))
    b = closure_lts(g, s0)
    sound_rel, sound_rank = _refine(a, b, port_map)
    if (a.initial, b.initial) not in sound_rel:
        cex = _counterexample(a, b, port_map, sound_rank)
        return SimReport(VERDICT_FAIL_SOUND, None, None, cex, a, b)
    inverse = {v: k for k, v in port_map.items()}
    comp_rel, comp_rank = _refine(b, a, inverse)
    if (b.initial, a.initial) not in comp_rel:
        cex = _counterexample(b, a, inverse, comp_rank)
        return SimReport(VERDICT_FAIL_COMPLETE, frozenset(sound_rel), None, cex, a, b)
    return SimReport(VERDICT_PASS, frozenset(sound_rel), frozenset(comp_rel), None, a, b)
