"""Networks of gadget instances and their exact reachability semantics.

A network wires instance locations onto shared nodes; the agent moves by
taking gadget transitions between nodes.  The searched object is the
configuration (agent node, joint state vector).  Joint state vectors are
bit-packed into ints for hashing; exploration order is deterministic:
instances in declaration order, transitions in declaration order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import Gadget, Transition

DEFAULT_CAP = 1 << 22


class NetworkError(ValueError):
    """Raised for malformed network specs; .code carries the error kind."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class CapExceeded(RuntimeError):
    """Search frontier passed the configuration cap (desk-scale overflow)."""


@dataclass(frozen=True)
class Instance:
    id: str
    gadget: Gadget
    initial_state: str


@dataclass(frozen=True)
class Configuration:
    node: str
    state_vector: tuple[str, ...]


@dataclass(frozen=True)
class MoveStep:
    instance: str
    transition: Transition


@dataclass(frozen=True, order=True)
class EpisodeLabel:
    entry: str
    exit: str


@dataclass(frozen=True)
class InducedLTS:
    """Externally observable behavior: joint state vectors with labeled
    episodes (entry external, exit external).  Reflexive no-change moves are
    present at every external."""

    lts_states: tuple[tuple[str, ...], ...]
    initial: tuple[str, ...]
    externals: tuple[str, ...]
    moves: tuple[tuple[tuple[str, ...], EpisodeLabel, tuple[str, ...]], ...]


class Network:
    """Immutable composition of gadget instances.

    attachment maps every (instance id, location) to a node; the node set is
    exactly the attachment codomain, so no node dangles.
    """

    def __init__(
        self,
        instances: list[Instance] | tuple[Instance, ...],
        attachment: dict[tuple[str, str], str],
        externals: list[str] | tuple[str, ...],
        external_cycle: list[str] | tuple[str, ...] | None = None,
        start: str | None = None,
        goal: str | None = None,
        name: str = "net",
    ):
        self.name = name
        self.instances = tuple(instances)
        self.attachment = dict(attachment)
        self.externals = tuple(externals)
        self.external_cycle = tuple(external_cycle) if external_cycle is not None else None
        self.start = start
        self.goal = goal
        self._validate()
        self._build_indexes()

    def _validate(self) -> None:
        ids = [inst.id for inst in self.instances]
        if len(set(ids)) != len(ids):
            raise NetworkError("duplicate-instance", f"instance ids {ids}")
        for inst in self.instances:
            if inst.initial_state not in inst.gadget.states:
                raise NetworkError("unknown-state", f"{inst.id}: {inst.initial_state}")
            for loc in inst.gadget.locations:
                if (inst.id, loc) not in self.attachment:
                    raise NetworkError("dangling-attachment", f"{inst.id}.{loc} is not attached")
        known = {(inst.id, loc) for inst in self.instances for loc in inst.gadget.locations}
        for key in self.attachment:
            if key not in known:
                raise NetworkError("unknown-location", f"{key[0]}.{key[1]}")
        nodes = set(self.attachment.values())
        for e in self.externals:
            if e not in nodes:
                raise NetworkError("dangling-attachment", f"external {e} is attached to nothing")
        if self.external_cycle is not None and sorted(self.external_cycle) != sorted(self.externals):
            raise NetworkError("bad-external-cycle", f"{self.external_cycle}")
        for endpoint, label in ((self.start, "start"), (self.goal, "goal")):
            if endpoint is not None and endpoint not in nodes:
                raise NetworkError("dangling-attachment", f"{label} node {endpoint}")

    def _build_indexes(self) -> None:
        seen: list[str] = []
        for inst in self.instances:
            for loc in inst.gadget.locations:
                node = self.attachment[(inst.id, loc)]
                if node not in seen:
                    seen.append(node)
        self.nodes = tuple(seen)
        self._node_idx = {n: i for i, n in enumerate(self.nodes)}
        self._state_idx = [
            {s: k for k, s in enumerate(inst.gadget.states)} for inst in self.instances
        ]
        bits = 4
        for inst in self.instances:
            while len(inst.gadget.states) > (1 << bits):
                bits *= 2
        self._bits = bits
        self._mask = (1 << bits) - 1
        word = 0
        for i, inst in enumerate(self.instances):
            word |= self._state_idx[i][inst.initial_state] << (bits * i)
        self._initial_word = word
        # Per-node move table, declaration order.
        table: list[list[tuple[int, int, int, int, Transition]]] = [[] for _ in self.nodes]
        for i, inst in enumerate(self.instances):
            for t in inst.gadget.transitions:
                src = self._node_idx[self.attachment[(inst.id, t.from_location)]]
                dst = self._node_idx[self.attachment[(inst.id, t.to_location)]]
                table[src].append((i, self._state_idx[i][t.from_state], self._state_idx[i][t.to_state], dst, t))
        self._moves_at = [tuple(entries) for entries in table]

    # -- configuration packing ------------------------------------------------

    def pack(self, c: Configuration) -> tuple[int, int]:
        if len(c.state_vector) != len(self.instances):
            raise NetworkError("bad-configuration", f"state vector length {len(c.state_vector)}")
        word = 0
        for i, s in enumerate(c.state_vector):
            word |= self._state_idx[i][s] << (self._bits * i)
        return self._node_idx[c.node], word

    def unpack(self, node_idx: int, word: int) -> Configuration:
        return Configuration(self.nodes[node_idx], self.vector_of(word))

    def vector_of(self, word: int) -> tuple[str, ...]:
        return tuple(
            inst.gadget.states[(word >> (self._bits * i)) & self._mask]
            for i, inst in enumerate(self.instances)
        )

    def word_of(self, vector: tuple[str, ...]) -> int:
        word = 0
        for i, s in enumerate(vector):
            word |= self._state_idx[i][s] << (self._bits * i)
        return word

    @property
    def initial_configuration(self) -> Configuration:
        if self.start is None:
            raise NetworkError("no-start", "network has no start node")
        return Configuration(self.start, self.vector_of(self._initial_word))

    def _raw_moves(self, node_idx: int, word: int):
        bits, mask = self._bits, self._mask
        for i, s_from, s_to, dst, t in self._moves_at[node_idx]:
            if (word >> (bits * i)) & mask == s_from:
                yield i, (word & ~(mask << (bits * i))) | (s_to << (bits * i)), dst, t


def legal_moves(net: Network, c: Configuration) -> list[tuple[MoveStep, Configuration]]:
    """Every configuration reachable in one step from c, in deterministic
    order."""
    node_idx, word = net.pack(c)
    out = []
    for i, word2, dst, t in net._raw_moves(node_idx, word):
        out.append((MoveStep(net.instances[i].id, t), net.unpack(dst, word2)))
    return out


def reachable_configurations(net: Network, c0: Configuration, cap: int = DEFAULT_CAP) -> set[Configuration]:
    """Breadth-first closure of legal moves from c0."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    start = net.pack(c0)
    visited = {start}
    queue = deque([start])
    while queue:
        node_idx, word = queue.popleft()
        for _, word2, dst, _ in net._raw_moves(node_idx, word):
            key = (dst, word2)
            if key not in visited:
                if len(visited) >= cap:
                    raise CapExceeded(f"more than {cap} configurations")
                visited.add(key)
                queue.append(key)
    return {net.unpack(n, w) for n, w in visited}


@dataclass(frozen=True)
class SolveResult:
    reachable: bool
    witness: tuple[MoveStep, ...] | None


def solve(net: Network, cap: int = DEFAULT_CAP) -> SolveResult:
    """Decide whether the agent can move from the start node to the goal node;
    on success the witness is the BFS-shortest move sequence under the
    deterministic order."""
    if net.start is None or net.goal is None:
        raise NetworkError("no-start", "solve needs start and goal nodes")
    goal_idx = net._node_idx[net.goal]
    start = (net._node_idx[net.start], net._initial_word)
    if start[0] == goal_idx:
        return SolveResult(True, ())
    parents: dict[tuple[int, int], tuple[tuple[int, int], MoveStep]] = {}
    visited = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        node_idx, word = cur
        for i, word2, dst, t in net._raw_moves(node_idx, word):
            key = (dst, word2)
            if key in visited:
                continue
            if len(visited) >= cap:
                raise CapExceeded(f"more than {cap} configurations")
            visited.add(key)
            parents[key] = (cur, MoveStep(net.instances[i].id, t))
            if dst == goal_idx:
                steps = []
                k = key
                while k != start:
                    k, step = parents[k][0], parents[k][1]
                    steps.append(step)
                return SolveResult(True, tuple(reversed(steps)))
            queue.append(key)
    return SolveResult(False, None)


def _episodes_from(net: Network, entry_idx: int, word: int, external_idx: set[int], budget: list[int], cap: int):
    """All (exit external idx, word) reachable from (entry, word) through
    internal nodes only; reaching an external ends the episode."""
    results: set[tuple[int, int]] = set()
    start = (entry_idx, word)
    visited = {start}
    queue = deque([start])
    while queue:
        node_idx, w = queue.popleft()
        for _, w2, dst, _ in net._raw_moves(node_idx, w):
            key = (dst, w2)
            if key in visited:
                continue
            budget[0] += 1
            if budget[0] > cap:
                raise CapExceeded(f"more than {cap} configurations")
            visited.add(key)
            if dst in external_idx:
                results.add(key)
            else:
                queue.append(key)
    return results


def induced_behavior(net: Network, cap: int = DEFAULT_CAP, stats: dict | None = None) -> InducedLTS:
    """The network seen from outside: joint states the agent can leave behind,
    with one move per completed entry-to-exit episode."""
    if not net.externals:
        raise NetworkError("no-externals", "induced behavior needs external nodes")
    external_idx = {net._node_idx[e] for e in net.externals}
    ext_name = {net._node_idx[e]: e for e in net.externals}
    budget = [0]
    initial_word = net._initial_word
    known_words = {initial_word}
    frontier = deque([initial_word])
    moves: set[tuple[int, str, str, int]] = set()
    while frontier:
        w = frontier.popleft()
        for e in net.externals:
            e_idx = net._node_idx[e]
            for exit_idx, w2 in sorted(_episodes_from(net, e_idx, w, external_idx, budget, cap)):
                moves.add((w, e, ext_name[exit_idx], w2))
                if w2 not in known_words:
                    known_words.add(w2)
                    frontier.append(w2)
    for w in known_words:
        for e in net.externals:
            moves.add((w, e, e, w))
    if stats is not None:
        stats["configurations"] = stats.get("configurations", 0) + budget[0]
    vec = {w: net.vector_of(w) for w in known_words}
    lts_states = tuple(sorted(vec.values()))
    move_list = tuple(
        sorted((vec[w], EpisodeLabel(a, b), vec[w2]) for (w, a, b, w2) in moves)
    )
    return InducedLTS(lts_states, vec[initial_word], tuple(net.externals), move_list)


@dataclass(frozen=True)
class Realization:
    """A sub-network standing in for a gadget: externals correspond to the
    gadget's locations via port_map; initials gives the sub-instance states
    realizing each gadget state that instances may start in."""

    network: Network
    port_map: dict[str, str]  # gadget location -> sub-network external node
    initials: dict[str, dict[str, str]] = field(default_factory=dict)


def substitute(net: Network, realizations: dict[str, Realization]) -> Network:
    """Replace every instance of each mapped gadget with a fresh copy of its
    realization, fusing the copy's externals onto the instance's attachment
    nodes.  Copied instance and node ids are prefixed with the replaced
    instance id."""
    for gname, real in realizations.items():
        locs = None
        for inst in net.instances:
            if inst.gadget.name == gname:
                locs = inst.gadget.locations
                break
        if locs is None:
            continue
        if sorted(real.port_map.keys()) != sorted(locs):
            raise NetworkError("port-mismatch", f"realization of {gname} maps {sorted(real.port_map)}")
        if sorted(real.port_map.values()) != sorted(real.network.externals):
            raise NetworkError("port-mismatch", f"realization of {gname} externals {real.network.externals}")
        inst0 = next(i for i in net.instances if i.gadget.name == gname)
        if real.network.external_cycle is not None and inst0.gadget.embedding is not None:
            from .core import canonical_cycle

            want = canonical_cycle(tuple(real.port_map[loc] for loc in inst0.gadget.embedding.cycle))
            if want != canonical_cycle(real.network.external_cycle):
                raise NetworkError("embedding-mismatch", f"realization of {gname}")
    new_instances: list[Instance] = []
    new_attachment: dict[tuple[str, str], str] = {}
    for inst in net.instances:
        real = realizations.get(inst.gadget.name)
        if real is None:
            new_instances.append(inst)
            for loc in inst.gadget.locations:
                new_attachment[(inst.id, loc)] = net.attachment[(inst.id, loc)]
            continue
        sub = real.network
        init_map = real.initials.get(inst.initial_state)
        if init_map is None:
            raise NetworkError("unknown-state", f"realization of {inst.gadget.name} has no initials for {inst.initial_state}")
        ext_to_loc = {v: k for k, v in real.port_map.items()}
        for sinst in sub.instances:
            new_instances.append(Instance(f"{inst.id}.{sinst.id}", sinst.gadget, init_map[sinst.id]))
            for loc in sinst.gadget.locations:
                node = sub.attachment[(sinst.id, loc)]
                if node in ext_to_loc:
                    target = net.attachment[(inst.id, ext_to_loc[node])]
                else:
                    target = f"{inst.id}.{node}"
                new_attachment[(f"{inst.id}.{sinst.id}", loc)] = target
    return Network(
        new_instances,
        new_attachment,
        net.externals,
        net.external_cycle,
        net.start,
        net.goal,
        name=net.name,
    )
