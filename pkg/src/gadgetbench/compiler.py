"""Constructive transformations: compile any gadget into a network of
directed open-required doors, and normalize arbitrary door variants into that
door.

The universality compiler emits one door per state/port pair, one per port,
and one per transition, wired so that a traversal between externals is
possible exactly when the corresponding traversal is allowed in the target's
transitive closure: the state/port door admits the agent, a transition door
is opened and remembered, every state/port door is swept closed, the
transition door is spent, the new state's doors are opened, and the location
door releases the agent at its exit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Gadget
from .network import Instance, Network, NetworkError, Realization, substitute

DOOR = "door-dir-or"
DEFAULT_DOOR_BUDGET = 64


class CompileError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def _door_gadget() -> Gadget:
    from .catalog.gadgets import gadget

    return gadget(DOOR)


@dataclass(frozen=True)
class DoorNamingScheme:
    """Deterministic instance and external ids for the emitted network."""

    def state_port(self, s: str, p: str) -> str:
        return f"Dsp.{s}.{p}"

    def port(self, p: str) -> str:
        return f"Dp.{p}"

    def transition(self, s0: str, p0: str, s1: str, p1: str) -> str:
        return f"Dt.{s0}.{p0}.{s1}.{p1}"

    def external(self, p: str) -> str:
        return f"E.{p}"


@dataclass(frozen=True)
class OrderingContext:
    """Total orders on S x P and on P, in declaration order."""

    state_ports: tuple[tuple[str, str], ...]
    ports: tuple[str, ...]

    @classmethod
    def of(cls, g: Gadget) -> "OrderingContext":
        return cls(tuple((s, p) for s in g.states for p in g.locations), tuple(g.locations))

    def next_state_port(self, s: str, p: str) -> tuple[str, str] | None:
        i = self.state_ports.index((s, p))
        return self.state_ports[i + 1] if i + 1 < len(self.state_ports) else None

    def next_port(self, p: str) -> str | None:
        i = self.ports.index(p)
        return self.ports[i + 1] if i + 1 < len(self.ports) else None


class _Fuser:
    """Union-find over instance endpoints, producing deterministic node ids."""

    def __init__(self):
        self.parent: dict = {}

    def _find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def fuse(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[rb] = ra

    def attachment(self, endpoints, named: dict) -> dict:
        """endpoints: iterable of (inst, loc); named: endpoint -> node name for
        externals.  Node names: the named representative if any member is
        named, else n<k> in first-appearance order."""
        groups: dict = {}
        for ep in endpoints:
            groups.setdefault(self._find(ep), []).append(ep)
        att = {}
        counter = 0
        for ep in endpoints:
            root = self._find(ep)
            if root in att:
                continue
            names = sorted({named[m] for m in groups[root] if m in named})
            if len(names) > 1:
                raise CompileError("fused-externals", f"{names}")
            if names:
                att[root] = names[0]
            else:
                att[root] = f"n{counter}"
                counter += 1
        return {ep: att[self._find(ep)] for ep in endpoints}


def compile_universal(g: Gadget, initial_state: str | None = None, budget: int = DEFAULT_DOOR_BUDGET) -> Network:
    """Emit the door network simulating gadget g, |S|*|P| + |P| + |T| doors.

    The designated initial state (default: first declared) maps to the network
    state where every D_{s0,p} is open and all other doors are closed.
    """
    door = _door_gadget()
    s0 = initial_state if initial_state is not None else g.states[0]
    if s0 not in g.states:
        raise CompileError("unknown-state", s0)
    count = len(g.states) * len(g.locations) + len(g.locations) + len(g.transitions)
    if count > budget:
        raise CompileError("budget-exceeded", f"{count} doors > {budget}")
    names = DoorNamingScheme()
    order = OrderingContext.of(g)
    instances = []
    for s in g.states:
        for p in g.locations:
            instances.append(Instance(names.state_port(s, p), door, "open" if s == s0 else "closed"))
    for p in g.locations:
        instances.append(Instance(names.port(p), door, "closed"))
    for t in g.transitions:
        instances.append(
            Instance(names.transition(t.from_state, t.from_location, t.to_state, t.to_location), door, "closed")
        )
    fuser = _Fuser()
    named = {}
    ext_anchor = {}
    for p in g.locations:
        anchor = (names.port(p), "C1")
        ext_anchor[p] = anchor
        named[anchor] = names.external(p)
    sf, pf = order.state_ports[0]
    sl, pl = order.state_ports[-1]
    for p in g.locations:
        for s in g.states:
            fuser.fuse(ext_anchor[p], (names.state_port(s, p), "T0"))
    for t in g.transitions:
        dt = names.transition(t.from_state, t.from_location, t.to_state, t.to_location)
        fuser.fuse((names.state_port(t.from_state, t.from_location), "T1"), (dt, "O0"))
        fuser.fuse((dt, "O1"), (names.port(t.to_location), "O0"))
        fuser.fuse((names.state_port(sl, pl), "C1"), (dt, "T0"))
        fuser.fuse((dt, "T1"), (dt, "C0"))
        fuser.fuse((dt, "C1"), (names.state_port(t.to_state, pf), "O0"))
    for p in g.locations:
        fuser.fuse((names.port(p), "O1"), (names.state_port(sf, pf), "C0"))
    for s, p in order.state_ports:
        nxt = order.next_state_port(s, p)
        if nxt is not None:
            fuser.fuse((names.state_port(s, p), "C1"), (names.state_port(*nxt), "C0"))
    for s in g.states:
        for p in g.locations:
            nxt = order.next_port(p)
            if nxt is not None:
                fuser.fuse((names.state_port(s, p), "O1"), (names.state_port(s, nxt), "O0"))
            else:
                for q in g.locations:
                    fuser.fuse((names.state_port(s, pl), "O1"), (names.port(q), "T0"))
    for p in g.locations:
        fuser.fuse((names.port(p), "T1"), (names.port(p), "C0"))
    endpoints = [(inst.id, loc) for inst in instances for loc in door.locations]
    att = fuser.attachment(endpoints, named)
    externals = [names.external(p) for p in g.locations]
    return Network(instances, att, externals, name=f"universal.{g.name}")


def _door_shape(g: Gadget) -> dict:
    """Classify a door-family gadget by its location names; returns tunnel
    descriptors {name: (in, out, directed, gated)}."""
    locs = set(g.locations)

    def directed(a, b):
        fwd = any(t.from_location == a and t.to_location == b for t in g.transitions)
        back = any(t.from_location == b and t.to_location == a for t in g.transitions)
        return fwd and not back

    shape: dict = {"kind": None, "tunnels": {}}
    if {"T0", "T1", "C0", "C1"} <= locs:
        shape["kind"] = "door"
        shape["tunnels"]["T"] = ("T0", "T1", directed("T0", "T1"))
        shape["tunnels"]["C"] = ("C0", "C1", directed("C0", "C1"))
        if "O" in locs:
            shape["open_port"] = "O"
        else:
            shape["tunnels"]["O"] = ("O0", "O1", directed("O0", "O1"))
    elif {"S0", "S1"} <= locs:
        shape["kind"] = "scd"
        shape["tunnels"]["S"] = ("S0", "S1", directed("S0", "S1"))
        if "O" in locs:
            shape["open_port"] = "O"
        else:
            shape["tunnels"]["O"] = ("O0", "O1", directed("O0", "O1"))
    elif {"A0", "A1", "B0", "B1"} <= locs:
        shape["kind"] = "sym"
        shape["tunnels"]["A"] = ("A0", "A1", directed("A0", "A1"))
        shape["tunnels"]["B"] = ("B0", "B1", directed("B0", "B1"))
    else:
        raise CompileError("not-a-door", g.name)
    return shape


def _one_door_net(g: Gadget, init: str, node_of: dict[str, str]) -> Network:
    inst = Instance("d", g, init)
    att = {("d", loc): node_of.get(loc, f"d.{loc}") for loc in g.locations}
    return Network([inst], att, ["in", "out"], name=f"diode.{g.name}")


def diode_network(source: Gadget) -> Network:
    """A network of source instances whose induced behavior is the diode,
    entering at `in` and leaving at `out`.

    A directed tunnel whose traversability never changes is exposed directly
    (the closing tunnel first, then an opening tunnel); purely undirected
    doors get the open-traverse-close chain, and self-closing variants their
    series chains.
    """
    shape = _door_shape(source)
    tun = shape["tunnels"]
    if shape["kind"] == "door":
        if tun["C"][2]:
            return _one_door_net(source, "closed", {"C0": "in", "C1": "out"})
        if "O" in tun and tun["O"][2]:
            return _one_door_net(source, "closed", {"O0": "in", "O1": "out"})
        if tun["T"][2]:
            return _one_door_net(source, "open", {"T0": "in", "T1": "out"})
        if "open_port" in shape:
            return _one_door_net(source, "closed", {"O": "in", "T0": "in", "T1": "m", "C0": "m", "C1": "out"})
        return _one_door_net(
            source, "closed", {"O0": "in", "O1": "m0", "T0": "m0", "T1": "m1", "C0": "m1", "C1": "out"}
        )
    if shape["kind"] == "scd":
        if tun["S"][2]:
            if "open_port" in shape:
                return _one_door_net(source, "closed", {"O": "in", "S0": "in", "S1": "out"})
            return _one_door_net(source, "closed", {"O0": "in", "O1": "m", "S0": "m", "S1": "out"})
        g = source
        insts = [Instance("L", g, "closed"), Instance("R", g, "closed")]
        att: dict = {}
        if "open_port" in shape:
            att.update({("L", "O"): "in", ("L", "S0"): "in", ("L", "S1"): "mid"})
            att.update({("R", "O"): "mid", ("R", "S0"): "mid", ("R", "S1"): "out"})
        else:
            att.update({("L", "O0"): "in", ("L", "O1"): "m1", ("L", "S0"): "m1", ("L", "S1"): "m2"})
            att.update({("R", "O0"): "m2", ("R", "O1"): "m3", ("R", "S0"): "m3", ("R", "S1"): "out"})
        return Network(insts, att, ["in", "out"], name=f"diode.{source.name}")
    return _one_door_net(source, "closed", {"A0": "in", "A1": "m", "B0": "m", "B1": "out"})


def open_optionalize(door: Gadget) -> Network:
    """Fuse the open tunnel's two ports onto one exposed node, turning the
    open tunnel into an open port."""
    shape = _door_shape(door)
    if "open_port" in shape:
        raise CompileError("not-open-required", door.name)
    inst = Instance("d", door, "closed")
    att = {("d", loc): loc for loc in door.locations}
    att[("d", "O0")] = "O"
    att[("d", "O1")] = "O"
    ext = ["O"] + [loc for loc in door.locations if not loc.startswith("O")]
    return Network([inst], att, ext, name=f"open-optional.{door.name}")


def _inline(
    instances: list[Instance],
    att: dict,
    prefix: str,
    sub: Network,
    splice: dict[str, str],
) -> None:
    """Copy sub's instances into the network under construction; sub externals
    are replaced by the splice target nodes."""
    for sinst in sub.instances:
        instances.append(Instance(f"{prefix}.{sinst.id}", sinst.gadget, sinst.initial_state))
        for loc in sinst.gadget.locations:
            node = sub.attachment[(sinst.id, loc)]
            att[(f"{prefix}.{sinst.id}", loc)] = splice.get(node, f"{prefix}.{node}")


def directify(door: Gadget, flip_tunnel: str | None = None) -> Network:
    """Wire every undirected tunnel through same-door diodes at both ends
    (consistent orientation), producing a fully directed door network with
    externals named like the directed door's locations.

    flip_tunnel reverses the chosen orientation of one tunnel, the escape
    hatch for avoiding a particular emitted planar case.
    """
    shape = _door_shape(door)
    if shape["kind"] != "door":
        raise CompileError("not-a-door", door.name)
    tun = shape["tunnels"]
    has_directed = any(d for (_, _, d) in tun.values())
    if not has_directed and _is_fully_undirected(door):
        pass  # diode_network handles fully undirected doors directly
    inst = Instance("d", door, "closed")
    instances = [inst]
    att = {("d", loc): f"main.{loc}" for loc in door.locations}
    dio = diode_network(door)
    counter = [0]

    def lane(name: str, a: str, b: str, directed: bool) -> None:
        flipped = flip_tunnel == name
        src, dst = (b, a) if flipped else (a, b)
        if directed and not flipped:
            att[("d", src)] = f"{name}0"
            att[("d", dst)] = f"{name}1"
            return
        k_in = f"dio{counter[0]}"
        counter[0] += 1
        k_out = f"dio{counter[0]}"
        counter[0] += 1
        _inline(instances, att, k_in, dio, {"in": f"{name}0", "out": f"main.{src}"})
        _inline(instances, att, k_out, dio, {"in": f"main.{dst}", "out": f"{name}1"})

    if "open_port" in shape:
        k_in, k_out = "dioO0", "dioO1"
        _inline(instances, att, k_in, dio, {"in": "O0", "out": f"main.O"})
        _inline(instances, att, k_out, dio, {"in": f"main.O", "out": "O1"})
    else:
        lane("O", "O0", "O1", tun["O"][2])
    lane("T", "T0", "T1", tun["T"][2])
    lane("C", "C0", "C1", tun["C"][2])
    ext = ["O0", "O1", "T0", "T1", "C0", "C1"]
    return Network(instances, att, ext, name=f"directified.{door.name}")


def _is_fully_undirected(door: Gadget) -> bool:
    shape = _door_shape(door)
    return not any(d for (_, _, d) in shape["tunnels"].values())


def _or_door_realization(any_door: Gadget) -> Realization:
    """Realize the directed open-required door out of any door variant."""
    if any_door.name == DOOR:
        net = _identity_network(any_door)
    else:
        net = directify(any_door)
    open_net = net
    closed = {inst.id: inst.initial_state for inst in net.instances}
    opened = dict(closed)
    for inst in net.instances:
        if inst.id == "d":
            opened[inst.id] = "open"
    port_map = {loc: loc for loc in _door_gadget().locations}
    return Realization(net, port_map, {"closed": closed, "open": opened})


def _identity_network(door: Gadget) -> Network:
    inst = Instance("d", door, "closed")
    att = {("d", loc): loc for loc in door.locations}
    return Network([inst], att, list(door.locations), name=f"identity.{door.name}")


def universal_pipeline(any_door: Gadget, target: Gadget, initial_state: str | None = None) -> Network:
    """Chain door normalization, the universality compiler, and substitution:
    a network of any_door instances that verifies against target."""
    shape = _door_shape(any_door)
    if shape["kind"] != "door":
        raise CompileError("not-a-door", any_door.name)
    compiled = compile_universal(target, initial_state)
    realization = _or_door_realization(any_door)
    return substitute(compiled, {DOOR: realization})
