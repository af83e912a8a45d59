"""Bit-exact text formats for gadgets, networks, and catalog entries.

The format is line-oriented with a `format: 1` header so diagnostics can
carry positions.  A gadget file lists states, locations, transitions (with an
`undirected:` shorthand that expands to the two directed transitions at parse
time), an optional embedding, and optional roles.  A network file imports
gadgets, declares instances, and fuses endpoints onto nodes with `connect:`
lines; locations never mentioned get their own fresh node.  An entry file is
a network plus the catalog metadata (target, port map, expectations,
provenance, notes).

Round-trip guarantee: serialize(parse(text)) is byte-identical to the
canonical form, and parse(serialize(value)) reproduces the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import Gadget, PlanarEmbedding, Transition, validate_gadget
from .network import Instance, Network

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped:
            continue
        if ":" not in stripped:
            raise ParseError(f"expected 'key: value', got {raw!r}", i, 1)
        key, _, value = stripped.partition(":")
        yield i, key.strip(), value.strip()


def _check_header(entries: list[tuple[int, str, str]], kind: str) -> None:
    if not entries:
        raise ParseError("empty file", 1)
    line, key, value = entries[0]
    if key != "format" or value != str(FORMAT_VERSION):
        raise ParseError(f"expected 'format: {FORMAT_VERSION}'", line)
    line, key, value = entries[1]
    if key != "kind" or value != kind:
        raise ParseError(f"expected 'kind: {kind}'", line)


# -- gadgets -------------------------------------------------------------


def parse_gadget(text: str) -> Gadget:
    entries = list(_lines(text))
    _check_header(entries, "gadget")
    name = None
    states: list[str] = []
    locations: list[str] = []
    transitions: list[Transition] = []
    embedding = None
    roles: list[tuple[str, str]] = []
    for line, key, value in entries[2:]:
        parts = value.split()
        if key == "name":
            name = value
        elif key == "states":
            states = parts
        elif key == "locations":
            locations = parts
        elif key == "transition":
            if len(parts) != 4:
                raise ParseError("transition needs [from_state from_loc to_state to_loc]", line)
            transitions.append(Transition(*parts))
        elif key == "undirected":
            if len(parts) != 4:
                raise ParseError("undirected needs [from_state from_loc to_state to_loc]", line)
            s, a, s2, b = parts
            transitions.append(Transition(s, a, s2, b))
            transitions.append(Transition(s, b, s2, a))
        elif key == "embedding":
            embedding = PlanarEmbedding(tuple(parts))
        elif key == "role":
            if len(parts) != 2:
                raise ParseError("role needs [location role]", line)
            roles.append((parts[0], parts[1]))
        else:
            raise ParseError(f"unknown key {key!r} in gadget file", line)
    if name is None:
        raise ParseError("missing name", entries[-1][0])
    g = Gadget(name, tuple(states), tuple(locations), tuple(transitions), embedding, tuple(roles) or None)
    problems = validate_gadget(g)
    if problems:
        raise ParseError("; ".join(problems), entries[-1][0])
    return g


def serialize_gadget(g: Gadget) -> str:
    out = [f"format: {FORMAT_VERSION}", "kind: gadget", f"name: {g.name}"]
    out.append("states: " + " ".join(g.states))
    out.append("locations: " + " ".join(g.locations))
    for t in g.transitions:
        out.append(f"transition: {t.from_state} {t.from_location} {t.to_state} {t.to_location}")
    if g.embedding is not None:
        out.append("embedding: " + " ".join(g.embedding.cycle))
    if g.roles is not None:
        for loc, role in g.roles:
            out.append(f"role: {loc} {role}")
    return "\n".join(out) + "\n"


# -- networks ------------------------------------------------------------

GadgetResolver = Callable[[str], Gadget]


def _parse_network_body(
    entries: list[tuple[int, str, str]],
    resolve: GadgetResolver,
) -> Network:
    name = "net"
    gadgets: dict[str, Gadget] = {}
    instances: list[Instance] = []
    attachment: dict[tuple[str, str], str] = {}
    externals: list[str] = []
    external_cycle = None
    start = None
    goal = None
    node_count = 0
    inst_by_id: dict[str, Instance] = {}
    for line, key, value in entries:
        parts = value.split()
        if key == "name":
            name = value
        elif key == "gadget":
            try:
                g = resolve(value)
            except KeyError:
                raise ParseError(f"unknown-gadget {value!r}", line) from None
            gadgets[value] = g
        elif key == "instance":
            if len(parts) != 3:
                raise ParseError("instance needs [id gadget state]", line)
            iid, gname, state = parts
            if gname not in gadgets:
                raise ParseError(f"unknown-gadget {gname!r} (missing gadget: line?)", line)
            g = gadgets[gname]
            if state not in g.states:
                raise ParseError(f"unknown-state {state!r} for gadget {gname}", line)
            if iid in inst_by_id:
                raise ParseError(f"duplicate instance id {iid!r}", line)
            inst = Instance(iid, g, state)
            instances.append(inst)
            inst_by_id[iid] = inst
        elif key == "connect":
            if not parts:
                raise ParseError("connect needs at least one endpoint", line)
            ext_names = [p[4:] for p in parts if p.startswith("ext:")]
            if len(ext_names) > 1:
                raise ParseError("a node may carry at most one external name", line)
            if ext_names:
                node = ext_names[0]
            else:
                node = f"n{node_count}"
                node_count += 1
            endpoint_seen = False
            for p in parts:
                if p.startswith("ext:"):
                    continue
                if "." not in p:
                    raise ParseError(f"endpoint {p!r} must be inst.location or ext:Name", line)
                iid, loc = p.rsplit(".", 1)
                if iid not in inst_by_id:
                    raise ParseError(f"unknown instance {iid!r}", line)
                if loc not in inst_by_id[iid].gadget.locations:
                    raise ParseError(f"unknown-location {loc!r} on {iid}", line)
                if (iid, loc) in attachment:
                    raise ParseError(f"{p} is attached twice", line)
                attachment[(iid, loc)] = node
                endpoint_seen = True
            if not endpoint_seen:
                raise ParseError("dangling-attachment: node with no instance location", line)
        elif key == "external":
            externals = parts
        elif key == "external-cycle":
            external_cycle = parts
        elif key == "start":
            start = value
        elif key == "goal":
            goal = value
        elif key in ("provenance", "target", "map", "expect", "planar", "note"):
            continue  # entry metadata handled by parse_entry
        else:
            raise ParseError(f"unknown key {key!r} in network file", line)
    for inst in instances:
        for loc in inst.gadget.locations:
            if (inst.id, loc) not in attachment:
                attachment[(inst.id, loc)] = f"{inst.id}.{loc}"
    return Network(instances, attachment, externals, external_cycle, start, goal, name=name)


def parse_network(text: str, resolve: GadgetResolver) -> Network:
    entries = list(_lines(text))
    _check_header(entries, "network")
    return _parse_network_body(entries[2:], resolve)


def _network_body_lines(net: Network) -> list[str]:
    out = [f"name: {net.name}"]
    seen_gadgets: list[str] = []
    for inst in net.instances:
        if inst.gadget.name not in seen_gadgets:
            seen_gadgets.append(inst.gadget.name)
    for gname in seen_gadgets:
        out.append(f"gadget: {gname}")
    for inst in net.instances:
        out.append(f"instance: {inst.id} {inst.gadget.name} {inst.initial_state}")
    endpoints_by_node: dict[str, list[str]] = {}
    for inst in net.instances:
        for loc in inst.gadget.locations:
            endpoints_by_node.setdefault(net.attachment[(inst.id, loc)], []).append(f"{inst.id}.{loc}")
    ext_set = set(net.externals)
    for node in net.nodes:
        eps = endpoints_by_node[node]
        auto_single = len(eps) == 1 and node == eps[0] and node not in ext_set
        if auto_single:
            continue
        tokens = list(eps)
        if node in ext_set:
            tokens.append(f"ext:{node}")
        out.append("connect: " + " ".join(tokens))
    if net.externals:
        out.append("external: " + " ".join(net.externals))
    if net.external_cycle is not None:
        out.append("external-cycle: " + " ".join(net.external_cycle))
    if net.start is not None:
        out.append(f"start: {net.start}")
    if net.goal is not None:
        out.append(f"goal: {net.goal}")
    return out


def serialize_network(net: Network) -> str:
    lines = [f"format: {FORMAT_VERSION}", "kind: network"] + _network_body_lines(net)
    return "\n".join(lines) + "\n"


# -- catalog entries -----------------------------------------------------


@dataclass(frozen=True)
class Entry:
    """One transcribed construction: a network bundled with its target gadget,
    port map, expectations, and provenance."""

    name: str
    network: Network
    target: str
    target_initial: str
    port_map: dict[str, str]  # network external -> target location
    expect_verdict: str = "pass"
    expect_planar: bool = False
    provenance: str = ""
    notes: tuple[str, ...] = field(default_factory=tuple)


def parse_entry(text: str, resolve: GadgetResolver) -> Entry:
    entries = list(_lines(text))
    _check_header(entries, "entry")
    net = _parse_network_body(entries[2:], resolve)
    name = net.name
    provenance = ""
    target = None
    target_initial = None
    port_map: dict[str, str] = {}
    expect_verdict = "pass"
    expect_planar = False
    notes: list[str] = []
    for line, key, value in entries[2:]:
        if key == "provenance":
            provenance = value
        elif key == "target":
            parts = value.split()
            if len(parts) != 2:
                raise ParseError("target needs [gadget initial-state]", line)
            target, target_initial = parts
        elif key == "map":
            for chunk in value.split():
                if "=" not in chunk:
                    raise ParseError(f"map chunk {chunk!r} must be EXT=location", line)
                ext, loc = chunk.split("=", 1)
                port_map[ext] = loc
        elif key == "expect":
            if value not in ("pass", "fail-soundness", "fail-completeness"):
                raise ParseError(f"unknown expectation {value!r}", line)
            expect_verdict = value
        elif key == "planar":
            if value not in ("yes", "no"):
                raise ParseError("planar must be yes or no", line)
            expect_planar = value == "yes"
        elif key == "note":
            notes.append(value)
    if target is None or target_initial is None:
        raise ParseError("missing target", entries[-1][0])
    if not provenance:
        raise ParseError("missing provenance", entries[-1][0])
    return Entry(name, net, target, target_initial, port_map, expect_verdict, expect_planar, provenance, tuple(notes))


def serialize_entry(e: Entry) -> str:
    out = [f"format: {FORMAT_VERSION}", "kind: entry"]
    out.append(f"name: {e.name}")
    out.append(f"provenance: {e.provenance}")
    out.append(f"target: {e.target} {e.target_initial}")
    out.append("map: " + " ".join(f"{ext}={loc}" for ext, loc in sorted(e.port_map.items())))
    out.append(f"expect: {e.expect_verdict}")
    out.append("planar: " + ("yes" if e.expect_planar else "no"))
    for note in e.notes:
        out.append(f"note: {note}")
    body = _network_body_lines(e.network)
    assert body[0] == f"name: {e.name}"
    out.extend(body[1:])
    return "\n".join(out) + "\n"
