"""Deterministic Graphviz DOT export for gadgets and networks.

Gadgets are record-shaped nodes with ports in embedding order; transitions
are drawn between ports and colored by tunnel role: open green, traverse
blue, close red.
"""

from __future__ import annotations

from .core import Gadget, ROLE_CLOSE, ROLE_OPEN, ROLE_TRAVERSE
from .network import Network

_ROLE_COLOR = {ROLE_OPEN: "green", ROLE_TRAVERSE: "blue", ROLE_CLOSE: "red"}


def _q(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def _port_order(g: Gadget) -> list[str]:
    return list(g.embedding.cycle) if g.embedding is not None else list(g.locations)


def _record_label(g: Gadget, title: str) -> str:
    cells = "|".join(f"<{loc}> {loc}" for loc in _port_order(g))
    return f"{{ {title} | {{ {cells} }} }}"


def _transition_color(g: Gadget, loc: str) -> str:
    return _ROLE_COLOR.get(g.role_map.get(loc, ""), "black")


def gadget_dot(g: Gadget) -> str:
    out = ["digraph gadget {", "  rankdir=LR;"]
    out.append(f"  {_q(g.name)} [shape=record, label={_q(_record_label(g, g.name))}];")
    for t in g.transitions:
        color = _transition_color(g, t.from_location)
        label = f"{t.from_state}->{t.to_state}"
        out.append(
            f"  {_q(g.name)}:{_q(t.from_location)} -> {_q(g.name)}:{_q(t.to_location)}"
            f" [color={color}, label={_q(label)}];"
        )
    out.append("}")
    return "\n".join(out) + "\n"


def network_dot(net: Network) -> str:
    out = ["digraph network {", "  rankdir=LR;"]
    for inst in net.instances:
        g = inst.gadget
        title = f"{inst.id}: {g.name} [{inst.initial_state}]"
        out.append(f"  {_q(inst.id)} [shape=record, label={_q(_record_label(g, title))}];")
        for t in g.transitions:
            color = _transition_color(g, t.from_location)
            out.append(
                f"  {_q(inst.id)}:{_q(t.from_location)} -> {_q(inst.id)}:{_q(t.to_location)}"
                f" [color={color}, style=dashed, constraint=false];"
            )
    ext = set(net.externals)
    for node in net.nodes:
        shape = "doublecircle" if node in ext else "point"
        out.append(f"  {_q('node:' + node)} [shape={shape}, label={_q(node if node in ext else '')}];")
    for inst in net.instances:
        for loc in inst.gadget.locations:
            node = net.attachment[(inst.id, loc)]
            out.append(f"  {_q(inst.id)}:{_q(loc)} -> {_q('node:' + node)} [dir=none, color=gray];")
    out.append("}")
    return "\n".join(out) + "\n"
