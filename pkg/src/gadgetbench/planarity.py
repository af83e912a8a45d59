"""Planarity of gadget systems.

A system is planar when it can be drawn so that every instance appears as a
disk with its ports on the boundary in the gadget's cyclic order (up to
rotation and reflection) and connections meet only at shared nodes.  The
check builds an expansion graph: each instance becomes a wheel (port cycle
plus a hub barring wires from the interior), each node becomes a vertex
joined to its attached ports, and, when the network fixes a cyclic order of
externals, an outer wheel pins them to a common face.  Because a wheel is
3-connected its rim order is forced up to reflection in any planar drawing,
so plain graph planarity of the expansion decides exactly "some assignment
of per-instance reflections embeds".
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .network import Network


class PlanarityError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class PlanarityReport:
    planar: bool
    embedding: dict | None  # rotation system: cyclic edge order per node and per instance
    obstruction: tuple[tuple[str, str], ...] | None


def port_vertex(inst_id: str, loc: str) -> str:
    return f"port:{inst_id}.{loc}"


def hub_vertex(inst_id: str) -> str:
    return f"hub:{inst_id}"


def node_vertex(node: str) -> str:
    return f"node:{node}"


OUTER_HUB = "outerhub"


def expansion_graph(net: Network) -> nx.Graph:
    """Expansion graph of the network; requires an embedding on every
    instance's gadget."""
    g = nx.Graph()
    for inst in net.instances:
        emb = inst.gadget.embedding
        if emb is None:
            raise PlanarityError("missing-embedding", f"gadget {inst.gadget.name} of {inst.id}")
        cycle = [port_vertex(inst.id, loc) for loc in emb.cycle]
        k = len(cycle)
        g.add_nodes_from(cycle)
        if k >= 2:
            for i in range(k if k > 2 else 1):
                g.add_edge(cycle[i], cycle[(i + 1) % k])
        if k >= 3:
            hub = hub_vertex(inst.id)
            for v in cycle:
                g.add_edge(hub, v)
        for loc in inst.gadget.locations:
            g.add_edge(port_vertex(inst.id, loc), node_vertex(net.attachment[(inst.id, loc)]))
    if net.external_cycle is not None and len(net.external_cycle) >= 2:
        ring = [node_vertex(e) for e in net.external_cycle]
        k = len(ring)
        for i in range(k if k > 2 else 1):
            g.add_edge(ring[i], ring[(i + 1) % k])
        for v in ring:
            g.add_edge(OUTER_HUB, v)
    return g


def trace_faces(rotation: dict[str, list[str]]) -> int:
    """Number of faces of the embedding a rotation system induces (darts
    orbited by next-after-arrival); isolated vertices contribute one face."""
    index = {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in rotation.items()}
    seen: set[tuple[str, str]] = set()
    faces = 0
    for v, nbrs in rotation.items():
        for u in nbrs:
            dart = (v, u)
            if dart in seen:
                continue
            faces += 1
            cur = dart
            while cur not in seen:
                seen.add(cur)
                a, b = cur
                nxt = rotation[b][(index[b][a] + 1) % len(rotation[b])]
                cur = (b, nxt)
    faces += sum(1 for v, nbrs in rotation.items() if not nbrs)
    return faces


def genus_is_zero(rotation: dict[str, list[str]]) -> bool:
    """Euler check V - E + F = 2 on every connected component."""
    g = nx.Graph()
    g.add_nodes_from(rotation)
    for v, nbrs in rotation.items():
        for u in nbrs:
            g.add_edge(v, u)
    for comp in nx.connected_components(g):
        sub_rot = {v: rotation[v] for v in comp}
        v_count = len(comp)
        e_count = sum(len(n) for n in sub_rot.values()) // 2
        if v_count - e_count + trace_faces(sub_rot) != 2:
            return False
    return True


def check_planarity(net: Network) -> PlanarityReport:
    """Decide planarity of the system; on success return a rotation system
    (cyclic edge order per node and per instance with chosen reflections), on
    failure a Kuratowski obstruction of the expansion graph."""
    g = expansion_graph(net)
    ok, payload = nx.check_planarity(g, counterexample=True)
    if not ok:
        edges = tuple(sorted(tuple(sorted(e)) for e in payload.edges()))
        return PlanarityReport(False, None, edges)
    data = payload.get_data()
    if not genus_is_zero(data):  # pragma: no cover - sanity on the library
        raise AssertionError("planar embedding failed the Euler check")
    nodes_rot = {}
    for node in net.nodes:
        v = node_vertex(node)
        if v in data:
            nodes_rot[node] = [u for u in data[v]]
    instances_rot = {}
    for inst in net.instances:
        emb = inst.gadget.embedding
        cycle = tuple(emb.cycle)
        reflected = False
        if len(cycle) >= 3:
            hub = hub_vertex(inst.id)
            rim = [u.rsplit(".", 1)[1] for u in data[hub]]
            reflected = not _is_rotation(rim, list(cycle))
            if reflected and not _is_rotation(rim, list(cycle)[::-1]):  # pragma: no cover
                raise AssertionError("hub rotation is not the port cycle")
        instances_rot[inst.id] = {"cycle": list(cycle), "reflected": reflected}
    embedding = {"nodes": nodes_rot, "instances": instances_rot, "rotation": data}
    return PlanarityReport(True, embedding, None)


def _is_rotation(a: list[str], b: list[str]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    return ",".join(a) in ",".join(b + b)
