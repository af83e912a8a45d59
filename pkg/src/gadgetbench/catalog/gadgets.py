"""The gadget inventory.

Doors have two states and open/traverse/close tunnels; the traverse tunnel is
passable iff the door is open, the open and close tunnels force the state.
Undirected tunnels are encoded as the two directed transitions with the same
state effect.  Port-style openings are same-location transitions.  Planar
gadgets carry a counterclockwise port cycle; directed planar doors are named
for their cyclic port order with exits-only in lowercase.
"""

from __future__ import annotations

from ..core import DOOR_CASE_NAMES, Gadget, make_gadget

CLOSED, OPEN = "closed", "open"


def _door_transitions(o_kind: str, t_kind: str, c_kind: str) -> list[tuple[str, str, str, str]]:
    """o_kind: port | dir | undir; t_kind/c_kind: dir | undir."""
    ts: list[tuple[str, str, str, str]] = []
    if o_kind == "port":
        ts.append((CLOSED, "O", OPEN, "O"))
    else:
        ts += [(CLOSED, "O0", OPEN, "O1"), (OPEN, "O0", OPEN, "O1")]
        if o_kind == "undir":
            ts += [(CLOSED, "O1", OPEN, "O0"), (OPEN, "O1", OPEN, "O0")]
    ts.append((OPEN, "T0", OPEN, "T1"))
    if t_kind == "undir":
        ts.append((OPEN, "T1", OPEN, "T0"))
    ts += [(CLOSED, "C0", CLOSED, "C1"), (OPEN, "C0", CLOSED, "C1")]
    if c_kind == "undir":
        ts += [(CLOSED, "C1", CLOSED, "C0"), (OPEN, "C1", CLOSED, "C0")]
    return ts


def _door(name: str, o_kind: str, t_kind: str, c_kind: str, embedding: list[str]) -> Gadget:
    locs = (["O"] if o_kind == "port" else ["O0", "O1"]) + ["T0", "T1", "C0", "C1"]
    roles = {loc: "open" for loc in locs if loc.startswith("O")}
    roles.update({"T0": "traverse", "T1": "traverse", "C0": "close", "C1": "close"})
    return make_gadget(name, [CLOSED, OPEN], locs, _door_transitions(o_kind, t_kind, c_kind), embedding, roles)


_CASE_LETTER_LOC = {"O": "O0", "o": "O1", "T": "T0", "t": "T1", "C": "C0", "c": "C1"}


def _case_door(number: int) -> Gadget:
    order = DOOR_CASE_NAMES[number]
    open_port = "o" not in order
    cycle = [("O" if (ch == "O" and open_port) else _CASE_LETTER_LOC[ch]) for ch in order]
    return _door(
        f"door-case-{number}-{order}",
        "port" if open_port else "dir",
        "dir",
        "dir",
        cycle,
    )


def _crossing_door(number: int, cycle: list[str]) -> Gadget:
    return _door(f"door-crossing-{number}", "port", "dir", "dir", cycle)


def _scd(name: str, o_kind: str, s_kind: str, embedding: list[str]) -> Gadget:
    """Normal self-closing door: the self-closing tunnel S is passable iff
    open and closes itself; the opening port/tunnel forces open."""
    ts: list[tuple[str, str, str, str]] = []
    locs: list[str]
    if o_kind == "port":
        locs = ["O", "S0", "S1"]
        ts.append((CLOSED, "O", OPEN, "O"))
    else:
        locs = ["O0", "O1", "S0", "S1"]
        ts += [(CLOSED, "O0", OPEN, "O1"), (OPEN, "O0", OPEN, "O1")]
        if o_kind == "undir":
            ts += [(CLOSED, "O1", OPEN, "O0"), (OPEN, "O1", OPEN, "O0")]
    ts.append((OPEN, "S0", CLOSED, "S1"))
    if s_kind == "undir":
        ts.append((OPEN, "S1", CLOSED, "S0"))
    return make_gadget(name, [CLOSED, OPEN], locs, ts, embedding)


def _scd_sym(name: str, kind: str, embedding: list[str]) -> Gadget:
    """Symmetric self-closing door: the A tunnel is passable iff closed and
    opens, the B tunnel is passable iff open and closes."""
    ts = [(CLOSED, "A0", OPEN, "A1"), (OPEN, "B0", CLOSED, "B1")]
    if kind == "undir":
        ts += [(CLOSED, "A1", OPEN, "A0"), (OPEN, "B1", CLOSED, "B0")]
    return make_gadget(name, [CLOSED, OPEN], ["A0", "A1", "B0", "B1"], ts, embedding)


def _build() -> dict[str, Gadget]:
    g: list[Gadget] = []
    g.append(make_gadget("diode", ["s"], ["in", "out"], [("s", "in", "s", "out")], ["in", "out"]))
    g.append(
        make_gadget("wire", ["s"], ["a", "b"], [("s", "a", "s", "b"), ("s", "b", "s", "a")], ["a", "b"])
    )
    # Doors, drawn as a stack of parallel tunnels: open, traverse, close.
    stack_or = ["O0", "T0", "C0", "C1", "T1", "O1"]
    stack_oo = ["O", "T0", "C0", "C1", "T1"]
    g.append(_door("door-dir-or", "dir", "dir", "dir", stack_or))
    g.append(_door("door-dir-oo", "port", "dir", "dir", stack_oo))
    # Fan order: each tunnel's two ports adjacent, so chaining open into
    # traverse into close stays planar.
    g.append(_door("door-undir-or", "undir", "undir", "undir", ["O0", "O1", "T0", "T1", "C0", "C1"]))
    g.append(_door("door-undir-oo", "port", "undir", "undir", stack_oo))
    g.append(_door("door-mixed-or", "undir", "undir", "dir", stack_or))
    g.append(_door("door-mixed-oo", "port", "undir", "dir", stack_oo))
    for n in DOOR_CASE_NAMES:
        g.append(_case_door(n))
    # Directed doors whose traverse and close tunnels cross, open port in each
    # of the four boundary arcs.
    g.append(_crossing_door(1, ["O", "T0", "C0", "T1", "C1"]))
    g.append(_crossing_door(2, ["T0", "O", "C0", "T1", "C1"]))
    g.append(_crossing_door(3, ["T0", "C0", "O", "T1", "C1"]))
    g.append(_crossing_door(4, ["T0", "C0", "T1", "O", "C1"]))
    # Self-closing doors.
    g.append(_scd("scd-dir-oo", "port", "dir", ["O", "S0", "S1"]))
    g.append(_scd("scd-undir-oo", "port", "undir", ["O", "S0", "S1"]))
    g.append(_scd("scd-dir-or", "dir", "dir", ["O0", "O1", "S0", "S1"]))
    g.append(_scd("scd-undir-or", "undir", "undir", ["O0", "O1", "S0", "S1"]))
    # The other crossing-free planar type (self-closing tunnel reversed
    # relative to the opening tunnel).
    g.append(_scd("scd-dir-or-flip", "dir", "dir", ["O0", "O1", "S1", "S0"]))
    g.append(_scd_sym("scd-sym-dir", "dir", ["A0", "A1", "B0", "B1"]))
    g.append(_scd_sym("scd-sym-dir-flip", "dir", ["A0", "A1", "B1", "B0"]))
    g.append(_scd_sym("scd-sym-undir", "undir", ["A0", "A1", "B0", "B1"]))
    # Self-closing door with the opening port duplicated into two stubs; an
    # agent may pass between stubs without touching the state.
    g.append(
        make_gadget(
            "scd-2port",
            [CLOSED, OPEN],
            ["Pa", "Pb", "S0", "S1"],
            [
                (CLOSED, "Pa", OPEN, "Pa"),
                (CLOSED, "Pb", OPEN, "Pb"),
                (CLOSED, "Pa", CLOSED, "Pb"),
                (CLOSED, "Pb", CLOSED, "Pa"),
                (OPEN, "Pa", OPEN, "Pb"),
                (OPEN, "Pb", OPEN, "Pa"),
                (OPEN, "S0", CLOSED, "S1"),
            ],
            ["Pa", "Pb", "S0", "S1"],
        )
    )
    # Self-closing door with the opening port and the self-closing tunnel both
    # duplicated: two isolated port stubs, two tunnels consuming one state.
    g.append(
        make_gadget(
            "scd-2x2",
            [CLOSED, OPEN],
            ["Pa", "Pb", "Sa0", "Sa1", "Sb0", "Sb1"],
            [
                (CLOSED, "Pa", OPEN, "Pa"),
                (CLOSED, "Pb", OPEN, "Pb"),
                (OPEN, "Sa0", CLOSED, "Sa1"),
                (OPEN, "Sb0", CLOSED, "Sb1"),
            ],
            ["Pa", "Sa0", "Sa1", "Pb", "Sb1", "Sb0"],
        )
    )
    # Tripwire locks: crossing the tripwire toggles the state, the lock tunnel
    # is passable in state 1 only.
    twl = [("0", "W0", "1", "W1"), ("1", "W0", "0", "W1"), ("1", "L0", "1", "L1")]
    g.append(make_gadget("twl-par", ["0", "1"], ["W0", "W1", "L0", "L1"], twl, ["W0", "L0", "L1", "W1"]))
    g.append(make_gadget("twl-antipar", ["0", "1"], ["W0", "W1", "L0", "L1"], twl, ["W0", "L1", "L0", "W1"]))
    g.append(
        make_gadget(
            "twl-undir",
            ["0", "1"],
            ["W0", "W1", "L0", "L1"],
            twl + [("0", "W1", "1", "W0"), ("1", "W1", "0", "W0"), ("1", "L1", "1", "L0")],
            ["W0", "L0", "L1", "W1"],
        )
    )
    # Directed tripwire-lock-tripwire with antiparallel tripwires.
    g.append(
        make_gadget(
            "twlw-antipar",
            ["0", "1"],
            ["A0", "A1", "L0", "L1", "B0", "B1"],
            [
                ("0", "A0", "1", "A1"),
                ("1", "A0", "0", "A1"),
                ("1", "L0", "1", "L1"),
                ("0", "B0", "1", "B1"),
                ("1", "B0", "0", "B1"),
            ],
            ["A0", "L0", "B1", "B0", "L1", "A1"],
        )
    )
    # Crossovers: one state, two tunnels crossing without interaction.
    g.append(
        make_gadget(
            "crossover-dir",
            ["s"],
            ["X0", "X1", "Y0", "Y1"],
            [("s", "X0", "s", "X1"), ("s", "Y0", "s", "Y1")],
            ["X0", "Y0", "X1", "Y1"],
        )
    )
    g.append(
        make_gadget(
            "crossover-undir",
            ["s"],
            ["X0", "X1", "Y0", "Y1"],
            [
                ("s", "X0", "s", "X1"),
                ("s", "X1", "s", "X0"),
                ("s", "Y0", "s", "Y1"),
                ("s", "Y1", "s", "Y0"),
            ],
            ["X0", "Y0", "X1", "Y1"],
        )
    )
    # NAND gadgets: traversing either tunnel closes both, in the three planar
    # types.
    nand = [("live", "A0", "dead", "A1"), ("live", "B0", "dead", "B1")]
    nand_locs = ["A0", "A1", "B0", "B1"]
    g.append(make_gadget("nand-crossing", ["live", "dead"], nand_locs, nand, ["A0", "B0", "A1", "B1"]))
    g.append(make_gadget("nand-parallel", ["live", "dead"], nand_locs, nand, ["A0", "B0", "B1", "A1"]))
    g.append(make_gadget("nand-antiparallel", ["live", "dead"], nand_locs, nand, ["A0", "B1", "B0", "A1"]))
    # Parallel double-close door: an open tunnel opens both traverse-close
    # tunnels; traversing either closes the other.  State names say which of
    # A, B are passable.
    g.append(
        make_gadget(
            "pdc",
            ["ab", "a", "b", "none"],
            ["O0", "O1", "A0", "A1", "B0", "B1"],
            [
                ("ab", "O0", "ab", "O1"),
                ("a", "O0", "ab", "O1"),
                ("b", "O0", "ab", "O1"),
                ("none", "O0", "ab", "O1"),
                ("ab", "A0", "a", "A1"),
                ("a", "A0", "a", "A1"),
                ("ab", "B0", "b", "B1"),
                ("b", "B0", "b", "B1"),
            ],
            ["O0", "A0", "A1", "O1", "B1", "B0"],
        )
    )
    # Alternator: a pair of self-closing tunnels between p2 and p3 (top runs
    # p2->p3, bottom runs p3->p2), armed by the alternating opening ports p1
    # (top) and p4 (bottom).  States name the armed tunnels.
    g.append(
        make_gadget(
            "alternator",
            ["n", "t", "b", "tb"],
            ["p1", "p2", "p3", "p4"],
            [
                ("n", "p1", "t", "p1"),
                ("b", "p1", "tb", "p1"),
                ("n", "p4", "b", "p4"),
                ("t", "p4", "tb", "p4"),
                ("t", "p2", "n", "p3"),
                ("tb", "p2", "b", "p3"),
                ("b", "p3", "n", "p2"),
                ("tb", "p3", "t", "p2"),
            ],
            ["p1", "p2", "p3", "p4"],
        )
    )
    table = {x.name: x for x in g}
    assert len(table) == len(g)
    return table


GADGETS: dict[str, Gadget] = _build()


def gadget(name: str) -> Gadget:
    try:
        return GADGETS[name]
    except KeyError:
        raise KeyError(f"unknown-gadget {name!r}") from None


def list_gadgets() -> list[str]:
    return sorted(GADGETS)
