"""Gadgets as finite transition systems.

A gadget has a finite set of states and locations; an agent entering at a
location may leave at another location while the gadget changes state.  This
module defines the value types plus the structural analyses that do not need
a surrounding network: validation, transitive closure of the state-location
graph, the deterministic/reversible/k-tunnel classifiers, door taxonomy, and
the cyclic-order machinery for planar door cases.

All values are immutable; functions here are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

IDENT_RE = re.compile(r"^[A-Za-z0-9_]+$")
NAME_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")

ROLE_OPEN = "open"
ROLE_TRAVERSE = "traverse"
ROLE_CLOSE = "close"
ROLE_OTHER = "other"
ROLES = (ROLE_OPEN, ROLE_TRAVERSE, ROLE_CLOSE, ROLE_OTHER)

INTERNAL_CROSSING = "internal-crossing"

# The twelve crossing-free cyclic port orders of a fully directed door, keyed
# by case number.  Uppercase letters are entrances (or the open port), lowercase
# are exits-only.
DOOR_CASE_NAMES = {
    1: "OcCTt",
    2: "OTtCc",
    3: "OCcTt",
    4: "OTtcC",
    5: "OtToCc",
    6: "OTtoCc",
    7: "OtTocC",
    8: "OTtocC",
    9: "OtcCT",
    10: "OTcCt",
    11: "OCTtc",
    12: "OcTtC",
}


@dataclass(frozen=True, order=True)
class Transition:
    """One traversal (from_state, from_location) -> (to_state, to_location).

    from_location == to_location models a port: the agent stays put while the
    state may change.
    """

    from_state: str
    from_location: str
    to_state: str
    to_location: str

    def reversed(self) -> "Transition":
        return Transition(self.to_state, self.to_location, self.from_state, self.from_location)


@dataclass(frozen=True)
class PlanarEmbedding:
    """Counterclockwise cyclic order of a gadget's locations.

    Two embeddings are the same embedding when their cycles agree up to
    rotation and reflection.
    """

    cycle: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))

    def canonical(self) -> str:
        return canonical_cycle(self.cycle)

    def equivalent(self, other: "PlanarEmbedding") -> bool:
        return self.canonical() == other.canonical()


def canonical_cycle(cycle: tuple[str, ...] | list[str]) -> str:
    """Lexicographically minimal string over all rotations of the cycle and of
    its reversal; equal canons mean the same cyclic order up to rotation and
    reflection."""
    items = tuple(cycle)
    if not items:
        return ""
    candidates = []
    for seq in (items, items[::-1]):
        for i in range(len(seq)):
            candidates.append(",".join(seq[i:] + seq[:i]))
    return min(candidates)


@dataclass(frozen=True)
class Gadget:
    name: str
    states: tuple[str, ...]
    locations: tuple[str, ...]
    transitions: tuple[Transition, ...]
    embedding: PlanarEmbedding | None = None
    roles: tuple[tuple[str, str], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "locations", tuple(self.locations))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if self.roles is not None:
            object.__setattr__(self, "roles", tuple(tuple(r) for r in self.roles))

    @property
    def role_map(self) -> dict[str, str]:
        return dict(self.roles) if self.roles is not None else {}

    def transitions_from(self, state: str, location: str) -> list[Transition]:
        return [t for t in self.transitions if t.from_state == state and t.from_location == location]

    def with_name(self, name: str) -> "Gadget":
        return Gadget(name, self.states, self.locations, self.transitions, self.embedding, self.roles)


def make_gadget(
    name: str,
    states: list[str] | tuple[str, ...],
    locations: list[str] | tuple[str, ...],
    transitions: list[tuple[str, str, str, str] | Transition],
    embedding: list[str] | tuple[str, ...] | None = None,
    roles: dict[str, str] | None = None,
) -> Gadget:
    """Convenience constructor; validates and raises on a malformed gadget."""
    ts = tuple(t if isinstance(t, Transition) else Transition(*t) for t in transitions)
    emb = PlanarEmbedding(tuple(embedding)) if embedding is not None else None
    role_items = tuple(sorted(roles.items())) if roles is not None else None
    g = Gadget(name, tuple(states), tuple(locations), ts, emb, role_items)
    problems = validate_gadget(g)
    if problems:
        raise ValueError(f"invalid gadget {name!r}: " + "; ".join(problems))
    return g


def validate_gadget(g: Gadget) -> list[str]:
    """Return the list of invariant violations (empty iff the gadget is valid).

    Each violation names the offending identifier.
    """
    problems: list[str] = []
    if not NAME_RE.match(g.name or ""):
        problems.append(f"bad-name {g.name!r}")
    for s in g.states:
        if not IDENT_RE.match(s):
            problems.append(f"bad-state-identifier {s!r}")
    for loc in g.locations:
        if not IDENT_RE.match(loc):
            problems.append(f"bad-location-identifier {loc!r}")
    seen: set[str] = set()
    for s in g.states:
        if s in seen:
            problems.append(f"duplicate-state {s!r}")
        seen.add(s)
    seen = set()
    for loc in g.locations:
        if loc in seen:
            problems.append(f"duplicate-location {loc!r}")
        seen.add(loc)
    states = set(g.states)
    locs = set(g.locations)
    for t in g.transitions:
        if t.from_state not in states:
            problems.append(f"unknown-state {t.from_state!r}")
        if t.to_state not in states:
            problems.append(f"unknown-state {t.to_state!r}")
        if t.from_location not in locs:
            problems.append(f"unknown-location {t.from_location!r}")
        if t.to_location not in locs:
            problems.append(f"unknown-location {t.to_location!r}")
    seen_t: set[Transition] = set()
    for t in g.transitions:
        if t in seen_t:
            problems.append(f"duplicate-transition {t}")
        seen_t.add(t)
    if g.embedding is not None:
        if sorted(g.embedding.cycle) != sorted(g.locations):
            problems.append("embedding-not-permutation")
    if g.roles is not None:
        role_locs = [loc for loc, _ in g.roles]
        if sorted(role_locs) != sorted(g.locations):
            problems.append("roles-not-total")
        for loc, role in g.roles:
            if role not in ROLES:
                problems.append(f"unknown-role {role!r}")
    return problems


def transitive_closure(g: Gadget) -> Gadget:
    """Close the gadget's state-location graph under reachability.

    The result has a transition (s,l) -> (s',l') iff (s',l') is reachable from
    (s,l) via g's transitions; reflexive pairs are included by convention so
    that an agent may always enter a location and immediately leave.
    """
    succ: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for t in g.transitions:
        succ.setdefault((t.from_state, t.from_location), []).append((t.to_state, t.to_location))
    closed: list[Transition] = []
    for s in g.states:
        for loc in g.locations:
            start = (s, loc)
            reach = {start}
            stack = [start]
            while stack:
                cur = stack.pop()
                for nxt in succ.get(cur, ()):
                    if nxt not in reach:
                        reach.add(nxt)
                        stack.append(nxt)
            for s2, l2 in sorted(reach):
                closed.append(Transition(s, loc, s2, l2))
    return Gadget(g.name, g.states, g.locations, tuple(sorted(closed)), g.embedding, g.roles)


@dataclass(frozen=True)
class DoorClass:
    directedness: str  # directed | undirected | mixed
    open_mode: str  # open-required | open-optional


@dataclass(frozen=True)
class StructureReport:
    deterministic: bool
    reversible: bool
    k_tunnel: tuple[int, tuple[tuple[str, str], ...]] | None
    door_class: DoorClass | None


class MissingRolesError(ValueError):
    pass


def _tunnel_pairing(g: Gadget) -> tuple[int, tuple[tuple[str, str], ...]] | None:
    """Perfect pairing of locations such that every transition stays within one
    pair, or None.  A same-location transition (a port) breaks the pairing."""
    partner: dict[str, str] = {}
    for t in g.transitions:
        a, b = t.from_location, t.to_location
        if a == b:
            return None
        for x, y in ((a, b), (b, a)):
            if x in partner and partner[x] != y:
                return None
            partner[x] = y
    loose = [loc for loc in g.locations if loc not in partner]
    if len(loose) % 2:
        return None
    pairs: list[tuple[str, str]] = []
    done: set[str] = set()
    for loc in g.locations:
        if loc in done or loc not in partner:
            continue
        pairs.append((loc, partner[loc]))
        done.update((loc, partner[loc]))
    for i in range(0, len(loose), 2):
        pairs.append((loose[i], loose[i + 1]))
    return len(pairs), tuple(pairs)


def _tunnels_by_role(g: Gadget, role: str) -> list[str]:
    return [loc for loc, r in (g.roles or ()) if r == role]


def _tunnel_direction(g: Gadget, pair: tuple[str, str]) -> str:
    """directed / undirected / none for the tunnel between two locations."""
    a, b = pair
    fwd = any(t.from_location == a and t.to_location == b for t in g.transitions)
    back = any(t.from_location == b and t.to_location == a for t in g.transitions)
    if fwd and back:
        return "undirected"
    if fwd or back:
        return "directed"
    return "none"


def _door_class(g: Gadget) -> DoorClass:
    open_locs = _tunnels_by_role(g, ROLE_OPEN)
    traverse_locs = _tunnels_by_role(g, ROLE_TRAVERSE)
    close_locs = _tunnels_by_role(g, ROLE_CLOSE)
    if len(open_locs) == 1:
        open_mode = "open-optional"
        tunnels = [tuple(traverse_locs), tuple(close_locs)]
    elif len(open_locs) == 2:
        open_mode = "open-required"
        tunnels = [tuple(open_locs), tuple(traverse_locs), tuple(close_locs)]
    else:
        raise MissingRolesError("not-a-door: open role must mark one port or one tunnel")
    if len(traverse_locs) != 2 or len(close_locs) != 2:
        raise MissingRolesError("not-a-door: traverse and close roles must each mark a tunnel")
    dirs = {_tunnel_direction(g, t) for t in tunnels}  # type: ignore[arg-type]
    if dirs == {"directed"}:
        directedness = "directed"
    elif dirs == {"undirected"}:
        directedness = "undirected"
    else:
        directedness = "mixed"
    return DoorClass(directedness, open_mode)


def classify_structure(g: Gadget) -> StructureReport:
    """Deterministic / reversible / k-tunnel classification, plus the door
    class when roles are present.

    A same-location transition counts as nondeterministic: taking it is always
    the agent's choice, since staying put is also possible.
    """
    outgoing: dict[tuple[str, str], int] = {}
    has_port = False
    for t in g.transitions:
        outgoing[(t.from_state, t.from_location)] = outgoing.get((t.from_state, t.from_location), 0) + 1
        if t.from_location == t.to_location:
            has_port = True
    deterministic = not has_port and all(n <= 1 for n in outgoing.values())
    tset = set(g.transitions)
    reversible = all(t.reversed() in tset for t in g.transitions)
    k_tunnel = _tunnel_pairing(g)
    door_class = _door_class(g) if g.roles is not None else None
    return StructureReport(deterministic, reversible, k_tunnel, door_class)


def _chords_cross(pair_a: tuple[int, int], pair_b: tuple[int, int]) -> bool:
    """True iff two chords, given by endpoint positions on a cycle, interleave
    (would cross when drawn inside the disk)."""
    a0, a1 = sorted(pair_a)
    b0, b1 = pair_b
    return (a0 < b0 < a1) != (a0 < b1 < a1)


@dataclass(frozen=True)
class DoorCase:
    number: int
    order: str  # e.g. "OTtocC"

    @property
    def slug(self) -> str:
        return f"case-{self.number}-{self.order}"


_CASE_BY_CANON = {canonical_cycle(tuple(name)): DoorCase(n, name) for n, name in DOOR_CASE_NAMES.items()}
assert len(_CASE_BY_CANON) == 12


def _door_letters(g: Gadget) -> list[str]:
    """Letter per location in embedding order: O/o, T/t, C/c per role and
    traversal direction (uppercase = entrance or port)."""
    roles = g.role_map
    letters: dict[str, str] = {}
    for role, up, low in ((ROLE_OPEN, "O", "o"), (ROLE_TRAVERSE, "T", "t"), (ROLE_CLOSE, "C", "c")):
        locs = _tunnels_by_role(g, role)
        if len(locs) == 1 and role == ROLE_OPEN:
            letters[locs[0]] = "O"
            continue
        if len(locs) != 2:
            raise MissingRolesError(f"not-a-door: role {role} marks {len(locs)} locations")
        a, b = locs
        fwd = any(t.from_location == a and t.to_location == b for t in g.transitions)
        back = any(t.from_location == b and t.to_location == a for t in g.transitions)
        if fwd and back or not (fwd or back):
            raise MissingRolesError(f"not-a-door: tunnel {role} is not directed")
        src, dst = (a, b) if fwd else (b, a)
        letters[src] = up
        letters[dst] = low
    missing = [loc for loc in g.locations if loc not in letters and roles.get(loc) != ROLE_OTHER]
    if missing:
        raise MissingRolesError(f"not-a-door: unassigned locations {missing}")
    return [letters[loc] for loc in g.embedding.cycle if loc in letters]  # type: ignore[union-attr]


def classify_planar_door_case(g: Gadget) -> DoorCase | str:
    """Name the planar case of a fully directed door, or report an internal
    crossing.

    The result is invariant under rotation and reflection of the embedding.
    An open tunnel whose two ports are adjacent in the cyclic order is first
    collapsed to an open port.
    """
    if g.roles is None:
        raise MissingRolesError("not-a-door: roles are required")
    if g.embedding is None:
        raise MissingRolesError("not-a-door: embedding is required")
    letters = _door_letters(g)
    n = len(letters)
    # Collapse an adjacent O,o pair (in either order) to a single port O.
    if "o" in letters:
        oi, ii = letters.index("O"), letters.index("o")
        if (oi + 1) % n == ii or (ii + 1) % n == oi:
            letters = [x for k, x in enumerate(letters) if k != ii]
            n -= 1
    pairs = []
    for up, low in (("T", "t"), ("C", "c"), ("O", "o")):
        if up in letters and low in letters:
            pairs.append((letters.index(up), letters.index(low)))
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if _chords_cross(pairs[i], pairs[j]):
                return INTERNAL_CROSSING
    case = _CASE_BY_CANON.get(canonical_cycle(tuple(letters)))
    if case is None:
        raise MissingRolesError(f"not-a-door: unrecognized port order {''.join(letters)}")
    return case


def canonical_embedding(e: PlanarEmbedding) -> str:
    """Canonical cyclic string of an embedding (minimal over rotations and
    reflection)."""
    return e.canonical()
