"""Entry storage and batch verification for the construction catalog.

Entries are shipped as data files (one `.entry` file per construction figure)
and parsed on first use; the verifier is the transcription oracle, so a wrong
transcription shows up as a failing entry.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from importlib import resources

from ..network import Network
from ..planarity import check_planarity
from ..textio import Entry, parse_entry
from ..verify import check_simulation
from .gadgets import gadget

_ENTRIES: dict[str, Entry] | None = None


def _load() -> dict[str, Entry]:
    global _ENTRIES
    if _ENTRIES is None:
        table: dict[str, Entry] = {}
        data = resources.files(__package__).joinpath("data")
        for item in sorted(data.iterdir(), key=lambda p: p.name):
            if not item.name.endswith(".entry"):
                continue
            e = parse_entry(item.read_text(), gadget)
            if e.name in table:
                raise ValueError(f"duplicate entry {e.name}")
            table[e.name] = e
        _ENTRIES = table
    return _ENTRIES


def entries() -> dict[str, Entry]:
    return dict(_load())


def entry(name: str) -> Entry:
    return _load()[name]


def list_constructions() -> list[str]:
    return sorted(_load())


def pinned_network(e: Entry) -> Network:
    """The entry's network with its externals pinned to the target gadget's
    cyclic port order (through the port map), for planarity checking."""
    target = gadget(e.target)
    if target.embedding is None:
        return e.network
    inverse = {loc: ext for ext, loc in e.port_map.items()}
    cycle = tuple(inverse[loc] for loc in target.embedding.cycle)
    if e.network.external_cycle is not None:
        return e.network
    return Network(
        e.network.instances,
        e.network.attachment,
        e.network.externals,
        cycle,
        e.network.start,
        e.network.goal,
        name=e.network.name,
    )


@dataclass(frozen=True)
class VerifyRow:
    name: str
    verdict: str
    expected: str
    planar: bool | None
    expect_planar: bool
    configurations: int
    seconds: float
    ok: bool
    error: str | None = None


def verify_entry(e: Entry, cap: int | None = None) -> VerifyRow:
    t0 = time.monotonic()
    stats: dict[str, int] = {}
    try:
        report = check_simulation(
            e.network, gadget(e.target), e.target_initial, e.port_map, cap=cap, stats=stats
        )
        verdict = report.verdict
        planar: bool | None = None
        if e.expect_planar:
            planar = check_planarity(pinned_network(e)).planar
        ok = verdict == e.expect_verdict and (planar is None or planar == e.expect_planar)
        return VerifyRow(
            e.name,
            verdict,
            e.expect_verdict,
            planar,
            e.expect_planar,
            stats.get("configurations", 0),
            time.monotonic() - t0,
            ok,
        )
    except Exception as exc:  # cap-exceeded is flagged per entry, not fatal
        return VerifyRow(
            e.name,
            "error",
            e.expect_verdict,
            None,
            e.expect_planar,
            stats.get("configurations", 0),
            time.monotonic() - t0,
            False,
            error=str(exc),
        )


def verify_all(cap: int | None = None) -> list[VerifyRow]:
    """Run check_simulation (and check_planarity where expected planar) on
    every entry; deterministic order."""
    return [verify_entry(e, cap) for _, e in sorted(_load().items())]


__all__ = [
    "Entry",
    "VerifyRow",
    "entries",
    "entry",
    "list_constructions",
    "pinned_network",
    "verify_all",
    "verify_entry",
]
