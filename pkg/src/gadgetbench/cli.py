"""Command-line surface.

Exit codes: 0 expected outcome, 1 negative result (unreachable, fail verdict,
non-planar, catalog mismatch), 2 input error, 3 configuration cap exceeded.
Network and gadget arguments accept a file path or a catalog name.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

import click

from . import catalog
from .compiler import CompileError, universal_pipeline
from .core import INTERNAL_CROSSING, Gadget, classify_planar_door_case, classify_structure
from .dot import gadget_dot, network_dot
from .network import CapExceeded, Network, NetworkError, solve as solve_network
from .planarity import PlanarityError, check_planarity
from .textio import FORMAT_VERSION, ParseError, parse_gadget, parse_network, serialize_network
from .verify import check_simulation

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


class CliInputError(Exception):
    pass


def _resolve_gadget(name: str) -> Gadget:
    p = Path(name)
    if p.exists():
        return parse_gadget(p.read_text())
    try:
        return catalog.gadget(name)
    except KeyError:
        raise CliInputError(f"unknown gadget {name!r} (no such file or catalog name)") from None


def _resolve_network(name: str):
    """Returns (network, entry-or-None)."""
    p = Path(name)
    if p.exists():
        return parse_network(p.read_text(), _resolve_gadget), None
    try:
        e = catalog.entry(name)
        return e.network, e
    except KeyError:
        raise CliInputError(f"unknown network {name!r} (no such file or catalog entry)") from None


def _fail(exc: Exception) -> int:
    click.echo(f"error: {exc}", err=True)
    return EXIT_INPUT


@click.group()
def main():
    """Workbench for door-gadget motion planning."""


@main.command("solve")
@click.option("--network", "network_ref", required=True, help="network file or catalog entry name")
@click.option("--cap", type=int, default=None, help="configuration cap")
def solve_cmd(network_ref, cap):
    """Decide start-to-goal reachability and print a witness."""
    try:
        net, _ = _resolve_network(network_ref)
        result = solve_network(net, **({"cap": cap} if cap else {}))
    except (ParseError, CliInputError, NetworkError) as exc:
        sys.exit(_fail(exc))
    except CapExceeded as exc:
        click.echo(f"cap-exceeded: {exc}")
        sys.exit(EXIT_CAP)
    if not result.reachable:
        click.echo("unreachable")
        sys.exit(EXIT_NEGATIVE)
    click.echo(f"reachable in {len(result.witness)} moves")
    for step in result.witness:
        t = step.transition
        click.echo(f"  {step.instance}: ({t.from_state},{t.from_location}) -> ({t.to_state},{t.to_location})")
    sys.exit(EXIT_OK)


@main.command("verify")
@click.option("--network", "network_ref", required=True, help="network file or catalog entry name")
@click.option("--target", "target_ref", default=None, help="target gadget (file or catalog name)")
@click.option("--initial", default=None, help="target initial state")
@click.option("--map", "map_spec", default=None, help="port map EXT=loc[,EXT=loc...]")
@click.option("--cap", type=int, default=None)
def verify_cmd(network_ref, target_ref, initial, map_spec, cap):
    """Check that a network simulates a target gadget (mutual similarity)."""
    try:
        net, entry = _resolve_network(network_ref)
        if target_ref is None:
            if entry is None:
                raise CliInputError("--target is required for network files")
            target_ref = entry.target
        target = _resolve_gadget(target_ref)
        if initial is None:
            initial = entry.target_initial if entry is not None and entry.target == target_ref else target.states[0]
        if map_spec:
            port_map = dict(chunk.split("=", 1) for chunk in map_spec.replace(",", " ").split())
        elif entry is not None:
            port_map = entry.port_map
        else:
            port_map = {e: e for e in net.externals}
        report = check_simulation(net, target, initial, port_map, cap=cap)
    except (ParseError, CliInputError, NetworkError, ValueError) as exc:
        sys.exit(_fail(exc))
    except CapExceeded as exc:
        click.echo(f"cap-exceeded: {exc}")
        sys.exit(EXIT_CAP)
    click.echo(f"verdict: {report.verdict}")
    if report.counterexample is not None:
        click.echo("counterexample:")
        for (a, b), lab in zip(report.counterexample.pairs, report.counterexample.labels):
            click.echo(f"  at ({a} | {b}) move {lab[0]} -> {lab[1]}")
    sys.exit(EXIT_OK if report.verdict == "pass" else EXIT_NEGATIVE)


@main.command("planarity")
@click.option("--network", "network_ref", required=True)
def planarity_cmd(network_ref):
    """Check whether the gadget system is planar."""
    try:
        net, entry = _resolve_network(network_ref)
        if entry is not None:
            net = catalog.store.pinned_network(entry)
        report = check_planarity(net)
    except (ParseError, CliInputError, NetworkError, PlanarityError) as exc:
        sys.exit(_fail(exc))
    if report.planar:
        click.echo("planar")
        for inst_id, rec in report.embedding["instances"].items():
            click.echo(f"  {inst_id}: cycle {' '.join(rec['cycle'])}" + (" (reflected)" if rec["reflected"] else ""))
        sys.exit(EXIT_OK)
    click.echo("non-planar")
    click.echo("obstruction edges:")
    for a, b in report.obstruction:
        click.echo(f"  {a} -- {b}")
    sys.exit(EXIT_NEGATIVE)


@main.command("compile")
@click.option("--door", "door_ref", required=True, help="door variant (file or catalog name)")
@click.option("--target", "target_ref", required=True, help="gadget to simulate")
@click.option("--initial", default=None, help="designated initial state of the target")
@click.option("--output", "-o", type=click.Path(), default=None, help="output network file (default stdout)")
@click.option("--format-version", type=int, default=FORMAT_VERSION, show_default=True)
def compile_cmd(door_ref, target_ref, initial, output, format_version):
    """Compile a gadget into a network of door instances (universal pipeline)."""
    try:
        if format_version != FORMAT_VERSION:
            raise CliInputError(f"unsupported format version {format_version}")
        door = _resolve_gadget(door_ref)
        target = _resolve_gadget(target_ref)
        net = universal_pipeline(door, target, initial)
    except (ParseError, CliInputError, NetworkError, CompileError) as exc:
        sys.exit(_fail(exc))
    text = serialize_network(net)
    if output:
        Path(output).write_text(text)
        click.echo(f"wrote {output} ({len(net.instances)} instances)")
    else:
        click.echo(text, nl=False)
    sys.exit(EXIT_OK)


@main.group("catalog")
def catalog_group():
    """Catalog of gadgets and transcribed constructions."""


@catalog_group.command("gadgets")
def catalog_gadgets_cmd():
    for name in catalog.list_gadgets():
        click.echo(name)
    sys.exit(EXIT_OK)


@catalog_group.command("list")
def catalog_list_cmd():
    for name in catalog.list_constructions():
        click.echo(name)
    sys.exit(EXIT_OK)


@catalog_group.command("verify")
@click.option("--cap", type=int, default=None)
@click.option("--seed", type=int, default=None, help="shuffle verification order (results are order-independent)")
def catalog_verify_cmd(cap, seed):
    """Verify every catalog entry against its expectations."""
    rows = catalog.verify_all(cap)
    if seed is not None:
        rows = list(rows)
        random.Random(seed).shuffle(rows)
    capped = False
    mismatched = False
    for row in rows:
        planar = "-" if row.planar is None else ("planar" if row.planar else "non-planar")
        status = "ok" if row.ok else "MISMATCH"
        extra = f" error={row.error}" if row.error else ""
        click.echo(
            f"{row.name:28s} {row.verdict:18s} (expect {row.expected}) {planar:10s}"
            f" cfg={row.configurations:6d} {row.seconds:6.2f}s {status}{extra}"
        )
        if row.error and "cap" in row.error.lower():
            capped = True
        if not row.ok:
            mismatched = True
    click.echo(f"{sum(1 for r in rows if r.ok)}/{len(rows)} entries match expectations")
    if capped:
        sys.exit(EXIT_CAP)
    sys.exit(EXIT_NEGATIVE if mismatched else EXIT_OK)


@main.command("classify")
@click.option("--gadget", "gadget_ref", required=True, help="gadget file or catalog name")
def classify_cmd(gadget_ref):
    """Print the structural classification of a gadget."""
    try:
        g = _resolve_gadget(gadget_ref)
        report = classify_structure(g)
    except (ParseError, CliInputError, ValueError) as exc:
        sys.exit(_fail(exc))
    click.echo(f"deterministic: {report.deterministic}")
    click.echo(f"reversible: {report.reversible}")
    if report.k_tunnel is not None:
        k, pairs = report.k_tunnel
        click.echo(f"k-tunnel: {k} " + " ".join(f"({a},{b})" for a, b in pairs))
    else:
        click.echo("k-tunnel: none")
    if report.door_class is not None:
        click.echo(f"door: {report.door_class.directedness} {report.door_class.open_mode}")
        if g.embedding is not None and report.door_class.directedness == "directed":
            case = classify_planar_door_case(g)
            if case == INTERNAL_CROSSING:
                click.echo("planar case: internal-crossing")
            else:
                click.echo(f"planar case: {case.number} ({case.order})")
    sys.exit(EXIT_OK)


@main.command("export-dot")
@click.option("--network", "network_ref", default=None)
@click.option("--gadget", "gadget_ref", default=None)
@click.option("--output", "-o", type=click.Path(), default=None)
def export_dot_cmd(network_ref, gadget_ref, output):
    """Emit a deterministic DOT diagram of a network or a gadget."""
    try:
        if (network_ref is None) == (gadget_ref is None):
            raise CliInputError("give exactly one of --network / --gadget")
        if network_ref is not None:
            net, _ = _resolve_network(network_ref)
            text = network_dot(net)
        else:
            text = gadget_dot(_resolve_gadget(gadget_ref))
    except (ParseError, CliInputError, NetworkError) as exc:
        sys.exit(_fail(exc))
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
