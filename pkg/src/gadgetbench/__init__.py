"""gadgetbench: a workbench for door-gadget motion planning.

Model gadgets as finite transition systems, compose them into (optionally
planar) networks, decide agent reachability, verify that networks simulate
target gadgets, and compile arbitrary gadgets into door networks.
"""

from .core import (
    DoorCase,
    Gadget,
    PlanarEmbedding,
    StructureReport,
    Transition,
    canonical_embedding,
    classify_planar_door_case,
    classify_structure,
    make_gadget,
    transitive_closure,
    validate_gadget,
)
from .network import (
    CapExceeded,
    Configuration,
    EpisodeLabel,
    InducedLTS,
    Instance,
    Network,
    NetworkError,
    Realization,
    SolveResult,
    induced_behavior,
    legal_moves,
    reachable_configurations,
    solve,
    substitute,
)
from .planarity import PlanarityReport, check_planarity
from .verify import SimReport, check_simulation, closure_lts, simulation_preorder

__all__ = [
    "CapExceeded",
    "Configuration",
    "DoorCase",
    "EpisodeLabel",
    "Gadget",
    "InducedLTS",
    "Instance",
    "Network",
    "NetworkError",
    "PlanarEmbedding",
    "PlanarityReport",
    "Realization",
    "SimReport",
    "SolveResult",
    "StructureReport",
    "Transition",
    "canonical_embedding",
    "check_planarity",
    "check_simulation",
    "classify_planar_door_case",
    "classify_structure",
    "closure_lts",
    "induced_behavior",
    "legal_moves",
    "make_gadget",
    "reachable_configurations",
    "simulation_preorder",
    "solve",
    "substitute",
    "transitive_closure",
    "validate_gadget",
]
