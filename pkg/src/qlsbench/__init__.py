"""Layout-synthesis benchmarks with known optimal schedules.

The package generates quantum-circuit benchmarks whose optimal depth and
gate count are known by construction, verifies scheduled circuits against
them, routes circuits with a baseline heuristic for comparison, and builds
the circuit family that ties depth-optimal layout to Hamiltonian cycles.
"""
from __future__ import annotations

from qlsbench.circuits import (
    Circuit,
    DependencyProfile,
    Gate,
    GateDensity,
    dependency_profile,
    emit_qasm,
    extract_density,
    parse_qasm,
)
from qlsbench.devices import (
    DeviceGraph,
    MatchingBound,
    bundled_device_names,
    load_bundled_device,
    load_device,
    make_grid,
    matching_bound,
    resolve_device,
    save_device,
)
from qlsbench.generator import (
    DENSITY_PRESETS,
    AdmissibilityError,
    GenerationError,
    GenSpec,
    PlacedGate,
    SolutionSidecar,
    benchmark_filename,
    check_admissible,
    emit_sidecar,
    generate,
    parse_sidecar,
)
from qlsbench.reduction import (
    ReductionInstance,
    build_reduction,
    depth_decision_oracle,
    hamiltonian_cycle_oracle,
    mapping_from_cycle,
)
from qlsbench.router import STRATEGIES, RouteError, RouterConfig, place, route
from qlsbench.verify import (
    VIOLATION_KINDS,
    Infeasible,
    Mapping,
    ScheduledCircuit,
    ScheduledGate,
    VerifyInconsistency,
    VerifyReport,
    Violation,
    asap_schedule,
    depth_ratio,
    emit_schedule,
    parse_schedule,
    schedule_from_sidecar,
    swap_depth_accounting,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "Circuit",
    "DENSITY_PRESETS",
    "DependencyProfile",
    "DeviceGraph",
    "Gate",
    "GateDensity",
    "GenSpec",
    "GenerationError",
    "Infeasible",
    "Mapping",
    "MatchingBound",
    "PlacedGate",
    "ReductionInstance",
    "RouteError",
    "RouterConfig",
    "STRATEGIES",
    "ScheduledCircuit",
    "ScheduledGate",
    "SolutionSidecar",
    "VIOLATION_KINDS",
    "VerifyInconsistency",
    "VerifyReport",
    "Violation",
    "asap_schedule",
    "benchmark_filename",
    "build_reduction",
    "bundled_device_names",
    "check_admissible",
    "dependency_profile",
    "depth_decision_oracle",
    "depth_ratio",
    "emit_qasm",
    "emit_schedule",
    "emit_sidecar",
    "extract_density",
    "generate",
    "hamiltonian_cycle_oracle",
    "load_bundled_device",
    "load_device",
    "make_grid",
    "mapping_from_cycle",
    "matching_bound",
    "parse_qasm",
    "parse_schedule",
    "parse_sidecar",
    "place",
    "resolve_device",
    "route",
    "save_device",
    "schedule_from_sidecar",
    "swap_depth_accounting",
    "verify",
]
