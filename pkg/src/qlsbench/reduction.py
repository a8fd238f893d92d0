"""Hardness construction tying optimal depth to Hamiltonian cycles.

Given an undirected connected graph G on n >= 3 vertices, build a circuit
of n levels over n logical qubits, where level l holds cx(q_{l-1},
q_{l mod n}) plus one-qubit gates on every other qubit. Each level uses
all n qubits, so a depth-n schedule on G itself must run one full level
per cycle with no idle slot anywhere. That leaves no room for SWAPs, so
the mapping is fixed throughout, and level l fits one cycle exactly when
the images of q_{l-1} and q_{l mod n} are adjacent in G. All n
constraints together say the mapping traces a Hamiltonian cycle of G.

Deciding "is there a schedule of depth n" for these instances therefore
answers Hamiltonian-cycle queries, which is what makes the general
layout-depth question hard. Both directions come with small brute-force
oracles for testing the claim on graphs where exhaustive search is
affordable.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .circuits import Circuit, Gate
from .devices import DeviceGraph
from .verify import Infeasible, Mapping, asap_schedule

DEFAULT_CYCLE_LIMIT = 12
DEFAULT_DEPTH_LIMIT = 9


@dataclass(frozen=True)
class ReductionInstance:
    device: DeviceGraph
    circuit: Circuit

    @property
    def num_levels(self) -> int:
        return self.device.num_qubits


def _check_graph(graph: DeviceGraph) -> None:
    if graph.directed:
        raise ValueError("the construction is defined for undirected graphs")
    if graph.num_qubits < 3:
        raise ValueError(
            f"need at least 3 vertices for a cycle, got {graph.num_qubits}"
        )


def build_reduction(graph: DeviceGraph) -> ReductionInstance:
    """The n-level circuit whose depth-n schedules on `graph` are exactly
    its Hamiltonian cycles."""
    _check_graph(graph)
    n = graph.num_qubits
    gates: list[Gate] = []
    for level in range(1, n + 1):
        pair = (level - 1, level % n)
        gates.append(Gate("cx", pair))
        gates.extend(
            Gate("x", (q,)) for q in range(n) if q not in pair
        )
    return ReductionInstance(graph, Circuit(n, tuple(gates)))


def mapping_from_cycle(cycle: list[int]) -> Mapping:
    """Turn an oracle cycle (closing vertex repeated) into the mapping
    that schedules the reduction circuit at depth n."""
    if len(cycle) < 4 or cycle[0] != cycle[-1]:
        raise ValueError(f"not a closed cycle: {cycle}")
    return Mapping(tuple(cycle[:-1]))


def hamiltonian_cycle_oracle(
    graph: DeviceGraph, limit: int = DEFAULT_CYCLE_LIMIT
) -> list[int] | None:
    """Backtracking search for a Hamiltonian cycle, for small graphs only.

    Returns the cycle as a vertex list with the starting vertex repeated
    at the end, or None. Deterministic: extends along ascending neighbors
    from vertex 0.
    """
    _check_graph(graph)
    n = graph.num_qubits
    if n > limit:
        raise ValueError(f"{n} vertices is past the search limit of {limit}")
    path = [0]
    on_path = [False] * n
    on_path[0] = True

    def extend() -> bool:
        if len(path) == n:
            return graph.has_edge(path[-1], 0)
        for w in graph.neighbors(path[-1]):
            if not on_path[w]:
                path.append(w)
                on_path[w] = True
                if extend():
                    return True
                path.pop()
                on_path[w] = False
        return False

    if extend():
        return path + [0]
    return None


def depth_decision_oracle(
    graph: DeviceGraph, limit: int = DEFAULT_DEPTH_LIMIT
) -> Mapping | None:
    """Decide by brute force whether the reduction circuit schedules at
    depth n on the graph, returning a witness mapping or None.

    A depth-n schedule occupies every (cycle, qubit) slot with a circuit
    gate, so no SWAP can be inserted and the mapping never changes; that
    makes trying every fixed mapping exhaustive, not just heuristic. Each
    candidate is confirmed constructively with the ASAP scheduler.
    """
    _check_graph(graph)
    n = graph.num_qubits
    if n > limit:
        raise ValueError(f"{n} vertices is past the search limit of {limit}")
    instance = build_reduction(graph)
    for perm in permutations(range(n)):
        mapping = Mapping(perm)
        scheduled = asap_schedule(instance.circuit, mapping, graph)
        if isinstance(scheduled, Infeasible):
            continue
        if scheduled.depth() == n:
            return mapping
    return None
