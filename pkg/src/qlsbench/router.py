"""Baseline placement and swap-insertion routing.

This is the reference point other tools get compared against, so it aims
for transparent, deterministic behavior rather than routing quality: gates
go down in input order, each as early as its physical operands allow, and
a blocked two-qubit gate walks its operands together one SWAP at a time
along shortest paths.

Placement strategies:

* identity: logical qubit i starts on physical qubit i;
* degree-greedy: busiest logical qubits (most distinct two-qubit partners)
  onto the best-connected physical qubits;
* monomorphism-try: backtracking search for an embedding of the circuit's
  interaction graph into the device, which routes with zero SWAPs when it
  succeeds; falls back to degree-greedy when the search space is exhausted
  or the node budget runs out.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .circuits import Circuit
from .devices import DeviceGraph
from .verify import Mapping, ScheduledCircuit, ScheduledGate

STRATEGIES = ("identity", "degree-greedy", "monomorphism-try")


class RouteError(RuntimeError):
    """The device cannot run the circuit as configured."""


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class RouterConfig:
    strategy: str = "degree-greedy"
    lookahead: int = 5
    max_monomorphism_nodes: int = 200_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(
                f"unknown strategy {self.strategy!r}, expected one of {STRATEGIES}"
            )
        if self.lookahead < 0:
            raise ValueError(f"lookahead must be >= 0, got {self.lookahead}")
        if self.max_monomorphism_nodes < 0:
            raise ValueError("max_monomorphism_nodes must be >= 0")


def _interaction_adjacency(circuit: Circuit) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(circuit.num_qubits)]
    for a, b in circuit.two_qubit_pairs():
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _degree_greedy(circuit: Circuit, device: DeviceGraph) -> Mapping:
    adj = _interaction_adjacency(circuit)
    by_busyness = sorted(
        range(circuit.num_qubits), key=lambda q: (-len(adj[q]), q)
    )
    by_connectivity = sorted(
        range(device.num_qubits), key=lambda p: (-device.degree(p), p)
    )
    assignment = [0] * circuit.num_qubits
    for q, p in zip(by_busyness, by_connectivity):
        assignment[q] = p
    return Mapping(tuple(assignment))


def _try_embedding(
    circuit: Circuit, device: DeviceGraph, config: RouterConfig
) -> Mapping | None:
    adj = _interaction_adjacency(circuit)
    n = circuit.num_qubits

    # most-constrained-first vertex order: most already-placed neighbors,
    # then highest degree
    order: list[int] = []
    placed = [False] * n
    for _ in range(n):
        v = max(
            (q for q in range(n) if not placed[q]),
            key=lambda q: (sum(placed[u] for u in adj[q]), len(adj[q]), -q),
        )
        order.append(v)
        placed[v] = True

    rng = random.Random(config.seed)
    budget = config.max_monomorphism_nodes
    assignment = [-1] * n
    used = [False] * device.num_qubits

    def backtrack(k: int) -> bool:
        nonlocal budget
        if budget <= 0:
            raise _BudgetExhausted
        budget -= 1
        if k == n:
            return True
        v = order[k]
        anchors = [assignment[u] for u in adj[v] if assignment[u] != -1]
        if anchors:
            candidates = set(device.neighbors(anchors[0]))
            for p in anchors[1:]:
                candidates &= set(device.neighbors(p))
            pool = [p for p in sorted(candidates) if not used[p]]
        else:
            pool = [p for p in range(device.num_qubits) if not used[p]]
        rng.shuffle(pool)
        for p in pool:
            assignment[v] = p
            used[p] = True
            if backtrack(k + 1):
                return True
            assignment[v] = -1
            used[p] = False
        return False

    try:
        if backtrack(0):
            return Mapping(tuple(assignment))
    except _BudgetExhausted:
        pass
    return None


def place(circuit: Circuit, device: DeviceGraph, config: RouterConfig) -> Mapping:
    """Pick the initial logical-to-physical assignment."""
    if circuit.num_qubits > device.num_qubits:
        raise RouteError(
            f"{circuit.num_qubits} logical qubits do not fit on "
            f"{device.name} ({device.num_qubits} qubits)"
        )
    if config.strategy == "identity":
        return Mapping(tuple(range(circuit.num_qubits)))
    if config.strategy == "monomorphism-try":
        embedded = _try_embedding(circuit, device, config)
        if embedded is not None:
            return embedded
    return _degree_greedy(circuit, device)


def route(
    circuit: Circuit, device: DeviceGraph, config: RouterConfig | None = None
) -> ScheduledCircuit:
    """Produce a schedule the verifier accepts, inserting SWAPs as needed.

    Deterministic for a fixed config: swap choices break ties by the
    summed distance of the next few pending two-qubit gates, then by the
    lower qubit pair.
    """
    if config is None:
        config = RouterConfig()
    if device.directed:
        raise RouteError("the baseline router only targets undirected devices")
    mapping = place(circuit, device, config)

    dist_rows: dict[int, list[int]] = {}

    def dist(a: int, b: int) -> int:
        if a not in dist_rows:
            dist_rows[a] = device.distances_from(a)
        return dist_rows[a][b]

    position = {q: mapping[q] for q in range(circuit.num_qubits)}
    occupant = {p: q for q, p in position.items()}
    avail = [0] * device.num_qubits
    out: list[ScheduledGate] = []

    pending_pairs = [
        tuple(g.qubits) for g in circuit.gates if len(g.qubits) == 2
    ]
    pair_cursor = 0

    def lookahead_cost(swapped: dict[int, int]) -> int:
        total = 0
        upcoming = pending_pairs[pair_cursor + 1 : pair_cursor + 1 + config.lookahead]
        for a, b in upcoming:
            total += dist(swapped.get(a, position[a]), swapped.get(b, position[b]))
        return total

    for gate in circuit.gates:
        if len(gate.qubits) == 1:
            p = position[gate.qubits[0]]
            t = avail[p] + 1
            avail[p] = t
            out.append(ScheduledGate(t, gate.label, (p,)))
            continue
        a, b = gate.qubits
        if dist(position[a], position[b]) < 0:
            raise RouteError(
                f"operands of {gate.label} sit in different components "
                f"of {device.name}"
            )
        while not device.has_edge(position[a], position[b]):
            pa, pb = position[a], position[b]
            best: tuple[tuple[int, int, int, int], int, int] | None = None
            for p, anchor in ((pa, pb), (pb, pa)):
                for w in device.neighbors(p):
                    new_d = dist(w, anchor)
                    if new_d >= dist(p, anchor):
                        continue
                    # score the board as if (p, w) had swapped
                    moved = {occupant[p]: w}
                    if w in occupant:
                        moved[occupant[w]] = p
                    key = (new_d, lookahead_cost(moved), min(p, w), max(p, w))
                    if best is None or key < best[0]:
                        best = (key, p, w)
            assert best is not None  # connected and non-adjacent leaves a move
            _, p, w = best
            t = max(avail[p], avail[w]) + 1
            avail[p] = avail[w] = t
            out.append(ScheduledGate(t, "swap", (p, w), is_swap=True))
            qp = occupant.pop(p)
            qw = occupant.pop(w, None)
            position[qp] = w
            occupant[w] = qp
            if qw is not None:
                position[qw] = p
                occupant[p] = qw
        pa, pb = position[a], position[b]
        t = max(avail[pa], avail[pb]) + 1
        avail[pa] = avail[pb] = t
        out.append(ScheduledGate(t, gate.label, (pa, pb)))
        pair_cursor += 1

    return ScheduledCircuit(device, mapping, tuple(out))
