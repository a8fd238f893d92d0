"""Benchmark generation: admissibility, phases, determinism, sidecars."""
from __future__ import annotations

from fractions import Fraction

import pytest

from qlsbench.circuits import GateDensity, dependency_profile, extract_density
from qlsbench.devices import DeviceGraph, load_bundled_device, make_grid
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

OURENSE = load_bundled_device("ourense")


def spec_for(device, depth, d1, d2, seed=7, **kwargs) -> GenSpec:
    return GenSpec(device, depth, GateDensity(d1, d2), seed, **kwargs)


def assert_solution_invariants(circuit, sidecar):
    """Structural checks every generated pair must satisfy."""
    spec = sidecar.spec
    n, t = spec.device.num_qubits, spec.depth
    assert circuit.num_qubits == n
    assert len(circuit.gates) == sidecar.optimal_gate_count == len(sidecar.placed_gates)
    assert sorted(sidecar.scramble_map) == list(range(n))
    m1, m2 = spec.density.gate_counts(n, t)
    assert sum(1 for g in circuit.gates if len(g.qubits) == 1) == m1
    assert sum(1 for g in circuit.gates if len(g.qubits) == 2) == m2

    seen_slots: set[tuple[int, int]] = set()
    tau = sidecar.scramble_map
    previous_key = (0, -1)
    for gate, pg in zip(circuit.gates, sidecar.placed_gates):
        assert 1 <= pg.cycle <= t
        assert gate.qubits == tuple(tau[p] for p in pg.qubits)
        assert gate.label == ("x" if len(pg.qubits) == 1 else "cx")
        if len(pg.qubits) == 2:
            assert spec.device.has_edge(*pg.qubits)
            if spec.device.directed:
                assert pg.qubits in spec.device.edges
        for p in pg.qubits:
            slot = (pg.cycle, p)
            assert slot not in seen_slots, "two gates share a (cycle, qubit) slot"
            seen_slots.add(slot)
        key = (pg.cycle, min(gate.qubits))
        assert previous_key < key, "gates are not sorted by (cycle, lowest logical)"
        previous_key = key

    assert dependency_profile(circuit).longest_chain == t


def test_admissible_example():
    assert check_admissible(spec_for(OURENSE, 3, "0.51", "0.4")) == (8, 3)


def test_admissibility_chain_predicate():
    with pytest.raises(AdmissibilityError) as info:
        check_admissible(spec_for(OURENSE, 10, "0.1", 0))
    assert info.value.predicates == ("chain",)


def test_admissibility_capacity_predicate():
    path3 = DeviceGraph("p3", 3, [(0, 1), (1, 2)])
    with pytest.raises(AdmissibilityError) as info:
        check_admissible(spec_for(path3, 1, "0.4", "0.6"))
    assert info.value.predicates == ("capacity",)


def test_admissibility_matching_predicate():
    with pytest.raises(AdmissibilityError) as info:
        check_admissible(spec_for(OURENSE, 3, "0.05", "0.9"))
    assert info.value.predicates == ("matching",)
    assert "matching capacity" in str(info.value)


def test_generate_small_instance():
    circuit, sidecar = generate(spec_for(OURENSE, 3, "0.51", "0.4"))
    assert len(circuit.gates) == 11
    assert_solution_invariants(circuit, sidecar)


@pytest.mark.parametrize("device", [OURENSE, make_grid(3, 3), load_bundled_device("tokyo")])
@pytest.mark.parametrize("preset", ["tfl", "qse"])
def test_generate_across_devices(device, preset):
    spec = GenSpec(device, 5, DENSITY_PRESETS[preset], seed=11)
    circuit, sidecar = generate(spec)
    assert_solution_invariants(circuit, sidecar)


def test_generated_density_recovery():
    spec = spec_for(make_grid(3, 3), 9, "0.27", "0.36", seed=5)
    circuit, _ = generate(spec)
    measured = extract_density(circuit)
    slack = Fraction(2, spec.device.num_qubits * spec.depth)
    assert abs(measured.d1 - spec.density.d1) <= slack
    assert abs(measured.d2 - spec.density.d2) <= slack


def test_single_qubit_edgeless_device():
    lonely = DeviceGraph("lonely", 1, [])
    circuit, sidecar = generate(spec_for(lonely, 3, 1, 0))
    assert [g.label for g in circuit.gates] == ["x", "x", "x"]
    assert [pg.cycle for pg in sidecar.placed_gates] == [1, 2, 3]
    assert_solution_invariants(circuit, sidecar)


def test_saturated_target_fills_every_slot():
    circuit, sidecar = generate(spec_for(OURENSE, 2, 1, 0))
    assert len(circuit.gates) == 10
    assert {(pg.cycle, pg.qubits[0]) for pg in sidecar.placed_gates} == {
        (c, p) for c in (1, 2) for p in range(5)
    }
    assert_solution_invariants(circuit, sidecar)


def test_directed_device_placements_keep_orientation():
    arrow = DeviceGraph("arrow", 2, [(0, 1)], directed=True)
    circuit, sidecar = generate(spec_for(arrow, 2, 0, 1))
    assert all(pg.qubits == (0, 1) for pg in sidecar.placed_gates)
    assert_solution_invariants(circuit, sidecar)


def test_backbone_gates_overlap_consecutively():
    # reconstruct the backbone from the sidecar: the chain gate at each
    # cycle must share a physical qubit with some gate one cycle earlier
    _, sidecar = generate(spec_for(OURENSE, 6, "0.27", "0.36", seed=3))
    by_cycle: dict[int, list[tuple[int, ...]]] = {}
    for pg in sidecar.placed_gates:
        by_cycle.setdefault(pg.cycle, []).append(pg.qubits)
    for cycle in range(1, 7):
        assert by_cycle.get(cycle), f"cycle {cycle} is empty"
    for cycle in range(2, 7):
        linked = any(
            set(a) & set(b) for a in by_cycle[cycle] for b in by_cycle[cycle - 1]
        )
        assert linked, f"no dependency link into cycle {cycle}"


def test_determinism_same_seed():
    spec = spec_for(make_grid(4, 4), 7, "0.51", "0.4", seed=42)
    first = generate(spec)
    second = generate(spec)
    assert first[0] == second[0]
    assert emit_sidecar(first[1]) == emit_sidecar(second[1])


def test_different_seeds_differ():
    circuits = {
        generate(spec_for(OURENSE, 4, "0.51", "0.4", seed=s))[0] for s in range(4)
    }
    assert len(circuits) > 1


def test_initial_mapping_inverts_scramble():
    _, sidecar = generate(spec_for(OURENSE, 3, "0.51", "0.4"))
    mapping = sidecar.initial_mapping()
    for p, q in enumerate(sidecar.scramble_map):
        assert mapping[q] == p


def test_spec_validation():
    with pytest.raises(ValueError, match="depth"):
        spec_for(OURENSE, 0, "0.5", 0)
    with pytest.raises(ValueError, match="64-bit"):
        spec_for(OURENSE, 3, "0.5", 0, seed=-1)
    with pytest.raises(ValueError, match="retry_limit"):
        spec_for(OURENSE, 3, "0.5", 0, retry_limit=0)


def test_benchmark_filename():
    spec = spec_for(OURENSE, 45, "0.27", "0.36", seed=3)
    assert benchmark_filename(spec) == "ourense_45cyc_0.27_0.36_3.qasm"
    grid = spec_for(make_grid(6, 9), 5, Fraction(1, 3), 0, seed=0)
    assert benchmark_filename(grid) == "grid6x9_5cyc_1d3_0_0.qasm"


def test_sidecar_round_trip():
    for device in (OURENSE, make_grid(3, 3)):
        _, sidecar = generate(spec_for(device, 4, "0.51", "0.4", seed=9))
        text = emit_sidecar(sidecar)
        assert parse_sidecar(text) == sidecar
        assert parse_sidecar(text, device) == sidecar
        assert emit_sidecar(parse_sidecar(text)) == text


def test_sidecar_device_mismatch():
    _, sidecar = generate(spec_for(OURENSE, 3, "0.51", "0.4"))
    with pytest.raises(ValueError, match="generated for device"):
        parse_sidecar(emit_sidecar(sidecar), make_grid(2, 2))


def test_sidecar_parse_errors():
    _, sidecar = generate(spec_for(OURENSE, 3, "0.51", "0.4"))
    text = emit_sidecar(sidecar)
    with pytest.raises(ValueError, match="missing fields"):
        parse_sidecar(text.replace("tau:", "tau_gone:"))
    with pytest.raises(ValueError, match="not a permutation"):
        parse_sidecar(text.replace(f"tau: {' '.join(map(str, sidecar.scramble_map))}",
                                   "tau: 0 0 1 2 3"))
    with pytest.raises(ValueError, match="announces"):
        parse_sidecar(text.replace("gates: 11", "gates: 12"))
    with pytest.raises(ValueError, match="bad gate row"):
        parse_sidecar(text + "gate: (nope)\n")


def test_retry_eventually_succeeds_where_single_attempt_may_not():
    # saturated path device: a sprinkled single-qubit gate can block the
    # last two-qubit slot, so some attempts dead-end and retries matter
    path5 = DeviceGraph("p5", 5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    spec = spec_for(path5, 1, "0.2", "0.8", seed=0, retry_limit=64)
    circuit, sidecar = generate(spec)
    assert_solution_invariants(circuit, sidecar)


def test_retry_exhaustion_raises():
    path5 = DeviceGraph("p5", 5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    exhausted = None
    for seed in range(64):
        try:
            generate(spec_for(path5, 1, "0.2", "0.8", seed=seed, retry_limit=1))
        except GenerationError as exc:
            exhausted = exc
            break
    assert exhausted is not None, "no seed dead-ended in 64 probes"
    assert exhausted.phase == "sprinkle"
    assert exhausted.attempts == 1
    assert "sprinkle" in str(exhausted)
