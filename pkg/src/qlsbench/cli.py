"""Command line front end.

Subcommands:

* gen: produce benchmark circuits plus solution sidecars, CSV summary on
  stdout;
* verify: check a schedule against a circuit, optionally scoring the
  depth ratio against a solution sidecar;
* route: run the baseline router and emit a schedule;
* density: report the gate densities of a circuit file;
* reduce-hc: build the Hamiltonian-cycle hardness circuit for a graph;
* devices: list bundled device graphs.

Exit codes: 0 on success, 1 for usage errors, 2 when a check fails or an
input file is unusable, 3 when generation gave up after its retry limit.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .circuits import GateDensity, extract_density, emit_qasm, parse_qasm
from .devices import (
    DeviceGraph,
    bundled_device_names,
    load_bundled_device,
    load_device,
    resolve_device,
)
from .generator import (
    AdmissibilityError,
    DENSITY_PRESETS,
    GenerationError,
    GenSpec,
    _fraction_str,
    benchmark_filename,
    check_admissible,
    emit_sidecar,
    generate,
    parse_sidecar,
)
from .reduction import (
    DEFAULT_CYCLE_LIMIT,
    DEFAULT_DEPTH_LIMIT,
    build_reduction,
    depth_decision_oracle,
    hamiltonian_cycle_oracle,
)
from .router import STRATEGIES, RouteError, RouterConfig, route
from .verify import emit_schedule, parse_schedule, schedule_from_sidecar, verify

NAMED_DEPTHS = {
    "ntf": tuple(range(5, 50, 5)),
    "ss": tuple(range(100, 1000, 100)),
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for
    # failed checks, so remap
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _device_arg(value: str) -> DeviceGraph:
    if os.path.exists(value):
        return load_device(value)
    return resolve_device(value)


def _parse_depths(value: str) -> tuple[int, ...]:
    if value in NAMED_DEPTHS:
        return NAMED_DEPTHS[value]
    try:
        depths = tuple(int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected {'/'.join(NAMED_DEPTHS)} or a comma list of cycles, got {value!r}"
        ) from None
    if not depths or any(d < 1 for d in depths):
        raise argparse.ArgumentTypeError(f"depths must be positive: {value!r}")
    return depths


def _parse_densities(value: str) -> tuple[GateDensity, ...]:
    if value in DENSITY_PRESETS:
        return (DENSITY_PRESETS[value],)
    if value == "igd":
        # the 0.1-stepped admissible-density grid
        return tuple(
            GateDensity(Fraction(i, 10), Fraction(j, 10))
            for i in range(1, 10)
            for j in range(1, 10)
            if i + j <= 10
        )
    parts = value.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"expected {'/'.join(DENSITY_PRESETS)}, igd, or 'd1,d2', got {value!r}"
        )
    try:
        return (GateDensity(parts[0], parts[1]),)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _gen_one(task: tuple[str, int, str, str, int, int, str]) -> dict[str, str]:
    device_ref, depth, d1, d2, seed, retry_limit, out_dir = task
    device = _device_arg(device_ref)
    density = GateDensity(d1, d2)
    row = {
        "device": device.name,
        "depth": str(depth),
        "d1": _fraction_str(density.d1),
        "d2": _fraction_str(density.d2),
        "seed": str(seed),
        "status": "",
        "gates": "",
        "m1": "",
        "m2": "",
        "qasm": "",
        "solution": "",
    }
    spec = GenSpec(
        device=device, depth=depth, density=density, seed=seed,
        retry_limit=retry_limit,
    )
    m1, m2 = density.gate_counts(device.num_qubits, depth)
    row["m1"], row["m2"] = str(m1), str(m2)
    try:
        check_admissible(spec)
    except AdmissibilityError:
        row["status"] = "inadmissible"
        return row
    try:
        circuit, sidecar = generate(spec)
    except GenerationError:
        row["status"] = "exhausted"
        return row
    qasm_name = benchmark_filename(spec)
    solution_name = qasm_name[: -len(".qasm")] + ".solution"
    _atomic_write(Path(out_dir) / qasm_name, emit_qasm(circuit))
    _atomic_write(Path(out_dir) / solution_name, emit_sidecar(sidecar))
    row.update(
        status="ok",
        gates=str(len(circuit.gates)),
        qasm=qasm_name,
        solution=solution_name,
    )
    return row


_CSV_FIELDS = (
    "device", "depth", "d1", "d2", "seed",
    "status", "gates", "m1", "m2", "qasm", "solution",
)


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.seeds < 1:
        raise ValueError(f"--seeds must be at least 1, got {args.seeds}")
    if args.jobs < 1:
        raise ValueError(f"--jobs must be at least 1, got {args.jobs}")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    densities = [d for spec in args.density for d in spec]
    points = sorted(
        (
            (ref, depth, dens, seed)
            for ref in args.device
            for depth in args.depths
            for dens in densities
            for seed in range(args.seed_base, args.seed_base + args.seeds)
        ),
        key=lambda p: (p[0], p[1], p[2].d1, p[2].d2, p[3]),
    )
    tasks = [
        (
            ref, depth, _fraction_str(dens.d1), _fraction_str(dens.d2),
            seed, args.retry_limit, str(out_dir),
        )
        for ref, depth, dens, seed in points
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_gen_one, tasks))
    else:
        rows = [_gen_one(task) for task in tasks]
    writer = csv.DictWriter(sys.stdout, fieldnames=_CSV_FIELDS)
    writer.writeheader()
    writer.writerows(rows)
    statuses = {row["status"] for row in rows}
    if "exhausted" in statuses:
        return 3
    if "ok" not in statuses:
        return 2
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    circuit = parse_qasm(Path(args.circuit).read_text())
    schedule = parse_schedule(Path(args.schedule).read_text(), args.device)
    sidecar = None
    if args.solution is not None:
        sidecar = parse_sidecar(Path(args.solution).read_text(), device=args.device)
    report = verify(
        schedule, circuit, sidecar=sidecar, detect_cx_swaps=args.detect_cx_swaps
    )
    print(f"valid: {'yes' if report.valid else 'no'}")
    if report.violation is not None:
        v = report.violation
        where = f" at gate {v.gate_index}" if v.gate_index >= 0 else ""
        print(f"violation: {v.kind}{where}: {v.reason}")
    print(f"depth: {report.depth}")
    print(f"swaps: {report.inserted_swap_count}")
    print(f"extra-gates: {report.extra_gate_count}")
    if report.depth_ratio is not None:
        print(f"ratio: {report.depth_ratio}")
    return 0 if report.valid else 2


def _cmd_route(args: argparse.Namespace) -> int:
    circuit = parse_qasm(Path(args.circuit).read_text())
    config = RouterConfig(
        strategy=args.strategy,
        lookahead=args.lookahead,
        max_monomorphism_nodes=args.budget,
        seed=args.seed,
    )
    scheduled = route(circuit, args.device, config)
    text = emit_schedule(scheduled)
    if args.out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(Path(args.out), text)
        print(f"depth: {scheduled.depth()}")
        print(f"swaps: {sum(1 for g in scheduled.gates if g.is_swap)}")
    return 0


def _cmd_density(args: argparse.Namespace) -> int:
    circuit = parse_qasm(Path(args.circuit).read_text())
    density = extract_density(circuit)
    print(f"d1={_fraction_str(density.d1)} d2={_fraction_str(density.d2)}")
    return 0


def _cmd_reduce_hc(args: argparse.Namespace) -> int:
    instance = build_reduction(args.graph)
    if args.check:
        cycle = hamiltonian_cycle_oracle(args.graph, limit=args.hc_limit)
        witness = depth_decision_oracle(args.graph, limit=args.depth_limit)
        hc = "yes" if cycle is not None else "no"
        feasible = "yes" if witness is not None else "no"
        agree = "AGREE" if (cycle is None) == (witness is None) else "DISAGREE"
        print(f"HC: {hc}; depth-N feasible: {feasible}; {agree}")
        return 0 if agree == "AGREE" else 2
    text = emit_qasm(instance.circuit)
    if args.out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(Path(args.out), text)
        print(f"levels: {instance.num_levels}")
        print(f"gates: {len(instance.circuit.gates)}")
    return 0


def _cmd_devices(args: argparse.Namespace) -> int:
    for name in bundled_device_names():
        device = load_bundled_device(name)
        kind = "directed" if device.directed else "undirected"
        print(
            f"{name}: {device.num_qubits} qubits, "
            f"{len(device.edges)} edges, {kind}"
        )
    print("grid:RxC: rectangular lattice of any size (e.g. grid4x4, grid6x9)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qlsbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate benchmarks with known optima")
    gen.add_argument(
        "--device", nargs="+", required=True,
        help="device names or .edges paths",
    )
    gen.add_argument(
        "--depths", type=_parse_depths, required=True,
        help="named set (ntf: 5..45, ss: 100..900) or comma list",
    )
    gen.add_argument(
        "--density", type=_parse_densities, nargs="+", required=True,
        help="tfl, qse, igd (density sweep), or 'd1,d2'",
    )
    gen.add_argument("--seeds", type=int, default=1, help="seeds per point")
    gen.add_argument("--seed-base", type=int, default=0)
    gen.add_argument("--retry-limit", type=int, default=64)
    gen.add_argument("--jobs", type=int, default=1)
    gen.add_argument("--out-dir", required=True)
    gen.set_defaults(handler=_cmd_gen)

    ver = sub.add_parser("verify", help="check a schedule against a circuit")
    ver.add_argument("--circuit", required=True)
    ver.add_argument("--schedule", required=True)
    ver.add_argument("--device", type=_device_arg, required=True)
    ver.add_argument("--solution", help="sidecar for depth-ratio scoring")
    ver.add_argument("--detect-cx-swaps", action="store_true")
    ver.set_defaults(handler=_cmd_verify)

    rte = sub.add_parser("route", help="run the baseline router")
    rte.add_argument("--circuit", required=True)
    rte.add_argument("--device", type=_device_arg, required=True)
    rte.add_argument("--strategy", choices=STRATEGIES, default="degree-greedy")
    rte.add_argument("--lookahead", type=int, default=5)
    rte.add_argument("--seed", type=int, default=0)
    rte.add_argument("--budget", type=int, default=200_000)
    rte.add_argument("--out", help="schedule file (default: stdout)")
    rte.set_defaults(handler=_cmd_route)

    den = sub.add_parser("density", help="report a circuit's gate densities")
    den.add_argument("--circuit", required=True)
    den.set_defaults(handler=_cmd_density)

    red = sub.add_parser(
        "reduce-hc", help="Hamiltonian-cycle hardness circuit for a graph"
    )
    red.add_argument("--graph", type=_device_arg, required=True)
    red.add_argument("--out", help="circuit file (default: stdout)")
    red.add_argument("--check", action="store_true",
                     help="run both oracles and compare")
    red.add_argument("--hc-limit", type=int, default=DEFAULT_CYCLE_LIMIT)
    red.add_argument("--depth-limit", type=int, default=DEFAULT_DEPTH_LIMIT)
    red.set_defaults(handler=_cmd_reduce_hc)

    dev = sub.add_parser("devices", help="list bundled device graphs")
    dev.set_defaults(handler=_cmd_devices)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse handles --help and usage errors by exiting; surface the
        # code as a return value so main stays callable in-process
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (AdmissibilityError, GenerationError, RouteError) as exc:
        print(f"qlsbench: error: {exc}", file=sys.stderr)
        return 3 if isinstance(exc, GenerationError) else 2
    except (ValueError, OSError) as exc:
        print(f"qlsbench: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
