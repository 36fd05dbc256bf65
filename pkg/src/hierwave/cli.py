"""Command-line entry point.

Subcommands: decompose, validate, pauli, repair, simulate, classify, info.
Exit codes: 0 success, 1 domain error (error name printed to stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import complexity, dynamics, physicality, repair_cascade, rep_theory, state_tree


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hierwave",
        description="Hierarchical wave-function toolkit: SU(2) coupling, "
        "physicality checks, repair cascades, toy two-level dynamics, "
        "and description-length classification.",
    )
    parser.add_argument("--seed", type=int, default=42, help="global random seed")
    parser.add_argument("--format", choices=("human", "machine"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a tensor product of spins into irreps")
    p.add_argument("--spins", required=True, help="comma-separated spins, e.g. 1/2,1/2,1")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate", help="check physicality of every internal node of a state file")
    p.add_argument("--state", required=True, help="JSON state file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pauli", help="find fermionic exclusion violations among components")
    p.add_argument("--state", required=True, help="JSON state file")
    p.add_argument("--scope", type=int, default=1, help="ancestor depth that counts as 'the system'")
    p.set_defaults(func=cmd_pauli)

    p = sub.add_parser("repair", help="run the symmetry-repair cascade on a damaged organism")
    p.add_argument("--scenario", required=True, help="JSON organism scenario file")
    p.add_argument("--remove", required=True, help="comma-separated component indices to remove")
    p.add_argument("--max-depth", type=int, default=3)
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("simulate", help="integrate the two-block spin-mass toy model")
    p.add_argument("--config", required=True, help="JSON simulation config")
    p.add_argument("--out", help="output CSV path (stdout if omitted); prefix in sweep mode")
    p.add_argument("--sweep", help="grid sweep, e.g. lambda0=0:1:5")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify", help="description-length verdict for a value series")
    p.add_argument("--series", required=True, help="CSV file with one column of reals")
    p.add_argument("--quantization", type=float, required=True)
    p.add_argument("--threshold", type=float, default=complexity.DEFAULT_THRESHOLD)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("info", help="summarize and structurally validate a state file")
    p.add_argument("--state", required=True, help="JSON state file")
    p.set_defaults(func=cmd_info)

    return parser


def cmd_decompose(args) -> int:
    spins = [rep_theory.IrrepLabel(rep_theory.parse_j(tok)) for tok in args.spins.split(",")]
    result = rep_theory.decompose_product(spins)
    for label, mult in result:
        print(f"J={label} x{mult}")
    product_dim = 1
    for s in spins:
        product_dim *= s.dim
    print(f"dim: {result.total_dim} = {product_dim}")
    return 0


def cmd_validate(args) -> int:
    psi = state_tree.load_state(args.state)
    problems = state_tree.validate_tree(psi)
    if problems:
        for v in problems:
            print(f"{v.path}: INVALID ({v.message})", file=sys.stderr)
        return 1
    reports = physicality.check_node(psi)
    all_ok = True
    for path, report in reports:
        if report.physical:
            print(f"{path}: PHYSICAL")
        else:
            all_ok = False
            names = ",".join(r.value for r in report.reasons)
            print(f"{path}: UNPHYSICAL ({names})")
    return 0 if all_ok else 1


def cmd_pauli(args) -> int:
    psi = state_tree.load_state(args.state)
    violations = physicality.pauli_check(psi, scope=args.scope)
    for v in violations:
        print(f"{v.system_path}: {v.first} and {v.second} share state {v.state}")
    if not violations:
        print("no exclusion violations")
    return 0 if not violations else 1


def cmd_repair(args) -> int:
    org = repair_cascade.load_organism(args.scenario)
    problems = org.validate()
    if problems:
        for msg in problems:
            print(f"scenario invalid: {msg}", file=sys.stderr)
        return 1
    indices = frozenset(int(tok) for tok in args.remove.split(","))
    remainder = repair_cascade.amputate(org, repair_cascade.RemovalAction(indices))
    result = repair_cascade.repair(remainder, max_depth=args.max_depth)
    if args.format == "human":
        print(f"target J={org.target_irrep}; removed {sorted(indices)}; "
              f"remainder complete: {remainder.complete}")
        for s in result.steps:
            status = "contains target" if s.rebuilt else "target missing"
            print(f"depth {s.depth}: [{', '.join(s.component_names)}] "
                  f"-> {s.product} ({status})")
        verdict = "rebuilt" if result.feasible else "not rebuildable"
        print(f"{verdict}: levels descended {result.levels_descended}, cost {result.cost}")
    print("RESULT " + json.dumps({
        "feasible": result.feasible,
        "levels_descended": result.levels_descended,
        "cost": result.cost,
        "witness": [rep_theory.format_j(l.twice_j) for l in result.witness_irreps],
    }))
    return 0


def _parse_sweep(spec: str):
    name, _, grid = spec.partition("=")
    parts = grid.split(":")
    if len(parts) != 3:
        raise ValueError("sweep must look like field=start:stop:count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("sweep count must be >= 1")
    if count == 1:
        values = [start]
    else:
        values = [start + (stop - start) * i / (count - 1) for i in range(count)]
    return name, values


def cmd_simulate(args) -> int:
    cfg = dynamics.load_sim_config(args.config)
    if args.sweep:
        name, values = _parse_sweep(args.sweep)
        if not args.out:
            raise ValueError("sweep mode requires --out as a filename prefix")
        print(f"{name},max_energy_drift,error")
        for value in values:
            traj = dynamics.run(dynamics.with_override(cfg, name, value))
            path = f"{args.out}_{name}_{value:g}.csv"
            with open(path, "w", encoding="utf-8") as fh:
                dynamics.write_trajectory_csv(traj, fh)
            drift = dynamics.max_energy_drift(traj)
            print(f"{value:.17g},{drift:.17g},{traj.error or ''}")
        return 0
    traj = dynamics.run(cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            dynamics.write_trajectory_csv(traj, fh)
        if args.format == "human":
            print(f"wrote {len(traj.samples)} samples to {args.out}; "
                  f"max energy drift {dynamics.max_energy_drift(traj):.3e}")
    else:
        dynamics.write_trajectory_csv(traj, sys.stdout)
    if traj.error:
        print(f"error: {traj.error}", file=sys.stderr)
        return 1
    return 0


def cmd_classify(args) -> int:
    values = []
    with open(args.series, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                values.append(float(line))
    series = complexity.MatrixElementSeries(values=tuple(values), quantization=args.quantization)
    report = complexity.classify(series, threshold=args.threshold)
    print(json.dumps({
        "raw_bits": report.raw_bits,
        "compressed_bits": report.compressed_bits,
        "ratio": report.ratio,
        "verdict": report.verdict.value,
        "threshold": report.threshold,
    }))
    if args.format == "human":
        print(f"{report.verdict.value}: {report.compressed_bits} / {report.raw_bits} bits "
              f"(ratio {report.ratio:.4f}, threshold {report.threshold})")
    return 0


def cmd_info(args) -> int:
    psi = state_tree.load_state(args.state)
    nodes = list(state_tree.iter_nodes(psi))
    print(f"nodes: {len(nodes)}")
    for path, node in nodes:
        lvl = node.wave.level
        print(f"{path}: level {lvl.level_index} group {lvl.group} "
              f"basis {len(lvl.basis)} children {len(node.children)}")
    problems = state_tree.validate_tree(psi)
    for v in problems:
        print(f"{v.path}: INVALID ({v.message})")
    return 0 if not problems else 1


_DOMAIN_ERRORS = (ValueError, RuntimeError, OSError, json.JSONDecodeError, KeyError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
