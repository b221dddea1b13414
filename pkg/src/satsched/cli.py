"""Command-line interface: generate, solve, check, oracle, bench, gantt.

Exit codes: 0 success, 1 constraint violations found (check), 2 bad
input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from satsched import bench, gantt, oracle, rl_ea, scenario_io
from satsched.generator import generate_scenario
from satsched.scenario import Scenario, ScenarioKind, validate_scenario
from satsched.scenario_io import FormatError


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--generations", type=int, default=300, metavar="N")
    parser.add_argument("--pop-size", type=int, default=30, metavar="N")
    parser.add_argument("--alpha", type=float, default=0.1)
    parser.add_argument("--gamma", type=float, default=0.9)
    parser.add_argument("--epsilon", type=float, default=0.8)
    parser.add_argument("--control-t", type=int, default=20, metavar="T")


def _config_from(args) -> rl_ea.RlEaConfig:
    return rl_ea.RlEaConfig(
        pop_size=args.pop_size,
        alpha=args.alpha,
        gamma=args.gamma,
        epsilon=args.epsilon,
        control_t=args.control_t,
        max_generations=args.generations,
        seed=args.seed,
    )


def _write_out(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_scenario(path) -> Scenario:
    scenario = scenario_io.scenario_from_json(Path(path).read_text())
    problems = validate_scenario(scenario)
    if problems:
        raise FormatError(
            f"{path}: invalid scenario: " + "; ".join(str(v) for v in problems[:5])
        )
    return scenario


def cmd_generate(args) -> int:
    scenario = generate_scenario(
        args.kind,
        n_satellites=args.satellites,
        n_tasks=args.tasks,
        n_windows_per_task=args.windows_per_task,
        separable_fraction=args.separable_fraction,
        horizon_s=args.horizon,
        seed=args.seed,
    )
    _write_out(scenario_io.scenario_to_json(scenario), args.out)
    if args.out is not None:
        print(f"wrote {args.out}: {args.kind} scenario, "
              f"{len(scenario.tasks)} tasks, {len(scenario.windows)} windows")
    return 0


def cmd_solve(args) -> int:
    scenario = _load_scenario(args.scenario)
    config = _config_from(args)
    if scenario.kind is ScenarioKind.EDSSP:
        problem = rl_ea.edssp_problem(scenario)
    else:
        problem = rl_ea.msjopp_problem(scenario)
    run = rl_ea.run(problem, config)

    trace_path = None
    if args.out is not None:
        trace_file = Path(args.out).with_suffix(".trace.csv")
        trace_file.write_text(scenario_io.trace_to_csv(run.trace))
        trace_path = trace_file.name
    result = scenario_io.build_result(scenario, run.best_schedule, config, trace_path)
    _write_out(scenario_io.result_to_json(result), args.out)
    if args.out is not None:
        print(f"wrote {args.out}: objective {result.objective}, "
              f"{len(result.schedule.assignments)} assignments, "
              f"{run.generations} generations")
    return 0


def cmd_check(args) -> int:
    result = scenario_io.result_from_json(Path(args.result).read_text())
    scenario = result.scenario if args.scenario is None else _load_scenario(args.scenario)
    violations = list(validate_scenario(scenario))
    violations += scenario_io.schedule_violations(scenario, result.schedule)
    for v in violations:
        print(v)
    return 1 if violations else 0


def cmd_oracle(args) -> int:
    scenario = _load_scenario(args.scenario)
    if scenario.kind is ScenarioKind.EDSSP:
        res = oracle.brute_force_edssp(scenario)
    else:
        res = oracle.brute_force_msjopp(scenario)
    payload = {
        "best_objective": res.best_objective,
        "nodes_explored": res.nodes_explored,
    }
    payload.update(scenario_io.schedule_to_dict(scenario, res.best_schedule))
    _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def cmd_bench(args) -> int:
    instances = []
    for i in range(args.instances):
        scenario = generate_scenario(
            args.kind,
            n_satellites=args.satellites,
            n_tasks=args.tasks,
            n_windows_per_task=args.windows_per_task,
            separable_fraction=args.separable_fraction,
            horizon_s=args.horizon,
            seed=args.seed + i,
        )
        instances.append((f"{args.kind}-{args.seed + i:04d}", scenario))
    rows = bench.run_benchmark(instances, _config_from(args))
    if args.format == "csv":
        _write_out(bench.bench_to_csv(rows), args.out)
    else:
        payload = [row.__dict__ for row in rows]
        _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    if args.out is not None:
        for method in ("rl-ea", "baseline", "oracle"):
            gap = bench.mean_gap(rows, method)
            if gap == gap:  # only report methods that ran
                print(f"mean gap {method}: {gap:.4f}")
    return 0


def cmd_gantt(args) -> int:
    result = scenario_io.result_from_json(Path(args.result).read_text())
    scenario = result.scenario if args.scenario is None else _load_scenario(args.scenario)
    _write_out(gantt.gantt_svg(scenario, result.schedule), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satsched",
        description="Satellite scheduling: scenario generation, solving, checking, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random scenario JSON")
    p.add_argument("--kind", choices=[k.value for k in ScenarioKind], required=True)
    p.add_argument("--satellites", type=int, default=2, metavar="N")
    p.add_argument("--tasks", type=int, default=6, metavar="N")
    p.add_argument("--windows-per-task", type=int, default=2, metavar="N")
    p.add_argument("--separable-fraction", type=float, default=0.5)
    p.add_argument("--horizon", type=int, default=2000, metavar="SECONDS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="run the Q-learning EA on a scenario")
    p.add_argument("--scenario", required=True, metavar="PATH")
    p.add_argument("--out", default=None, metavar="PATH")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="re-verify a result file against its scenario")
    p.add_argument("--result", required=True, metavar="PATH")
    p.add_argument("--scenario", default=None, metavar="PATH",
                   help="check against this scenario instead of the embedded one")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="exhaustive optimum for a small scenario")
    p.add_argument("--scenario", required=True, metavar="PATH")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="compare rl-ea, uniform baseline, and oracle")
    p.add_argument("--kind", choices=[k.value for k in ScenarioKind], default="edssp")
    p.add_argument("--instances", type=int, default=30, metavar="N")
    p.add_argument("--satellites", type=int, default=2, metavar="N")
    p.add_argument("--tasks", type=int, default=20, metavar="N")
    p.add_argument("--windows-per-task", type=int, default=2, metavar="N")
    p.add_argument("--separable-fraction", type=float, default=0.5)
    p.add_argument("--horizon", type=int, default=2000, metavar="SECONDS")
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--out", default=None, metavar="PATH")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gantt", help="render a result as an SVG gantt chart")
    p.add_argument("--result", required=True, metavar="PATH")
    p.add_argument("--scenario", default=None, metavar="PATH")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_gantt)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
