"""Benchmark harness comparing the Q-learning EA against its ablation.

For every instance the harness runs the full solver ("rl-ea"), the same
EA with uniform random operator choice ("baseline"), and -- when the
instance is small enough -- the exhaustive solver ("oracle").  The gap
column measures distance from the best objective any method achieved, so
the ablation isolates exactly the contribution of Q-learning operator
selection.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

from satsched import oracle, rl_ea
from satsched.scenario import Scenario, ScenarioKind

BENCH_HEADER = "instance_id,method,objective,gap,generations,wall_time_s"


@dataclass(frozen=True)
class BenchRow:
    instance_id: str
    method: str
    objective: float
    gap: float
    generations: int
    wall_time_s: float


def _problem_for(scenario: Scenario) -> rl_ea.PermutationProblem:
    if scenario.kind is ScenarioKind.EDSSP:
        return rl_ea.edssp_problem(scenario)
    return rl_ea.msjopp_problem(scenario)


def _oracle_fits(scenario: Scenario) -> bool:
    cap = oracle.EDSSP_MAX_TASKS if scenario.kind is ScenarioKind.EDSSP else oracle.MSJOPP_MAX_TASKS
    return len(scenario.tasks) <= cap


def run_benchmark(instances, config: rl_ea.RlEaConfig, include_oracle: bool = True) -> list:
    """Run every method on every (instance_id, scenario) pair.

    Returns BenchRow entries sorted by (instance_id, method).  A method
    that raises is recorded as a row with NaN objective rather than
    aborting the suite.
    """
    rows = []
    for instance_id, scenario in instances:
        problem = _problem_for(scenario)
        attempts = [
            ("rl-ea", lambda: _run_ea(problem, replace(config, policy="q"))),
            ("baseline", lambda: _run_ea(problem, replace(config, policy="uniform"))),
        ]
        if include_oracle and _oracle_fits(scenario):
            attempts.append(("oracle", lambda: _run_oracle(scenario)))

        outcomes = []
        for method, runner in attempts:
            started = time.perf_counter()
            try:
                objective, generations = runner()
            except Exception:
                objective, generations = float("nan"), 0
            outcomes.append((method, objective, generations, time.perf_counter() - started))

        finite = [obj for _, obj, _, _ in outcomes if not math.isnan(obj)]
        best_known = max(finite) if finite else float("nan")
        for method, objective, generations, wall in outcomes:
            if math.isnan(objective) or math.isnan(best_known):
                gap = float("nan")
            elif best_known <= 0:
                gap = 0.0
            else:
                gap = (best_known - objective) / best_known
            rows.append(BenchRow(instance_id, method, objective, gap, generations, wall))
    rows.sort(key=lambda r: (r.instance_id, r.method))
    return rows


def _run_ea(problem, config):
    result = rl_ea.run(problem, config)
    return result.best_fitness, result.generations


def _run_oracle(scenario):
    if scenario.kind is ScenarioKind.EDSSP:
        res = oracle.brute_force_edssp(scenario)
    else:
        res = oracle.brute_force_msjopp(scenario)
    return res.best_objective, 0


def bench_to_csv(rows) -> str:
    lines = [BENCH_HEADER]
    for r in rows:
        lines.append(
            f"{r.instance_id},{r.method},{r.objective},{r.gap},{r.generations},{r.wall_time_s}"
        )
    return "\n".join(lines) + "\n"


def mean_gap(rows, method: str) -> float:
    gaps = [r.gap for r in rows if r.method == method and not math.isnan(r.gap)]
    return math.fsum(gaps) / len(gaps) if gaps else float("nan")
