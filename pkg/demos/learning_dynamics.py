"""Watch the operator-selection policy learn during one solver run.

Every generation the solver observes a coarse population state (fitness
trend x diversity bucket), picks one variation operator epsilon-greedily
from its Q table, and banks a reward when the offspring improve the
best or mean fitness.  The trace below shows the exploration rate
decaying and the action mix concentrating as the run progresses, and
compares the final objective with a uniform-random operator baseline.
"""

from collections import Counter
from dataclasses import replace

from satsched import rl_ea
from satsched.generator import generate_scenario


def action_mix(trace, names):
    counts = Counter(row.action for row in trace)
    total = sum(counts.values()) or 1
    return ", ".join(f"{names[a]} {counts.get(a, 0) / total:.0%}"
                     for a in range(len(names)))


def main():
    scenario = generate_scenario("edssp", n_satellites=2, n_tasks=20,
                                 n_windows_per_task=2, seed=501)
    problem = rl_ea.edssp_problem(scenario)
    names = [op.name for op in rl_ea.default_operators()]
    config = rl_ea.RlEaConfig(pop_size=50, max_generations=300, seed=9)

    result = rl_ea.run(problem, config)
    print(f"instance: {len(scenario.tasks)} tasks; "
          f"ran {result.generations} generations, best objective {result.best_fitness:.4f}\n")

    print("exploration rate and best fitness along the run:")
    for row in result.trace[::60] + result.trace[-1:]:
        print(f"  generation {row.generation:>3}: epsilon {row.epsilon:.3f}  "
              f"best {row.best_fitness:.4f}  mean {row.mean_fitness:.4f}")

    third = len(result.trace) // 3
    print("\noperator mix by phase:")
    print(f"  early : {action_mix(result.trace[:third], names)}")
    print(f"  middle: {action_mix(result.trace[third:2 * third], names)}")
    print(f"  late  : {action_mix(result.trace[2 * third:], names)}")

    baseline = rl_ea.run(problem, replace(config, policy="uniform"))
    print(f"\nlearned policy objective : {result.best_fitness:.4f}")
    print(f"uniform baseline objective: {baseline.best_fitness:.4f} (same budget)")


if __name__ == "__main__":
    main()
