"""Run a small three-way benchmark: learned policy vs uniform vs oracle.

Five six-task instances are small enough for the exhaustive oracle, so
each method's optimality gap is measured against the true optimum (the
best objective any method achieved defines the gap otherwise).  Expect
both solver variants to sit at or near gap zero at this size; the
interesting separation appears on larger instances, where only the
relative comparison is available.
"""

from satsched import bench, rl_ea
from satsched.generator import generate_scenario


def main():
    instances = [
        (f"demo{i}", generate_scenario("edssp", n_satellites=2, n_tasks=6,
                                       n_windows_per_task=2, seed=900 + i))
        for i in range(5)
    ]
    config = rl_ea.RlEaConfig(pop_size=30, max_generations=200, seed=0)
    rows = bench.run_benchmark(instances, config, include_oracle=True)

    print(bench.bench_to_csv(rows))
    for method in ("rl-ea", "baseline", "oracle"):
        print(f"mean gap {method:<8}: {bench.mean_gap(rows, method):.6f}")


if __name__ == "__main__":
    main()
