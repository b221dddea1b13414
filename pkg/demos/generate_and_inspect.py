"""Generate one scenario of each kind and walk through its contents.

Every scenario is fully determined by its seed, so the numbers printed
here are reproducible.  The generator guarantees each task at least one
visibility window in which it could run on its own; whether they all
fit together is exactly what the solver has to figure out.
"""

from satsched.generator import generate_scenario
from satsched.scenario import validate_scenario


def show_edssp():
    scenario = generate_scenario("edssp", n_satellites=2, n_tasks=5,
                                 n_windows_per_task=2, seed=11)
    print("=== electromagnetic detection scenario (seed 11) ===")
    print(f"satellites: {len(scenario.satellites)}, tasks: {len(scenario.tasks)}, "
          f"windows: {len(scenario.windows)}, horizon: {scenario.horizon}")
    print(f"bandwidth levels: {scenario.bandwidth_levels}")
    for sat in scenario.satellites:
        print(f"  {sat.id}: dish {sat.antenna_diameter_m:.2f} m, "
              f"storage {sat.storage_capacity:.0f}, orbits {sat.orbit_count}")
    print(f"{'task':>6} {'est':>5} {'let':>5} {'dur':>4} {'degree':>6} {'windows':>7}")
    for task in scenario.tasks:
        n_windows = len(scenario.windows_by_task[task.id])
        print(f"{task.id:>6} {task.est_s:>5} {task.let_s:>5} {task.duration_s:>4} "
              f"{task.degree:>6} {n_windows:>7}")
    problems = validate_scenario(scenario)
    print(f"validation: {'clean' if not problems else problems}")


def show_msjopp():
    scenario = generate_scenario("msjopp", n_satellites=2, n_tasks=5,
                                 n_windows_per_task=2, separable_fraction=0.6, seed=11)
    print("\n=== multi-satellite observation scenario (seed 11) ===")
    print(f"satellites: {len(scenario.satellites)}, tasks: {len(scenario.tasks)}, "
          f"minimum gap between runs: {scenario.min_interval_s}s")
    print(f"{'task':>6} {'est':>5} {'let':>5} {'dur':>4} {'profit':>7} {'separable':>9}")
    for task in scenario.tasks:
        print(f"{task.id:>6} {task.est_s:>5} {task.let_s:>5} {task.duration_s:>4} "
              f"{task.profit:>7.2f} {str(task.separable):>9}")
    print("windows (satellite, span):")
    for task in scenario.tasks:
        spans = ", ".join(f"{w.satellite_id}[{w.evt_s},{w.lvt_s}]"
                          for w in scenario.windows_by_task[task.id])
        print(f"  {task.id}: {spans}")
    problems = validate_scenario(scenario)
    print(f"validation: {'clean' if not problems else problems}")


def main():
    show_edssp()
    show_msjopp()


if __name__ == "__main__":
    main()
