"""Seeded random instance generation for both scheduling models.

Everything is drawn from one ``numpy`` generator in a fixed order, so a
(kind, params, seed) triple always produces the identical scenario.  Every
task is guaranteed to be schedulable in isolation: EDSSP tasks get a first
window that is fully inside their time bounds and angle limit; MSJOPP
tasks are re-drawn until their split plan places on an empty schedule.
"""

from __future__ import annotations

import numpy as np

from satsched import msjopp
from satsched.edssp import bandwidth_for_degree, half_power_beamwidth_rad
from satsched.scenario import (
    EdsspTask,
    ObsTask,
    Satellite,
    Scenario,
    ScenarioKind,
    TransitionTables,
    VisibleWindow,
)

BANDWIDTH_LEVELS = (32.0, 16.0, 8.0, 4.0)
FREQUENCIES = ("f1", "f2", "f3")
POLARIZATIONS = ("H", "V")
MODES = ("search", "track")

MIN_DURATION_S = 30
MAX_DURATION_S = 120
_WINDOW_STRETCH = 3.0  # windows are 1-3x the duration they host


def generate_scenario(
    kind,
    n_satellites: int = 2,
    n_tasks: int = 6,
    n_windows_per_task: int = 2,
    separable_fraction: float = 0.5,
    horizon_s: int = 2000,
    seed: int = 0,
) -> Scenario:
    """Build a random scenario of the requested kind, deterministically."""
    kind = ScenarioKind(kind)
    if min(n_satellites, n_tasks, n_windows_per_task) < 1:
        raise ValueError("all counts must be >= 1")
    if not 0 <= separable_fraction <= 1:
        raise ValueError("separable_fraction must be in [0, 1]")
    if horizon_s < _WINDOW_STRETCH * MAX_DURATION_S:
        raise ValueError(
            f"horizon {horizon_s}s is shorter than a worst-case window "
            f"({_WINDOW_STRETCH * MAX_DURATION_S:.0f}s)"
        )
    rng = np.random.default_rng(seed)
    if kind is ScenarioKind.EDSSP:
        return _generate_edssp(rng, n_satellites, n_tasks, n_windows_per_task, horizon_s)
    return _generate_msjopp(
        rng, n_satellites, n_tasks, n_windows_per_task, separable_fraction, horizon_s
    )


def _pick(rng, values):
    return values[int(rng.integers(len(values)))]


def _transition_table(rng, values) -> dict:
    return {
        (a, b): int(rng.integers(0, 9))
        for a in values
        for b in values
        if a != b
    }


def _generate_edssp(rng, n_satellites, n_tasks, n_windows, horizon_s) -> Scenario:
    diameters = [float(rng.uniform(2.0, 4.0)) for _ in range(n_satellites)]
    efficiencies = [float(rng.uniform(0.5, 0.7)) for _ in range(n_satellites)]
    rates = [float(rng.uniform(0.5, 2.0)) for _ in range(n_satellites)]
    poweron = [int(rng.integers(1, 6)) for _ in range(n_satellites)]
    orbit_counts = [int(rng.integers(1, 3)) for _ in range(n_satellites)]
    tables = [
        TransitionTables(
            polarization=_transition_table(rng, POLARIZATIONS),
            mode=_transition_table(rng, MODES),
            band=_transition_table(rng, BANDWIDTH_LEVELS),
            frequency=_transition_table(rng, FREQUENCIES),
        )
        for _ in range(n_satellites)
    ]

    max_diameter = max(diameters)
    tasks = []
    windows = []
    for i in range(n_tasks):
        duration = int(rng.integers(MIN_DURATION_S, MAX_DURATION_S + 1))
        degree = int(rng.integers(1, 101))
        wavelength = float(rng.uniform(0.05, 0.15))
        # The tightest beam any satellite points at this task bounds how
        # far off boresight the detection is allowed to drift.
        beamwidth = half_power_beamwidth_rad(max_diameter, wavelength)
        max_angle = float(rng.uniform(0.5, 5.0)) * beamwidth

        task_windows = []
        est = let = None
        for w in range(n_windows):
            length = int(duration * rng.uniform(1.0, _WINDOW_STRETCH))
            evt = int(rng.integers(0, horizon_s - length + 1))
            lvt = evt + length
            sat_idx = int(rng.integers(n_satellites))
            orbit = int(rng.integers(orbit_counts[sat_idx]))
            if w == 0:
                # Anchor window: inside the task's bounds and angle limit,
                # so the task always has somewhere feasible to go.
                edge = max_angle * float(rng.uniform(0.85, 0.97))
                est = max(0, evt - int(rng.integers(0, 51)))
                let = min(horizon_s, lvt + int(rng.integers(0, 51)))
            else:
                edge = max_angle * float(rng.uniform(0.9, 1.5))
            vertex = float(rng.uniform(0.0, 0.8 * max_angle))
            profile = ((evt, edge), (evt + length // 2, vertex), (lvt, edge))
            task_windows.append(
                VisibleWindow(f"s{sat_idx}", f"t{i}", orbit, w, evt, lvt, profile)
            )
        tasks.append(EdsspTask(
            id=f"t{i}",
            est_s=est,
            let_s=let,
            duration_s=duration,
            max_angle_rad=max_angle,
            degree=degree,
            wavelength_m=wavelength,
            frequency=_pick(rng, FREQUENCIES),
            polarization=_pick(rng, POLARIZATIONS),
            mode=_pick(rng, MODES),
        ))
        windows.extend(task_windows)

    satellites = []
    for s in range(n_satellites):
        # Capacity holds any single execution with room to spare, but two
        # or three heavy tasks can saturate an orbit.
        biggest = max(
            rates[s] * bandwidth_for_degree(BANDWIDTH_LEVELS, t.degree) * t.duration_s
            for t in tasks
        )
        satellites.append(Satellite(
            id=f"s{s}",
            antenna_diameter_m=diameters[s],
            antenna_efficiency=efficiencies[s],
            unit_data_rate=rates[s],
            storage_capacity=biggest * float(rng.uniform(1.3, 2.8)),
            poweron_time_s=poweron[s],
            transition_tables=tables[s],
            orbit_count=orbit_counts[s],
        ))

    return Scenario(
        kind=ScenarioKind.EDSSP,
        satellites=tuple(satellites),
        tasks=tuple(tasks),
        windows=tuple(windows),
        horizon=(0, horizon_s),
        bandwidth_levels=BANDWIDTH_LEVELS,
    )


def _generate_msjopp(rng, n_satellites, n_tasks, n_windows, separable_fraction, horizon_s) -> Scenario:
    satellites = tuple(
        Satellite(
            id=f"s{s}",
            antenna_diameter_m=3.0,
            antenna_efficiency=0.6,
            unit_data_rate=1.0,
            storage_capacity=1e9,
            poweron_time_s=0,
            transition_tables=TransitionTables(),
            orbit_count=1,
        )
        for s in range(n_satellites)
    )
    gap = int(rng.integers(1, 11))
    n_separable = int(round(separable_fraction * n_tasks))
    separable_ids = set(rng.choice(n_tasks, size=n_separable, replace=False).tolist())

    tasks = []
    windows = []
    for i in range(n_tasks):
        for attempt in range(50):
            task, task_windows = _draw_msjopp_task(
                rng, i, i in separable_ids, n_satellites, n_windows, horizon_s
            )
            if _places_alone(satellites, gap, task, task_windows, horizon_s):
                break
        else:
            raise RuntimeError(f"could not draw a feasible task after 50 attempts (task {i})")
        tasks.append(task)
        windows.extend(task_windows)

    return Scenario(
        kind=ScenarioKind.MSJOPP,
        satellites=satellites,
        tasks=tuple(tasks),
        windows=tuple(windows),
        horizon=(0, horizon_s),
        min_interval_s=gap,
    )


def _draw_msjopp_task(rng, index, separable, n_satellites, n_windows, horizon_s):
    duration = int(rng.integers(MIN_DURATION_S, MAX_DURATION_S + 1))
    profit = float(rng.uniform(1.0, 10.0))

    if separable:
        # Split the duration over one window per satellite (at most), each
        # window barely longer than its intended piece, so multi-part
        # split plans actually occur.
        n_parts = min(n_windows, n_satellites)
        base, rem = divmod(duration, n_parts)
        sizes = [base + 1] * rem + [base] * (n_parts - rem)
        first_sat = int(rng.integers(n_satellites))
        lengths = [size + int(rng.integers(0, size + 1)) for size in sizes]
        sats = [(first_sat + w) % n_satellites for w in range(n_parts)]
        for w in range(n_parts, n_windows):
            lengths.append(sizes[0] + int(rng.integers(0, sizes[0] + 1)))
            sats.append(int(rng.integers(n_satellites)))
    else:
        lengths = [int(duration * rng.uniform(1.0, _WINDOW_STRETCH)) for _ in range(n_windows)]
        sats = [int(rng.integers(n_satellites)) for _ in range(n_windows)]

    task_windows = []
    for w, (length, sat_idx) in enumerate(zip(lengths, sats)):
        evt = int(rng.integers(0, horizon_s - length + 1))
        task_windows.append(VisibleWindow(f"s{sat_idx}", f"t{index}", 0, w, evt, evt + length))

    if separable:
        earliest = min(win.evt_s for win in task_windows)
        latest = max(win.lvt_s for win in task_windows)
    else:
        earliest, latest = task_windows[0].evt_s, task_windows[0].lvt_s
    est = max(0, earliest - int(rng.integers(0, 31)))
    let = min(horizon_s, latest + int(rng.integers(0, 31)))
    return ObsTask(f"t{index}", est, let, duration, profit, separable), task_windows


def _places_alone(satellites, gap, task, task_windows, horizon_s) -> bool:
    """Can the task be scheduled on an otherwise empty system?"""
    trial = Scenario(
        kind=ScenarioKind.MSJOPP,
        satellites=satellites,
        tasks=(task,),
        windows=tuple(task_windows),
        horizon=(0, horizon_s),
        min_interval_s=gap,
    )
    return msjopp.MsjoppPlacer(trial).place_task(task.id) is not None
