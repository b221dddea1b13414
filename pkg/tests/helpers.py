"""Hand-built miniature scenarios shared across the test modules.

Everything here is constructed from explicit numbers so tests can assert
exact values; nothing is drawn from a RNG.
"""

from satsched.scenario import (
    EdsspTask,
    ObsTask,
    Satellite,
    Scenario,
    ScenarioKind,
    TransitionTables,
    VisibleWindow,
)

LEVELS = (32.0, 16.0, 8.0, 4.0)


def symmetric_table(values, seconds):
    return {(a, b): seconds for a in values for b in values if a != b}


def make_satellite(
    sat_id="s0",
    diameter=3.0,
    efficiency=0.6,
    rate=2.0,
    storage=1e9,
    poweron=5,
    orbit_count=2,
    tables=None,
):
    if tables is None:
        tables = TransitionTables(
            polarization=symmetric_table(("H", "V"), 4),
            mode=symmetric_table(("search", "track"), 3),
            band=symmetric_table(LEVELS, 2),
            frequency=symmetric_table(("f1", "f2", "f3"), 6),
        )
    return Satellite(
        id=sat_id,
        antenna_diameter_m=diameter,
        antenna_efficiency=efficiency,
        unit_data_rate=rate,
        storage_capacity=storage,
        poweron_time_s=poweron,
        transition_tables=tables,
        orbit_count=orbit_count,
    )


def make_edssp_task(
    task_id="t0",
    est=0,
    let=1000,
    duration=50,
    max_angle=0.02,
    degree=80,
    wavelength=0.1,
    frequency="f1",
    polarization="H",
    mode="search",
):
    return EdsspTask(
        id=task_id,
        est_s=est,
        let_s=let,
        duration_s=duration,
        max_angle_rad=max_angle,
        degree=degree,
        wavelength_m=wavelength,
        frequency=frequency,
        polarization=polarization,
        mode=mode,
    )


def flat_window(task_id, sat_id="s0", orbit=0, index=0, evt=0, lvt=200, angle=0.01):
    """Window whose detection angle is constant over its whole span."""
    return VisibleWindow(
        satellite_id=sat_id,
        task_id=task_id,
        orbit_index=orbit,
        window_index=index,
        evt_s=evt,
        lvt_s=lvt,
        angle_profile=((evt, angle), (lvt, angle)),
    )


def vee_window(task_id, sat_id="s0", orbit=0, index=0, evt=0, lvt=200, edge=0.03, vertex=0.0):
    """Window whose angle descends linearly to a mid-span vertex and back."""
    mid = evt + (lvt - evt) // 2
    return VisibleWindow(
        satellite_id=sat_id,
        task_id=task_id,
        orbit_index=orbit,
        window_index=index,
        evt_s=evt,
        lvt_s=lvt,
        angle_profile=((evt, edge), (mid, vertex), (lvt, edge)),
    )


def edssp_scenario(tasks, windows, satellites=None, horizon=(0, 2000), levels=LEVELS):
    if satellites is None:
        satellites = (make_satellite(),)
    return Scenario(
        kind=ScenarioKind.EDSSP,
        satellites=tuple(satellites),
        tasks=tuple(tasks),
        windows=tuple(windows),
        horizon=horizon,
        bandwidth_levels=levels,
    )


def single_task_edssp(**task_kwargs):
    """One satellite, one task, one flat window comfortably containing it."""
    task = make_edssp_task(**task_kwargs)
    window = flat_window(task.id, evt=0, lvt=500, angle=task.max_angle_rad / 2)
    return edssp_scenario([task], [window])


def make_obs_task(task_id="t0", est=0, let=1000, duration=60, profit=5.0, separable=False):
    return ObsTask(
        id=task_id,
        est_s=est,
        let_s=let,
        duration_s=duration,
        profit=profit,
        separable=separable,
    )


def plain_window(task_id, sat_id="s0", index=0, evt=0, lvt=200):
    """Profile-free window, as used by the observation-planning model."""
    return VisibleWindow(
        satellite_id=sat_id,
        task_id=task_id,
        orbit_index=0,
        window_index=index,
        evt_s=evt,
        lvt_s=lvt,
    )


def bare_satellite(sat_id="s0"):
    return Satellite(
        id=sat_id,
        antenna_diameter_m=3.0,
        antenna_efficiency=0.6,
        unit_data_rate=1.0,
        storage_capacity=1e9,
        poweron_time_s=0,
        transition_tables=TransitionTables(),
        orbit_count=1,
    )


def msjopp_scenario(tasks, windows, satellites=None, horizon=(0, 2000), min_interval=5):
    if satellites is None:
        sat_ids = sorted({w.satellite_id for w in windows}) or ["s0"]
        satellites = tuple(bare_satellite(s) for s in sat_ids)
    return Scenario(
        kind=ScenarioKind.MSJOPP,
        satellites=tuple(satellites),
        tasks=tuple(tasks),
        windows=tuple(windows),
        horizon=horizon,
        min_interval_s=min_interval,
    )
