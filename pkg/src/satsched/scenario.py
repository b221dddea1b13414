"""Problem-instance data model shared by the EDSSP and MSJOPP schedulers.

Conventions used throughout the package:

* all times are integer epoch seconds (no floats, so feasibility checks
  never hinge on rounding),
* angles are radians, stored as floats,
* every type here is immutable after construction and safe to share
  between threads.

Detection-angle histories are piecewise-linear sample profiles attached to
each visible window; nothing in this package propagates orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union


class ScenarioKind(str, Enum):
    EDSSP = "edssp"
    MSJOPP = "msjopp"


@dataclass(frozen=True)
class Violation:
    """One broken invariant or scheduling constraint, as data (never raised)."""

    constraint_id: str
    entity: str
    message: str

    def __str__(self) -> str:
        return f"{self.constraint_id} {self.entity} {self.message}"


@dataclass(frozen=True)
class TransitionTables:
    """Reconfiguration times in seconds, keyed by (from_value, to_value).

    Missing off-diagonal pairs are an error at lookup time; a missing
    diagonal pair defaults to 0 (no change means no reconfiguration).
    """

    polarization: dict = field(default_factory=dict)
    mode: dict = field(default_factory=dict)
    band: dict = field(default_factory=dict)
    frequency: dict = field(default_factory=dict)

    def seconds(self, table_name: str, before, after) -> float:
        table = getattr(self, table_name)
        if before == after:
            return table.get((before, after), 0.0)
        try:
            return table[(before, after)]
        except KeyError:
            raise ValueError(
                f"unknown parameter transition {table_name}: {before!r} -> {after!r}"
            ) from None


@dataclass(frozen=True)
class Satellite:
    id: str
    antenna_diameter_m: float
    antenna_efficiency: float
    unit_data_rate: float
    storage_capacity: float
    poweron_time_s: int
    transition_tables: TransitionTables
    orbit_count: int


@dataclass(frozen=True)
class EdsspTask:
    """A passive electromagnetic detection task."""

    id: str
    est_s: int
    let_s: int
    duration_s: int
    max_angle_rad: float
    degree: int
    wavelength_m: float
    frequency: str
    polarization: str
    mode: str


@dataclass(frozen=True)
class ObsTask:
    """An imaging/observation task; separable tasks may be split across windows."""

    id: str
    est_s: int
    let_s: int
    duration_s: int
    profit: float
    separable: bool


@dataclass(frozen=True)
class VisibleWindow:
    """One satellite-to-target visibility interval.

    ``angle_profile`` holds (time_s, angle_rad) samples spanning
    [evt_s, lvt_s]; it is empty in MSJOPP scenarios, which do not model
    detection angles.
    """

    satellite_id: str
    task_id: str
    orbit_index: int
    window_index: int
    evt_s: int
    lvt_s: int
    angle_profile: tuple = ()


Task = Union[EdsspTask, ObsTask]


@dataclass(frozen=True)
class Scenario:
    kind: ScenarioKind
    satellites: tuple
    tasks: tuple
    windows: tuple
    horizon: tuple  # (start_s, end_s)
    bandwidth_levels: tuple = None  # EDSSP only, strictly decreasing
    min_interval_s: int = None  # MSJOPP only

    def __post_init__(self):
        object.__setattr__(self, "satellites", tuple(self.satellites))
        object.__setattr__(self, "tasks", tuple(self.tasks))
        object.__setattr__(self, "windows", tuple(self.windows))
        object.__setattr__(self, "horizon", tuple(self.horizon))
        if self.bandwidth_levels is not None:
            object.__setattr__(self, "bandwidth_levels", tuple(self.bandwidth_levels))
        # Lookup indexes, built once; the dataclass stays logically immutable.
        object.__setattr__(self, "satellite_by_id", {s.id: s for s in self.satellites})
        object.__setattr__(self, "task_by_id", {t.id: t for t in self.tasks})
        by_task = {t.id: [] for t in self.tasks}
        by_ref = {}
        by_ref3 = {}
        for w in self.windows:
            if w.task_id in by_task:
                by_task[w.task_id].append(w)
            by_ref[(w.satellite_id, w.task_id, w.orbit_index, w.window_index)] = w
            by_ref3[(w.satellite_id, w.task_id, w.window_index)] = w
        for task_id, ws in by_task.items():
            ws.sort(key=lambda w: (w.satellite_id, w.orbit_index, w.evt_s, w.window_index))
            by_task[task_id] = tuple(ws)
        object.__setattr__(self, "windows_by_task", by_task)
        object.__setattr__(self, "window_by_ref", by_ref)
        # MSJOPP assignments identify windows without an orbit component.
        object.__setattr__(self, "window_by_ref3", by_ref3)


def angle_at(window: VisibleWindow, t: float) -> float:
    """Detection angle at time ``t``, linearly interpolated between samples.

    Raises ValueError for queries outside [evt_s, lvt_s] or windows without
    an angle profile.
    """
    profile = window.angle_profile
    if not profile:
        raise ValueError(f"window {window.task_id}/{window.window_index} has no angle profile")
    if t < window.evt_s or t > window.lvt_s:
        raise ValueError(
            f"time outside window: t={t} not in [{window.evt_s}, {window.lvt_s}]"
        )
    prev_t, prev_a = profile[0]
    if t <= prev_t:
        return prev_a
    for cur_t, cur_a in profile[1:]:
        if t <= cur_t:
            frac = (t - prev_t) / (cur_t - prev_t)
            return prev_a + frac * (cur_a - prev_a)
        prev_t, prev_a = cur_t, cur_a
    return profile[-1][1]


def min_angle_over(window: VisibleWindow, start_s: int, end_s: int) -> float:
    """Minimum detection angle over [start_s, end_s].

    Exact for piecewise-linear profiles: the minimum is attained either at
    an endpoint of the interval or at an interior sample point.
    """
    best = min(angle_at(window, start_s), angle_at(window, end_s))
    for t, a in window.angle_profile:
        if start_s < t < end_s and a < best:
            best = a
    return best


def _is_time(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_satellite(sat: Satellite, out: list) -> None:
    entity = f"satellite {sat.id}"

    def bad(msg):
        out.append(Violation("S_SATELLITE", entity, msg))

    if not sat.antenna_diameter_m > 0:
        bad("antenna diameter must be > 0")
    if not 0 < sat.antenna_efficiency <= 1:
        bad("antenna efficiency must be in (0, 1]")
    if sat.storage_capacity < 0:
        bad("storage capacity must be >= 0")
    if sat.poweron_time_s < 0:
        bad("power-on time must be >= 0")
    if not (isinstance(sat.orbit_count, int) and sat.orbit_count >= 1):
        bad("orbit count must be a positive integer")
    for name in ("polarization", "mode", "band", "frequency"):
        for (before, after), secs in getattr(sat.transition_tables, name).items():
            if secs < 0:
                bad(f"{name} transition ({before!r} -> {after!r}) must be >= 0")
            if before == after and secs != 0:
                bad(f"{name} transition with identical endpoints must be 0")


def _check_edssp_task(task: EdsspTask, out: list) -> None:
    entity = f"task {task.id}"

    def bad(msg):
        out.append(Violation("S_TASK", entity, msg))

    if not (_is_time(task.est_s) and _is_time(task.let_s) and _is_time(task.duration_s)):
        bad("times must be integer seconds")
        return
    if task.duration_s <= 0:
        bad("duration must be > 0")
    if task.est_s + task.duration_s > task.let_s:
        bad("est + duration must not exceed let")
    if not 0 < task.max_angle_rad < math.pi / 2:
        bad("max angle must be in (0, pi/2)")
    if not (_is_time(task.degree) and 1 <= task.degree <= 100):
        bad("degree range must be [1, 100]")
    if not task.wavelength_m > 0:
        bad("wavelength must be > 0")


def _check_obs_task(task: ObsTask, out: list) -> None:
    entity = f"task {task.id}"

    def bad(msg):
        out.append(Violation("S_TASK", entity, msg))

    if not (_is_time(task.est_s) and _is_time(task.let_s) and _is_time(task.duration_s)):
        bad("times must be integer seconds")
        return
    if task.duration_s <= 0:
        bad("duration must be > 0")
    if task.profit < 0:
        bad("profit must be >= 0")
    slack = 0 if task.separable else task.duration_s
    if task.est_s + slack > task.let_s:
        bad("est + duration must not exceed let")


def _check_window(win: VisibleWindow, kind: ScenarioKind, out: list) -> None:
    entity = f"window {win.task_id}/{win.satellite_id}/{win.orbit_index}/{win.window_index}"

    def bad(msg):
        out.append(Violation("S_WINDOW", entity, msg))

    if not (_is_time(win.evt_s) and _is_time(win.lvt_s)):
        bad("times must be integer seconds")
        return
    if not win.evt_s < win.lvt_s:
        bad("evt<lvt required")
    if win.orbit_index < 0:
        bad("orbit index must be >= 0")
    profile = win.angle_profile
    if kind is ScenarioKind.MSJOPP:
        if profile:
            bad("angle profile must be empty in MSJOPP scenarios")
        return
    if len(profile) < 2:
        bad("angle profile needs samples at evt and lvt")
        return
    times = [p[0] for p in profile]
    if any(not _is_time(t) for t in times):
        bad("angle sample times must be integer seconds")
        return
    if times[0] != win.evt_s or times[-1] != win.lvt_s:
        bad("angle profile must span [evt, lvt]")
    if any(b <= a for a, b in zip(times, times[1:])):
        bad("angle sample times must be strictly increasing")
    if any(p[1] < 0 for p in profile):
        bad("angles must be >= 0")


def validate_scenario(scenario: Scenario) -> list:
    """Check every type invariant; returns one Violation per broken rule.

    Pure and idempotent; an empty list means the scenario is well formed.
    """
    out: list = []
    start_s, end_s = scenario.horizon
    if not (_is_time(start_s) and _is_time(end_s) and start_s < end_s):
        out.append(Violation("S_SCENARIO", "horizon", "horizon must be integer seconds, start < end"))
        return out

    expected_task = EdsspTask if scenario.kind is ScenarioKind.EDSSP else ObsTask
    seen = set()
    for sat in scenario.satellites:
        if sat.id in seen:
            out.append(Violation("S_SCENARIO", f"satellite {sat.id}", "duplicate satellite id"))
        seen.add(sat.id)
        _check_satellite(sat, out)

    seen = set()
    for task in scenario.tasks:
        if task.id in seen:
            out.append(Violation("S_SCENARIO", f"task {task.id}", "duplicate task id"))
        seen.add(task.id)
        if not isinstance(task, expected_task):
            out.append(Violation("S_SCENARIO", f"task {task.id}",
                                 f"task type does not match scenario kind {scenario.kind.value}"))
            continue
        if scenario.kind is ScenarioKind.EDSSP:
            _check_edssp_task(task, out)
        else:
            _check_obs_task(task, out)
        if task.est_s < start_s or task.let_s > end_s:
            out.append(Violation("S_SCENARIO", f"task {task.id}", "task times outside horizon"))

    seen = set()
    seen3 = set()
    for win in scenario.windows:
        entity = f"window {win.task_id}/{win.satellite_id}/{win.orbit_index}/{win.window_index}"
        key = (win.satellite_id, win.task_id, win.orbit_index, win.window_index)
        if key in seen:
            out.append(Violation("S_SCENARIO", entity, "duplicate window reference"))
        seen.add(key)
        if scenario.kind is ScenarioKind.MSJOPP:
            # The orbit plays no role in MSJOPP window identity.
            key3 = (win.satellite_id, win.task_id, win.window_index)
            if key3 in seen3:
                out.append(Violation("S_SCENARIO", entity, "duplicate window reference"))
            seen3.add(key3)
        sat = scenario.satellite_by_id.get(win.satellite_id)
        if sat is None:
            out.append(Violation("S_SCENARIO", entity, "unknown satellite reference"))
        elif not 0 <= win.orbit_index < sat.orbit_count:
            out.append(Violation("S_SCENARIO", entity, "orbit index outside satellite orbit count"))
        if win.task_id not in scenario.task_by_id:
            out.append(Violation("S_SCENARIO", entity, "unknown task reference"))
        _check_window(win, scenario.kind, out)
        if _is_time(win.evt_s) and _is_time(win.lvt_s) and (win.evt_s < start_s or win.lvt_s > end_s):
            out.append(Violation("S_SCENARIO", entity, "window times outside horizon"))

    if scenario.kind is ScenarioKind.EDSSP:
        levels = scenario.bandwidth_levels
        if levels is None or len(levels) != 4:
            out.append(Violation("S_SCENARIO", "bandwidth_levels", "EDSSP needs four bandwidth levels"))
        elif not all(a > b > 0 for a, b in zip(levels, levels[1:])):
            out.append(Violation("S_SCENARIO", "bandwidth_levels",
                                 "bandwidth levels must be strictly decreasing and positive"))
    else:
        if not (_is_time(scenario.min_interval_s) and scenario.min_interval_s >= 0):
            out.append(Violation("S_SCENARIO", "min_interval_s",
                                 "MSJOPP needs a nonnegative integer minimum interval"))
    return out
