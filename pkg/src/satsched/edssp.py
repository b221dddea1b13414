"""Electromagnetic detection satellite scheduling: physics, checks, decoding.

The model schedules passive detection tasks on satellite antennas.  Antenna
gain follows the circular-aperture two-term Bessel approximation; received
signal quality degrades as the detection angle moves off boresight, and the
objective rewards schedules that execute important tasks near their
best-angle moments.

All gain arithmetic is done in linear scale (never dB).
"""

from __future__ import annotations

import math
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction

from satsched.scenario import (
    Scenario,
    VisibleWindow,
    Violation,
    angle_at,
    min_angle_over,
)

# u = _OFF_AXIS_COEFF * sin(angle) / sin(beamwidth) maps the half-power
# beamwidth to the -3 dB point of the two-term pattern below.
_OFF_AXIS_COEFF = 2.07123

# Above this the alternating float series loses too much precision to
# cancellation; switch to exact rational arithmetic (slow, but cold path).
_FLOAT_SERIES_MAX = 14.0


def bessel_j(order: int, u: float) -> float:
    """Bessel function of the first kind, orders 1 and 3 only.

    Uses the ascending power series.  For small |u| the terms are summed
    in floats with ``math.fsum``; for large |u| the alternating series
    cancels catastrophically in floats, so the partial sums are computed
    in exact rational arithmetic and rounded once at the end.
    """
    if order not in (1, 3):
        raise ValueError(f"unsupported Bessel order {order}; this model needs only 1 and 3")
    x = float(u)
    if x == 0.0:
        return 0.0
    if abs(x) <= _FLOAT_SERIES_MAX:
        return _bessel_series_float(order, x)
    return _bessel_series_exact(order, x)


def _bessel_series_float(order: int, x: float) -> float:
    half = x / 2.0
    z = half * half
    term = half**order / math.factorial(order)
    terms = [term]
    k = 0
    while True:
        k += 1
        term *= -z / (k * (k + order))
        terms.append(term)
        if abs(term) < 1e-20 and k > abs(x):
            return math.fsum(terms)


def _bessel_series_exact(order: int, x: float) -> float:
    half = Fraction(x) / 2
    z = half * half
    term = half**order / math.factorial(order)
    total = Fraction(0)
    cutoff = Fraction(1, 10**25)
    k = 0
    while True:
        total += term
        k += 1
        term *= -z / (k * (k + order))
        if abs(term) < cutoff and k > abs(x):
            return float(total + term)


def half_power_beamwidth_rad(diameter_m: float, wavelength_m: float) -> float:
    """Half-power (-3 dB) beamwidth of a circular aperture, in radians."""
    return math.radians(70.0 * wavelength_m / diameter_m)


def peak_gain(diameter_m: float, wavelength_m: float, efficiency: float) -> float:
    """Boresight gain of a circular aperture (linear scale)."""
    return efficiency * math.pi**2 * diameter_m**2 / wavelength_m**2


def signal_gain(
    diameter_m: float, wavelength_m: float, efficiency: float, angle_rad: float
) -> float:
    """Antenna gain toward an emitter ``angle_rad`` off boresight (linear).

    The off-axis pattern is the two-term Bessel model
    ``[J1(u)/(2u) + 36*J3(u)/u^3]^2``; its bracket tends to 1 as u -> 0,
    so the gain at zero angle equals the peak gain.
    """
    g0 = peak_gain(diameter_m, wavelength_m, efficiency)
    theta3db = half_power_beamwidth_rad(diameter_m, wavelength_m)
    u = _OFF_AXIS_COEFF * math.sin(angle_rad) / math.sin(theta3db)
    return g0 * _pattern_bracket(u) ** 2


def _pattern_bracket(u: float) -> float:
    if u == 0.0:
        return 1.0
    return bessel_j(1, u) / (2.0 * u) + 36.0 * bessel_j(3, u) / u**3


def bandwidth_for_degree(levels, degree: int) -> float:
    """Receiver bandwidth allotted to a task of the given importance degree.

    Degrees partition into four brackets: (75, 100] -> levels[0],
    (50, 75] -> levels[1], (25, 50] -> levels[2], (0, 25] -> levels[3].
    """
    if not isinstance(degree, int) or isinstance(degree, bool) or not 1 <= degree <= 100:
        raise ValueError(f"degree must be an integer in [1, 100], got {degree!r}")
    if degree > 75:
        return levels[0]
    if degree > 50:
        return levels[1]
    if degree > 25:
        return levels[2]
    return levels[3]


def bandwidth_weight(levels, degree: int) -> float:
    """Bandwidth share of a task, normalized to the widest level."""
    return bandwidth_for_degree(levels, degree) / levels[0]


def data_volume(satellite, task, levels) -> float:
    """Data produced by one execution: rate x bandwidth x duration."""
    return satellite.unit_data_rate * bandwidth_for_degree(levels, task.degree) * task.duration_s


def transition_seconds(satellite, task_before, task_after, levels) -> float:
    """Antenna reconfiguration time between two consecutive tasks.

    The four parameter switches happen in parallel with the power-on
    delay, so the total is the maximum of all of them.
    """
    tables = satellite.transition_tables
    return max(
        tables.seconds("frequency", task_before.frequency, task_after.frequency),
        tables.seconds(
            "band",
            bandwidth_for_degree(levels, task_before.degree),
            bandwidth_for_degree(levels, task_after.degree),
        ),
        tables.seconds("polarization", task_before.polarization, task_after.polarization),
        tables.seconds("mode", task_before.mode, task_after.mode),
        satellite.poweron_time_s,
        0,
    )


@dataclass(frozen=True)
class EdsspAssignment:
    task_id: str
    satellite_id: str
    orbit_index: int
    window_index: int
    start_s: int


@dataclass(frozen=True)
class EdsspSchedule:
    assignments: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(self.assignments))


# Storage sums are compared with a hair of slack so that re-checking a
# schedule cannot flip on float addition order alone.
_STORAGE_SLACK = 1e-9


def check_schedule(scenario: Scenario, schedule: EdsspSchedule) -> list:
    """Verify every scheduling constraint; one Violation per breach.

    Constraint ids: C1_EST, C2_LET, C3_ANGLE, C4_EVT, C5_LVT, C6_STORAGE,
    C7_TRANSITION, C8_ONCE, C9_DOMAIN.  Domain errors (references to
    unknown entities) suppress the remaining checks for that assignment
    only; everything else is still checked.
    """
    out: list = []
    levels = scenario.bandwidth_levels
    lanes: dict = {}
    counts: dict = {}

    for a in schedule.assignments:
        entity = f"assignment {a.task_id}"
        task = scenario.task_by_id.get(a.task_id)
        sat = scenario.satellite_by_id.get(a.satellite_id)
        win = scenario.window_by_ref.get(
            (a.satellite_id, a.task_id, a.orbit_index, a.window_index)
        )
        if task is None or sat is None or win is None:
            out.append(Violation("C9_DOMAIN", entity, "unknown task, satellite, or window reference"))
            continue
        counts[a.task_id] = counts.get(a.task_id, 0) + 1

        end = a.start_s + task.duration_s
        if a.start_s < task.est_s:
            out.append(Violation("C1_EST", entity, f"start {a.start_s} before earliest start {task.est_s}"))
        if end > task.let_s:
            out.append(Violation("C2_LET", entity, f"end {end} after latest end {task.let_s}"))
        if a.start_s < win.evt_s:
            out.append(Violation("C4_EVT", entity, f"start {a.start_s} before window entry {win.evt_s}"))
        if end > win.lvt_s:
            out.append(Violation("C5_LVT", entity, f"end {end} after window exit {win.lvt_s}"))
        if win.evt_s <= a.start_s and end <= win.lvt_s:
            for t in range(a.start_s, end + 1):
                if angle_at(win, t) > task.max_angle_rad:
                    out.append(Violation(
                        "C3_ANGLE", entity,
                        f"detection angle exceeds limit at second {t}",
                    ))
                    break
        lanes.setdefault((a.satellite_id, a.orbit_index), []).append((a.start_s, end, task))

    for task_id, n in counts.items():
        if n > 1:
            out.append(Violation("C8_ONCE", f"task {task_id}", f"scheduled {n} times"))

    for (sat_id, orbit), rows in sorted(lanes.items()):
        sat = scenario.satellite_by_id[sat_id]
        used = math.fsum(data_volume(sat, task, levels) for _, _, task in rows)
        if used > sat.storage_capacity * (1.0 + _STORAGE_SLACK) + _STORAGE_SLACK:
            out.append(Violation(
                "C6_STORAGE", f"satellite {sat_id} orbit {orbit}",
                f"stored volume {used:.6g} exceeds capacity {sat.storage_capacity:.6g}",
            ))
        rows.sort(key=lambda r: r[0])
        for (s0, e0, t0), (s1, e1, t1) in zip(rows, rows[1:]):
            gap = transition_seconds(sat, t0, t1, levels)
            if e0 + gap > s1:
                out.append(Violation(
                    "C7_TRANSITION", f"satellite {sat_id} orbit {orbit}",
                    f"tasks {t0.id} and {t1.id} need {gap:.6g}s reconfiguration, have {s1 - e0}s",
                ))
    return out


def task_contribution(scenario: Scenario, assignment: EdsspAssignment) -> float:
    """Objective contribution of one executed task: gain at the best
    (minimum) detection angle over its run, weighted by bandwidth share."""
    task = scenario.task_by_id[assignment.task_id]
    sat = scenario.satellite_by_id[assignment.satellite_id]
    win = scenario.window_by_ref[
        (assignment.satellite_id, assignment.task_id, assignment.orbit_index, assignment.window_index)
    ]
    angle = min_angle_over(win, assignment.start_s, assignment.start_s + task.duration_s)
    gain = signal_gain(sat.antenna_diameter_m, task.wavelength_m, sat.antenna_efficiency, angle)
    return gain * bandwidth_weight(scenario.bandwidth_levels, task.degree)


def objective(scenario: Scenario, schedule: EdsspSchedule) -> float:
    # Summed in a canonical order so the value depends only on WHAT was
    # scheduled, never on the order assignments were appended.
    ordered = sorted(
        schedule.assignments,
        key=lambda a: (a.task_id, a.satellite_id, a.orbit_index, a.window_index, a.start_s),
    )
    return math.fsum(task_contribution(scenario, a) for a in ordered)


def _bad_seconds(window: VisibleWindow, max_angle: float) -> list:
    """Integer seconds inside the window whose angle exceeds the limit,
    as disjoint closed intervals [a, b], ascending.

    Boundary seconds are classified with the same interpolation the
    checker uses, so placement and checking can never disagree.
    """
    bad = []
    profile = window.angle_profile
    for (t0, a0), (t1, a1) in zip(profile, profile[1:]):
        over0, over1 = a0 > max_angle, a1 > max_angle
        if not over0 and not over1:
            continue
        if over0 and over1:
            bad.append((t0, t1))
            continue
        # One crossing on this segment; seed from the linear solution and
        # settle the boundary integer by direct evaluation.
        cross = t0 + (max_angle - a0) * (t1 - t0) / (a1 - a0)
        if over0:  # decreasing through the limit: bad prefix [t0, k]
            k = min(t1, max(t0, math.floor(cross)))
            while k > t0 and angle_at(window, k) <= max_angle:
                k -= 1
            while k + 1 <= t1 and angle_at(window, k + 1) > max_angle:
                k += 1
            if angle_at(window, k) > max_angle:
                bad.append((t0, k))
        else:  # increasing through the limit: bad suffix [k, t1]
            k = max(t0, min(t1, math.ceil(cross)))
            while k < t1 and angle_at(window, k) <= max_angle:
                k += 1
            while k - 1 >= t0 and angle_at(window, k - 1) > max_angle:
                k -= 1
            if angle_at(window, k) > max_angle:
                bad.append((k, t1))
    if not bad:
        return bad
    bad.sort()
    merged = [bad[0]]
    for lo, hi in bad[1:]:
        if lo <= merged[-1][1] + 1:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


class EdsspPlacer:
    """Greedy earliest-feasible placement with commit/undo.

    Used both by permutation decoding (place tasks in order, skip the
    impossible ones) and by the exhaustive optimizer, which explores
    alternatives by undoing placements.  The committed schedule is
    feasible at all times.
    """

    def __init__(self, scenario: Scenario, angle_cache: dict = None):
        self.scenario = scenario
        self.levels = scenario.bandwidth_levels
        # (satellite_id, orbit_index) -> start-sorted [start, end, task, assignment]
        self.lanes: dict = {}
        self.loads: dict = {}
        self.placed: list = []
        # Callers decoding one scenario many times can pass a shared dict.
        self._bad_cache: dict = {} if angle_cache is None else angle_cache

    def _bad(self, win: VisibleWindow, max_angle: float):
        key = (win.satellite_id, win.task_id, win.orbit_index, win.window_index)
        got = self._bad_cache.get(key)
        if got is None:
            got = _bad_seconds(win, max_angle)
            self._bad_cache[key] = got
        return got

    def _earliest_in_window(self, task, win):
        """Earliest feasible start in one window, or None."""
        sat = self.scenario.satellite_by_id[win.satellite_id]
        volume = data_volume(sat, task, self.levels)
        if self.loads.get((win.satellite_id, win.orbit_index), 0.0) + volume > sat.storage_capacity:
            return None
        s_min = max(task.est_s, win.evt_s)
        s_max = min(task.let_s, win.lvt_s) - task.duration_s
        if s_min > s_max:
            return None
        bad = self._bad(win, task.max_angle_rad)
        lane = self.lanes.get((win.satellite_id, win.orbit_index), [])
        # Candidate gaps between already-placed runs, in time order.
        prev = None
        best = None
        for row in lane + [None]:
            lo = s_min
            hi = s_max
            if prev is not None:
                lo = max(lo, prev[1] + transition_seconds(sat, prev[2], task, self.levels))
            if row is not None:
                hi = min(hi, row[0] - task.duration_s - transition_seconds(sat, task, row[2], self.levels))
            prev = row
            if lo > hi:
                continue
            s = _first_clear(lo, hi, task.duration_s, bad)
            if s is not None:
                best = s
                break  # gaps are time-ordered, so the first hit is earliest
        return best

    def place_earliest(self, task_id: str):
        """Best feasible assignment for the task right now, or None.

        Earliest start wins; ties break on (satellite, orbit, window
        entry, window index) so decoding is order-deterministic.
        """
        task = self.scenario.task_by_id[task_id]
        best = None
        for win in self.scenario.windows_by_task[task_id]:
            s = self._earliest_in_window(task, win)
            if s is None:
                continue
            key = (s, win.satellite_id, win.orbit_index, win.evt_s, win.window_index)
            if best is None or key < best[0]:
                best = (key, win)
        if best is None:
            return None
        (start, *_), win = best
        return EdsspAssignment(task_id, win.satellite_id, win.orbit_index, win.window_index, start)

    def commit(self, assignment: EdsspAssignment) -> None:
        task = self.scenario.task_by_id[assignment.task_id]
        sat = self.scenario.satellite_by_id[assignment.satellite_id]
        lane_key = (assignment.satellite_id, assignment.orbit_index)
        row = (assignment.start_s, assignment.start_s + task.duration_s, task, assignment)
        insort(self.lanes.setdefault(lane_key, []), row, key=lambda r: r[0])
        self.loads[lane_key] = self.loads.get(lane_key, 0.0) + data_volume(sat, task, self.levels)
        self.placed.append(assignment)

    def undo(self, assignment: EdsspAssignment) -> None:
        task = self.scenario.task_by_id[assignment.task_id]
        sat = self.scenario.satellite_by_id[assignment.satellite_id]
        lane_key = (assignment.satellite_id, assignment.orbit_index)
        lane = self.lanes[lane_key]
        lane.remove((assignment.start_s, assignment.start_s + task.duration_s, task, assignment))
        self.loads[lane_key] -= data_volume(sat, task, self.levels)
        self.placed.remove(assignment)

    def to_schedule(self) -> EdsspSchedule:
        return EdsspSchedule(tuple(self.placed))


def _first_clear(lo: int, hi: int, duration: int, bad):
    """Smallest s in [lo, hi] with [s, s+duration] free of bad seconds."""
    s = lo
    for b0, b1 in bad:
        if b0 > s + duration:
            break
        if b1 >= s:
            s = b1 + 1
            if s > hi:
                return None
    return s if s <= hi else None


def decode_permutation(scenario: Scenario, order, angle_cache: dict = None) -> EdsspSchedule:
    """Decode a task ordering into a feasible schedule.

    Tasks are placed one by one at their earliest feasible start; tasks
    with no feasible placement left are skipped.  Accepts task ids or
    integer indexes into ``scenario.tasks``.
    """
    placer = EdsspPlacer(scenario, angle_cache)
    for item in order:
        task_id = item if isinstance(item, str) else scenario.tasks[item].id
        a = placer.place_earliest(task_id)
        if a is not None:
            placer.commit(a)
    return placer.to_schedule()
