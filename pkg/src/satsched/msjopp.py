"""Multi-satellite joint observation planning with splittable tasks.

Tasks come in two flavors: inseparable ones that must run in a single
piece, and separable ones that may be cut into subtasks executed in
different visibility windows.  A separable task earns its profit only if
every subtask of its split plan is scheduled; partial execution is
feasible but worthless, which is why the decoder places subtasks
all-or-nothing.
"""

from __future__ import annotations

import math
from bisect import insort
from dataclasses import dataclass

from satsched.scenario import Scenario, Violation


@dataclass(frozen=True)
class SplitPlan:
    """How one separable task is cut into subtasks.

    ``subtask_durations`` sums exactly to the parent duration; an empty
    tuple marks a task that cannot be covered by its windows at all.
    """

    parent_task_id: str
    subtask_durations: tuple

    def __post_init__(self):
        object.__setattr__(self, "subtask_durations", tuple(self.subtask_durations))

    @property
    def is_feasible(self) -> bool:
        return bool(self.subtask_durations)


@dataclass(frozen=True)
class MsjoppAssignment:
    satellite_id: str
    task_id: str
    subtask_index: object  # int for separable subtasks, None for inseparable
    window_index: int
    start_s: int
    observed_s: int


@dataclass(frozen=True)
class MsjoppSchedule:
    assignments: tuple
    split_plans: dict  # task_id -> SplitPlan, for every separable task placed

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(self.assignments))
        object.__setattr__(self, "split_plans", dict(self.split_plans))


def usable_length(task, window) -> int:
    """Seconds of the window actually usable by the task."""
    return min(window.lvt_s, task.let_s) - max(window.evt_s, task.est_s)


def split_task(task, windows) -> SplitPlan:
    """Cut a separable task into chunks, longest usable window first.

    Greedy: each window takes min(remaining, usable length) until the
    duration is covered.  If the windows run out first the plan comes
    back empty (infeasible) rather than raising.
    """
    if not task.separable:
        raise ValueError(f"task {task.id} is not separable")
    ranked = sorted(
        windows,
        key=lambda w: (-usable_length(task, w), w.satellite_id, w.orbit_index, w.evt_s, w.window_index),
    )
    remaining = task.duration_s
    chunks = []
    for win in ranked:
        usable = usable_length(task, win)
        if usable <= 0:
            continue
        chunk = min(remaining, usable)
        chunks.append(chunk)
        remaining -= chunk
        if remaining == 0:
            return SplitPlan(task.id, tuple(chunks))
    return SplitPlan(task.id, ())


def check_schedule(scenario: Scenario, schedule: MsjoppSchedule) -> list:
    """Verify all scheduling constraints; one Violation per breach.

    Constraint ids: M1_EST/M2_LET and M5_EVT/M6_LVT for inseparable
    tasks, M3_SUB_EST/M4_SUB_LET and M7_SUB_EVT/M8_SUB_LVT for subtasks,
    M9_DURATION (inseparable observed time = duration), M10_SPLIT_SUM
    (subtask chunks sum to the duration once all are scheduled),
    M11_INTERVAL / M12_SUB_INTERVAL / M13_CROSS_INTERVAL (minimum gap
    between any two runs on one satellite), M14_ONCE / M15_SUB_ONCE, and
    M0_DOMAIN for references to unknown entities.
    """
    out: list = []
    gap = scenario.min_interval_s
    per_sat: dict = {}
    insep_counts: dict = {}
    sub_counts: dict = {}
    sub_seen: dict = {}

    for a in schedule.assignments:
        entity = f"assignment {a.task_id}" + ("" if a.subtask_index is None else f"/{a.subtask_index}")
        task = scenario.task_by_id.get(a.task_id)
        win = scenario.window_by_ref3.get((a.satellite_id, a.task_id, a.window_index))
        if task is None or a.satellite_id not in scenario.satellite_by_id or win is None:
            out.append(Violation("M0_DOMAIN", entity, "unknown task, satellite, or window reference"))
            continue
        if task.separable != (a.subtask_index is not None):
            out.append(Violation("M0_DOMAIN", entity, "subtask index allowed exactly for separable tasks"))
            continue

        end = a.start_s + a.observed_s
        if task.separable:
            plan = schedule.split_plans.get(a.task_id)
            if plan is None or not 0 <= a.subtask_index < len(plan.subtask_durations):
                out.append(Violation("M0_DOMAIN", entity, "subtask index outside the task's split plan"))
                continue
            sub_key = (a.task_id, a.subtask_index)
            sub_counts[sub_key] = sub_counts.get(sub_key, 0) + 1
            sub_seen.setdefault(a.task_id, {})[a.subtask_index] = (
                sub_seen.get(a.task_id, {}).get(a.subtask_index, 0) + a.observed_s
            )
            if a.observed_s <= 0:
                out.append(Violation("M10_SPLIT_SUM", entity, "observed seconds must be > 0"))
            if a.start_s < task.est_s:
                out.append(Violation("M3_SUB_EST", entity, f"start {a.start_s} before earliest start {task.est_s}"))
            if end > task.let_s:
                out.append(Violation("M4_SUB_LET", entity, f"end {end} after latest end {task.let_s}"))
            if a.start_s < win.evt_s:
                out.append(Violation("M7_SUB_EVT", entity, f"start {a.start_s} before window entry {win.evt_s}"))
            if end > win.lvt_s:
                out.append(Violation("M8_SUB_LVT", entity, f"end {end} after window exit {win.lvt_s}"))
        else:
            insep_counts[a.task_id] = insep_counts.get(a.task_id, 0) + 1
            if a.observed_s != task.duration_s:
                out.append(Violation(
                    "M9_DURATION", entity,
                    f"observed {a.observed_s}s, task needs exactly {task.duration_s}s",
                ))
            if a.start_s < task.est_s:
                out.append(Violation("M1_EST", entity, f"start {a.start_s} before earliest start {task.est_s}"))
            if end > task.let_s:
                out.append(Violation("M2_LET", entity, f"end {end} after latest end {task.let_s}"))
            if a.start_s < win.evt_s:
                out.append(Violation("M5_EVT", entity, f"start {a.start_s} before window entry {win.evt_s}"))
            if end > win.lvt_s:
                out.append(Violation("M6_LVT", entity, f"end {end} after window exit {win.lvt_s}"))
        per_sat.setdefault(a.satellite_id, []).append((a.start_s, end, task.separable, entity))

    for task_id, n in insep_counts.items():
        if n > 1:
            out.append(Violation("M14_ONCE", f"task {task_id}", f"scheduled {n} times"))
    for (task_id, sub_idx), n in sub_counts.items():
        if n > 1:
            out.append(Violation("M15_SUB_ONCE", f"task {task_id}/{sub_idx}", f"scheduled {n} times"))

    # A separable task with every subtask placed must add up to its duration.
    for task_id, by_index in sub_seen.items():
        plan = schedule.split_plans[task_id]
        if len(by_index) == len(plan.subtask_durations):
            total = sum(by_index.values())
            need = scenario.task_by_id[task_id].duration_s
            if total != need:
                out.append(Violation(
                    "M10_SPLIT_SUM", f"task {task_id}",
                    f"subtasks observe {total}s in total, task needs {need}s",
                ))

    for sat_id, rows in sorted(per_sat.items()):
        rows.sort(key=lambda r: (r[0], r[1], r[3]))
        for i, (s0, e0, sep0, ent0) in enumerate(rows):
            for s1, e1, sep1, ent1 in rows[i + 1:]:
                # Symmetric: fine iff one run ends (plus the gap) before the other starts.
                if e0 + gap <= s1 or e1 + gap <= s0:
                    continue
                cid = "M12_SUB_INTERVAL" if (sep0 and sep1) else (
                    "M11_INTERVAL" if not (sep0 or sep1) else "M13_CROSS_INTERVAL")
                out.append(Violation(
                    cid, f"satellite {sat_id}",
                    f"{ent0} and {ent1} run within {gap}s of each other",
                ))
    return out


def objective_value(scenario: Scenario, schedule: MsjoppSchedule) -> float:
    """Total profit: inseparable tasks count when scheduled; separable
    tasks count only when every subtask of their split plan is scheduled."""
    insep_done = set()
    sub_done: dict = {}
    for a in schedule.assignments:
        task = scenario.task_by_id.get(a.task_id)
        if task is None:
            continue
        if a.subtask_index is None:
            insep_done.add(a.task_id)
        else:
            sub_done.setdefault(a.task_id, set()).add(a.subtask_index)

    f1 = math.fsum(scenario.task_by_id[t].profit for t in sorted(insep_done))
    f2 = 0.0
    for task_id in sorted(sub_done):
        plan = schedule.split_plans.get(task_id)
        if plan is not None and plan.is_feasible and len(sub_done[task_id]) == len(plan.subtask_durations):
            f2 += scenario.task_by_id[task_id].profit
    return f1 + f2


class MsjoppPlacer:
    """Greedy earliest-feasible placement with commit/undo.

    Separable tasks are placed whole: all subtasks of the split plan or
    none.  The committed schedule is always feasible.
    """

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.gap = scenario.min_interval_s
        self.lanes: dict = {}  # satellite_id -> start-sorted [start, end]
        self.placed: list = []
        self.split_plans: dict = {}
        for task in scenario.tasks:
            if task.separable:
                self.split_plans[task.id] = split_task(task, scenario.windows_by_task[task.id])

    def _earliest_in_window(self, task, win, duration: int):
        s_min = max(task.est_s, win.evt_s)
        s_max = min(task.let_s, win.lvt_s) - duration
        if s_min > s_max:
            return None
        lane = self.lanes.get(win.satellite_id, [])
        prev = None
        for row in lane + [None]:
            lo = s_min if prev is None else max(s_min, prev[1] + self.gap)
            hi = s_max if row is None else min(s_max, row[0] - duration - self.gap)
            prev = row
            if lo <= hi:
                return lo
        return None

    def _best_piece(self, task, duration: int):
        """Earliest feasible (start, window) for one piece of the task."""
        best = None
        for win in self.scenario.windows_by_task[task.id]:
            s = self._earliest_in_window(task, win, duration)
            if s is None:
                continue
            key = (s, win.satellite_id, win.orbit_index, win.evt_s, win.window_index)
            if best is None or key < best[0]:
                best = (key, win)
        return best

    def place_task(self, task_id: str):
        """Assignments that schedule the whole task now, or None.

        One assignment for an inseparable task; one per split-plan chunk
        for a separable one (all-or-nothing, committed tentatively and
        rolled back if a later chunk cannot fit).
        """
        task = self.scenario.task_by_id[task_id]
        if not task.separable:
            best = self._best_piece(task, task.duration_s)
            if best is None:
                return None
            (start, *_), win = best
            return [MsjoppAssignment(win.satellite_id, task_id, None, win.window_index,
                                     start, task.duration_s)]
        plan = self.split_plans[task_id]
        if not plan.is_feasible:
            return None
        done = []
        for idx, chunk in enumerate(plan.subtask_durations):
            best = self._best_piece(task, chunk)
            if best is None:
                for a in done:
                    self.undo(a)
                return None
            (start, *_), win = best
            a = MsjoppAssignment(win.satellite_id, task_id, idx, win.window_index, start, chunk)
            self.commit(a)
            done.append(a)
        for a in done:
            self.undo(a)
        return done

    def commit(self, assignment: MsjoppAssignment) -> None:
        row = (assignment.start_s, assignment.start_s + assignment.observed_s, assignment)
        insort(self.lanes.setdefault(assignment.satellite_id, []), row, key=lambda r: r[0])
        self.placed.append(assignment)

    def commit_all(self, assignments) -> None:
        for a in assignments:
            self.commit(a)

    def undo(self, assignment: MsjoppAssignment) -> None:
        self.lanes[assignment.satellite_id].remove(
            (assignment.start_s, assignment.start_s + assignment.observed_s, assignment)
        )
        self.placed.remove(assignment)

    def undo_all(self, assignments) -> None:
        for a in assignments:
            self.undo(a)

    def to_schedule(self) -> MsjoppSchedule:
        plans = {a.task_id: self.split_plans[a.task_id]
                 for a in self.placed if a.subtask_index is not None}
        return MsjoppSchedule(tuple(self.placed), plans)


def decode_permutation(scenario: Scenario, order) -> MsjoppSchedule:
    """Decode a task ordering into a feasible schedule.

    Tasks are placed one by one at their earliest feasible start;
    separable tasks go in whole or not at all.  Accepts task ids or
    integer indexes into ``scenario.tasks``.
    """
    placer = MsjoppPlacer(scenario)
    for item in order:
        task_id = item if isinstance(item, str) else scenario.tasks[item].id
        assignments = placer.place_task(task_id)
        if assignments is not None:
            placer.commit_all(assignments)
    return placer.to_schedule()
