"""Strict JSON serialization for scenarios and solver results.

Parsing is deliberately unforgiving: unknown keys are rejected, time
fields must be integers (never floats), and the version key must match.
Serialization is canonical -- fixed key order, sorted transition tables --
so identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from satsched import edssp, msjopp
from satsched.scenario import (
    EdsspTask,
    ObsTask,
    Satellite,
    Scenario,
    ScenarioKind,
    TransitionTables,
    VisibleWindow,
    Violation,
)
from satsched.rl_ea import RlEaConfig

FORMAT_VERSION = 1

TRACE_HEADER = "generation,state,action,reward,best_fitness,mean_fitness,epsilon"


class FormatError(ValueError):
    """Raised when a document does not match the expected schema."""


# ---------------------------------------------------------------------------
# strict-parsing helpers


def _pop(obj: dict, key: str, where: str):
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    return obj.pop(key)


def _done(obj: dict, where: str) -> None:
    if obj:
        raise FormatError(f"{where}: unknown keys {sorted(obj)}")


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _as_num(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _as_str(value, where: str) -> str:
    if not isinstance(value, str):
        raise FormatError(f"{where}: expected a string, got {value!r}")
    return value


def _as_bool(value, where: str) -> bool:
    if not isinstance(value, bool):
        raise FormatError(f"{where}: expected a boolean, got {value!r}")
    return value


def _as_list(value, where: str) -> list:
    if not isinstance(value, list):
        raise FormatError(f"{where}: expected a list, got {value!r}")
    return value


def _as_dict(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise FormatError(f"{where}: expected an object, got {value!r}")
    return dict(value)


# ---------------------------------------------------------------------------
# scenario


def _table_to_list(table: dict) -> list:
    return [[a, b, secs] for (a, b), secs in sorted(table.items())]


def _table_from_list(rows, keys: str, where: str) -> dict:
    out = {}
    for i, row in enumerate(_as_list(rows, where)):
        row = _as_list(row, f"{where}[{i}]")
        if len(row) != 3:
            raise FormatError(f"{where}[{i}]: expected [from, to, seconds]")
        a, b, secs = row
        if keys == "num":
            a, b = _as_num(a, f"{where}[{i}]"), _as_num(b, f"{where}[{i}]")
        else:
            a, b = _as_str(a, f"{where}[{i}]"), _as_str(b, f"{where}[{i}]")
        _as_num(secs, f"{where}[{i}]")
        out[(a, b)] = secs  # keep int/float as written so round-trips are exact
    return out


def _satellite_to_dict(sat: Satellite) -> dict:
    t = sat.transition_tables
    return {
        "id": sat.id,
        "antenna_diameter_m": sat.antenna_diameter_m,
        "antenna_efficiency": sat.antenna_efficiency,
        "unit_data_rate": sat.unit_data_rate,
        "storage_capacity": sat.storage_capacity,
        "poweron_time_s": sat.poweron_time_s,
        "orbit_count": sat.orbit_count,
        "transition_tables": {
            "polarization": _table_to_list(t.polarization),
            "mode": _table_to_list(t.mode),
            "band": _table_to_list(t.band),
            "frequency": _table_to_list(t.frequency),
        },
    }


def _satellite_from_dict(obj, where: str) -> Satellite:
    obj = _as_dict(obj, where)
    tables = _as_dict(_pop(obj, "transition_tables", where), f"{where}.transition_tables")
    parsed_tables = TransitionTables(
        polarization=_table_from_list(
            _pop(tables, "polarization", where), "str", f"{where}.polarization"),
        mode=_table_from_list(_pop(tables, "mode", where), "str", f"{where}.mode"),
        band=_table_from_list(_pop(tables, "band", where), "num", f"{where}.band"),
        frequency=_table_from_list(
            _pop(tables, "frequency", where), "str", f"{where}.frequency"),
    )
    _done(tables, f"{where}.transition_tables")
    sat = Satellite(
        id=_as_str(_pop(obj, "id", where), where),
        antenna_diameter_m=_as_num(_pop(obj, "antenna_diameter_m", where), where),
        antenna_efficiency=_as_num(_pop(obj, "antenna_efficiency", where), where),
        unit_data_rate=_as_num(_pop(obj, "unit_data_rate", where), where),
        storage_capacity=_as_num(_pop(obj, "storage_capacity", where), where),
        poweron_time_s=_as_int(_pop(obj, "poweron_time_s", where), where),
        orbit_count=_as_int(_pop(obj, "orbit_count", where), where),
        transition_tables=parsed_tables,
    )
    _done(obj, where)
    return sat


def _task_to_dict(task) -> dict:
    if isinstance(task, EdsspTask):
        return {
            "id": task.id,
            "est_s": task.est_s,
            "let_s": task.let_s,
            "duration_s": task.duration_s,
            "max_angle_rad": task.max_angle_rad,
            "degree": task.degree,
            "wavelength_m": task.wavelength_m,
            "frequency": task.frequency,
            "polarization": task.polarization,
            "mode": task.mode,
        }
    return {
        "id": task.id,
        "est_s": task.est_s,
        "let_s": task.let_s,
        "duration_s": task.duration_s,
        "profit": task.profit,
        "separable": task.separable,
    }


def _task_from_dict(obj, kind: ScenarioKind, where: str):
    obj = _as_dict(obj, where)
    common = dict(
        id=_as_str(_pop(obj, "id", where), where),
        est_s=_as_int(_pop(obj, "est_s", where), where),
        let_s=_as_int(_pop(obj, "let_s", where), where),
        duration_s=_as_int(_pop(obj, "duration_s", where), where),
    )
    if kind is ScenarioKind.EDSSP:
        task = EdsspTask(
            **common,
            max_angle_rad=_as_num(_pop(obj, "max_angle_rad", where), where),
            degree=_as_int(_pop(obj, "degree", where), where),
            wavelength_m=_as_num(_pop(obj, "wavelength_m", where), where),
            frequency=_as_str(_pop(obj, "frequency", where), where),
            polarization=_as_str(_pop(obj, "polarization", where), where),
            mode=_as_str(_pop(obj, "mode", where), where),
        )
    else:
        task = ObsTask(
            **common,
            profit=_as_num(_pop(obj, "profit", where), where),
            separable=_as_bool(_pop(obj, "separable", where), where),
        )
    _done(obj, where)
    return task


def _window_to_dict(win: VisibleWindow) -> dict:
    return {
        "satellite_id": win.satellite_id,
        "task_id": win.task_id,
        "orbit_index": win.orbit_index,
        "window_index": win.window_index,
        "evt_s": win.evt_s,
        "lvt_s": win.lvt_s,
        "angle_profile": [[t, a] for t, a in win.angle_profile],
    }


def _window_from_dict(obj, where: str) -> VisibleWindow:
    obj = _as_dict(obj, where)
    profile = []
    for i, pair in enumerate(_as_list(_pop(obj, "angle_profile", where), where)):
        pair = _as_list(pair, f"{where}.angle_profile[{i}]")
        if len(pair) != 2:
            raise FormatError(f"{where}.angle_profile[{i}]: expected [time_s, angle_rad]")
        profile.append((
            _as_int(pair[0], f"{where}.angle_profile[{i}]"),
            _as_num(pair[1], f"{where}.angle_profile[{i}]"),
        ))
    win = VisibleWindow(
        satellite_id=_as_str(_pop(obj, "satellite_id", where), where),
        task_id=_as_str(_pop(obj, "task_id", where), where),
        orbit_index=_as_int(_pop(obj, "orbit_index", where), where),
        window_index=_as_int(_pop(obj, "window_index", where), where),
        evt_s=_as_int(_pop(obj, "evt_s", where), where),
        lvt_s=_as_int(_pop(obj, "lvt_s", where), where),
        angle_profile=tuple(profile),
    )
    _done(obj, where)
    return win


def scenario_to_dict(scenario: Scenario) -> dict:
    out = {
        "version": FORMAT_VERSION,
        "kind": scenario.kind.value,
        "horizon": list(scenario.horizon),
        "satellites": [_satellite_to_dict(s) for s in scenario.satellites],
        "tasks": [_task_to_dict(t) for t in scenario.tasks],
        "windows": [_window_to_dict(w) for w in scenario.windows],
    }
    if scenario.kind is ScenarioKind.EDSSP:
        out["bandwidth_levels"] = list(scenario.bandwidth_levels)
    else:
        out["min_interval_s"] = scenario.min_interval_s
    return out


def scenario_from_dict(obj, where: str = "scenario") -> Scenario:
    obj = _as_dict(obj, where)
    version = _as_int(_pop(obj, "version", where), where)
    if version != FORMAT_VERSION:
        raise FormatError(f"{where}: unsupported version {version}")
    kind_str = _as_str(_pop(obj, "kind", where), where)
    try:
        kind = ScenarioKind(kind_str)
    except ValueError:
        raise FormatError(f"{where}: unknown kind {kind_str!r}") from None
    horizon = _as_list(_pop(obj, "horizon", where), where)
    if len(horizon) != 2:
        raise FormatError(f"{where}: horizon must be [start_s, end_s]")
    horizon = (_as_int(horizon[0], f"{where}.horizon"), _as_int(horizon[1], f"{where}.horizon"))
    satellites = tuple(
        _satellite_from_dict(s, f"{where}.satellites[{i}]")
        for i, s in enumerate(_as_list(_pop(obj, "satellites", where), where))
    )
    tasks = tuple(
        _task_from_dict(t, kind, f"{where}.tasks[{i}]")
        for i, t in enumerate(_as_list(_pop(obj, "tasks", where), where))
    )
    windows = tuple(
        _window_from_dict(w, f"{where}.windows[{i}]")
        for i, w in enumerate(_as_list(_pop(obj, "windows", where), where))
    )
    bandwidth_levels = None
    min_interval = None
    if kind is ScenarioKind.EDSSP:
        levels = _as_list(_pop(obj, "bandwidth_levels", where), where)
        bandwidth_levels = tuple(_as_num(x, f"{where}.bandwidth_levels") for x in levels)
    else:
        min_interval = _as_int(_pop(obj, "min_interval_s", where), where)
    _done(obj, where)
    return Scenario(
        kind=kind,
        satellites=satellites,
        tasks=tasks,
        windows=windows,
        horizon=horizon,
        bandwidth_levels=bandwidth_levels,
        min_interval_s=min_interval,
    )


def scenario_to_json(scenario: Scenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"


def scenario_from_json(text: str) -> Scenario:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return scenario_from_dict(obj)


# ---------------------------------------------------------------------------
# schedules and results


def schedule_objective(scenario: Scenario, schedule) -> float:
    if scenario.kind is ScenarioKind.EDSSP:
        return edssp.objective(scenario, schedule)
    return msjopp.objective_value(scenario, schedule)


def schedule_violations(scenario: Scenario, schedule) -> list:
    if scenario.kind is ScenarioKind.EDSSP:
        return edssp.check_schedule(scenario, schedule)
    return msjopp.check_schedule(scenario, schedule)


def _assignment_to_dict(a, kind: ScenarioKind) -> dict:
    if kind is ScenarioKind.EDSSP:
        return {
            "task_id": a.task_id,
            "satellite_id": a.satellite_id,
            "orbit_index": a.orbit_index,
            "window_index": a.window_index,
            "start_s": a.start_s,
        }
    return {
        "satellite_id": a.satellite_id,
        "task_id": a.task_id,
        "subtask_index": a.subtask_index,
        "window_index": a.window_index,
        "start_s": a.start_s,
        "observed_s": a.observed_s,
    }


def _assignment_from_dict(obj, kind: ScenarioKind, where: str):
    obj = _as_dict(obj, where)
    if kind is ScenarioKind.EDSSP:
        a = edssp.EdsspAssignment(
            task_id=_as_str(_pop(obj, "task_id", where), where),
            satellite_id=_as_str(_pop(obj, "satellite_id", where), where),
            orbit_index=_as_int(_pop(obj, "orbit_index", where), where),
            window_index=_as_int(_pop(obj, "window_index", where), where),
            start_s=_as_int(_pop(obj, "start_s", where), where),
        )
    else:
        sub = _pop(obj, "subtask_index", where)
        a = msjopp.MsjoppAssignment(
            satellite_id=_as_str(_pop(obj, "satellite_id", where), where),
            task_id=_as_str(_pop(obj, "task_id", where), where),
            subtask_index=None if sub is None else _as_int(sub, where),
            window_index=_as_int(_pop(obj, "window_index", where), where),
            start_s=_as_int(_pop(obj, "start_s", where), where),
            observed_s=_as_int(_pop(obj, "observed_s", where), where),
        )
    _done(obj, where)
    return a


def schedule_to_dict(scenario: Scenario, schedule) -> dict:
    out = {
        "assignments": [_assignment_to_dict(a, scenario.kind) for a in schedule.assignments],
    }
    if scenario.kind is ScenarioKind.MSJOPP:
        out["split_plans"] = {
            task_id: list(plan.subtask_durations)
            for task_id, plan in sorted(schedule.split_plans.items())
        }
    return out


def schedule_from_parts(scenario: Scenario, assignments, split_plans, where: str):
    parsed = tuple(
        _assignment_from_dict(a, scenario.kind, f"{where}.assignments[{i}]")
        for i, a in enumerate(_as_list(assignments, where))
    )
    if scenario.kind is ScenarioKind.EDSSP:
        return edssp.EdsspSchedule(parsed)
    plans = {}
    for task_id, chunks in _as_dict(split_plans, f"{where}.split_plans").items():
        chunk_list = _as_list(chunks, f"{where}.split_plans[{task_id}]")
        plans[task_id] = msjopp.SplitPlan(
            task_id,
            tuple(_as_int(c, f"{where}.split_plans[{task_id}]") for c in chunk_list),
        )
    return msjopp.MsjoppSchedule(parsed, plans)


@dataclass(frozen=True)
class ResultFile:
    """A solve outcome bundled with everything needed to re-verify it."""

    scenario: Scenario
    schedule: object
    objective: float
    violations: tuple
    config: dict
    seed: int
    trace_path: object  # str or None


def build_result(scenario: Scenario, schedule, config: RlEaConfig, trace_path=None) -> ResultFile:
    return ResultFile(
        scenario=scenario,
        schedule=schedule,
        objective=schedule_objective(scenario, schedule),
        violations=tuple(schedule_violations(scenario, schedule)),
        config=asdict(config),
        seed=config.seed,
        trace_path=trace_path,
    )


def result_to_dict(result: ResultFile) -> dict:
    out = {
        "version": FORMAT_VERSION,
        "objective": result.objective,
        "seed": result.seed,
        "config": dict(result.config),
        "trace_path": result.trace_path,
    }
    out.update(schedule_to_dict(result.scenario, result.schedule))
    out["violations"] = [
        {"constraint_id": v.constraint_id, "entity": v.entity, "message": v.message}
        for v in result.violations
    ]
    out["scenario"] = scenario_to_dict(result.scenario)
    return out


def result_from_dict(obj, where: str = "result") -> ResultFile:
    obj = _as_dict(obj, where)
    version = _as_int(_pop(obj, "version", where), where)
    if version != FORMAT_VERSION:
        raise FormatError(f"{where}: unsupported version {version}")
    objective = _as_num(_pop(obj, "objective", where), where)
    seed = _as_int(_pop(obj, "seed", where), where)
    config = _as_dict(_pop(obj, "config", where), f"{where}.config")
    known = {f for f in RlEaConfig.__dataclass_fields__}
    unknown = set(config) - known
    if unknown:
        raise FormatError(f"{where}.config: unknown keys {sorted(unknown)}")
    trace_path = _pop(obj, "trace_path", where)
    if trace_path is not None:
        trace_path = _as_str(trace_path, f"{where}.trace_path")
    scenario = scenario_from_dict(_pop(obj, "scenario", where), f"{where}.scenario")
    assignments = _pop(obj, "assignments", where)
    split_plans = _pop(obj, "split_plans", where) if scenario.kind is ScenarioKind.MSJOPP else None
    schedule = schedule_from_parts(scenario, assignments, split_plans, where)
    violations = []
    for i, v in enumerate(_as_list(_pop(obj, "violations", where), where)):
        v = _as_dict(v, f"{where}.violations[{i}]")
        violations.append(Violation(
            constraint_id=_as_str(_pop(v, "constraint_id", where), where),
            entity=_as_str(_pop(v, "entity", where), where),
            message=_as_str(_pop(v, "message", where), where),
        ))
        _done(v, f"{where}.violations[{i}]")
    _done(obj, where)
    return ResultFile(
        scenario=scenario,
        schedule=schedule,
        objective=objective,
        violations=tuple(violations),
        config=config,
        seed=seed,
        trace_path=trace_path,
    )


def result_to_json(result: ResultFile) -> str:
    return json.dumps(result_to_dict(result), indent=2) + "\n"


def result_from_json(text: str) -> ResultFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return result_from_dict(obj)


# ---------------------------------------------------------------------------
# trace


def trace_to_csv(rows) -> str:
    lines = [TRACE_HEADER]
    for r in rows:
        lines.append(
            f"{r.generation},{r.state},{r.action},{r.reward},"
            f"{r.best_fitness},{r.mean_fitness},{r.epsilon}"
        )
    return "\n".join(lines) + "\n"
