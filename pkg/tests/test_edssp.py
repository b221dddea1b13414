"""Detection-model physics, constraint checking, and permutation decoding."""

import math

import pytest

from helpers import (
    LEVELS,
    edssp_scenario,
    flat_window,
    make_edssp_task,
    make_satellite,
    vee_window,
)
from satsched import edssp
from satsched.edssp import (
    EdsspAssignment,
    EdsspPlacer,
    EdsspSchedule,
    bandwidth_for_degree,
    bandwidth_weight,
    bessel_j,
    check_schedule,
    data_volume,
    decode_permutation,
    half_power_beamwidth_rad,
    objective,
    peak_gain,
    signal_gain,
    task_contribution,
    transition_seconds,
)

# Reference values computed with an independent 120-term ascending series in
# exact rational arithmetic (they also match scipy.special.jv to ~1e-13).
BESSEL_CASES = [
    (1, 0.5, 0.2422684576748739),
    (1, 1.8412, 0.5818652242276431),
    (1, 10.0, 0.04347274616886144),
    (3, 10.0, 0.058379379305186815),
    (1, 20.0, 0.06683312417585005),  # exercises the exact-arithmetic path
    (3, 20.0, -0.09890139456044968),
]


class TestBessel:
    @pytest.mark.parametrize("order,u,expected", BESSEL_CASES)
    def test_reference_values(self, order, u, expected):
        assert bessel_j(order, u) == pytest.approx(expected, rel=1e-9)

    def test_zero(self):
        assert bessel_j(1, 0.0) == 0.0
        assert bessel_j(3, 0.0) == 0.0

    def test_odd_symmetry(self):
        for u in (0.5, 3.0, 17.0):
            assert bessel_j(1, -u) == pytest.approx(-bessel_j(1, u), rel=1e-12)
            assert bessel_j(3, -u) == pytest.approx(-bessel_j(3, u), rel=1e-12)

    def test_unsupported_order(self):
        with pytest.raises(ValueError, match="order"):
            bessel_j(2, 1.0)

    def test_float_and_exact_paths_agree_at_crossover(self):
        # 14.0 runs through the float series, 14.1 through exact rationals;
        # both must match the independent reference to the same tolerance.
        assert bessel_j(1, 14.0) == pytest.approx(0.13337515469879324, rel=1e-9)
        assert bessel_j(1, 14.1) == pytest.approx(0.14878435129739387, rel=1e-9)


class TestGainModel:
    def test_beamwidth_formula(self):
        assert half_power_beamwidth_rad(3.0, 0.1) == pytest.approx(math.radians(70.0 * 0.1 / 3.0))

    def test_peak_gain_formula(self):
        assert peak_gain(3.0, 0.1, 0.6) == pytest.approx(0.6 * math.pi**2 * 9.0 / 0.01)

    def test_boresight_gain_equals_peak(self):
        assert signal_gain(3.0, 0.1, 0.6, 0.0) == peak_gain(3.0, 0.1, 0.6)

    def test_half_power_at_beamwidth(self):
        # Off-axis by exactly the half-power beamwidth: the pattern drops to
        # one half (the model places the -3 dB point at u = 2.07123).
        theta = half_power_beamwidth_rad(3.0, 0.1)
        ratio = signal_gain(3.0, 0.1, 0.6, theta) / peak_gain(3.0, 0.1, 0.6)
        assert ratio == pytest.approx(0.5000004083327869, rel=1e-9)

    def test_gain_declines_off_axis(self):
        theta = half_power_beamwidth_rad(3.0, 0.1)
        angles = [k * theta / 4 for k in range(5)]
        gains = [signal_gain(3.0, 0.1, 0.6, a) for a in angles]
        assert all(a > b for a, b in zip(gains, gains[1:]))

    def test_gain_never_negative(self):
        for k in range(1, 30):
            assert signal_gain(3.0, 0.1, 0.6, k * 0.005) >= 0.0


class TestBandwidth:
    @pytest.mark.parametrize("degree,level", [
        (100, 32.0), (76, 32.0),
        (75, 16.0), (51, 16.0),
        (50, 8.0), (26, 8.0),
        (25, 4.0), (1, 4.0),
    ])
    def test_degree_brackets(self, degree, level):
        assert bandwidth_for_degree(LEVELS, degree) == level

    @pytest.mark.parametrize("degree", [0, 101, -5, 3.5, True])
    def test_degree_out_of_range(self, degree):
        with pytest.raises(ValueError):
            bandwidth_for_degree(LEVELS, degree)

    def test_weight_normalized_to_widest(self):
        assert bandwidth_weight(LEVELS, 100) == 1.0
        assert bandwidth_weight(LEVELS, 60) == 0.5
        assert bandwidth_weight(LEVELS, 30) == 0.25
        assert bandwidth_weight(LEVELS, 10) == 0.125

    def test_data_volume(self):
        sat = make_satellite(rate=2.0)
        task = make_edssp_task(duration=50, degree=80)
        assert data_volume(sat, task, LEVELS) == 2.0 * 32.0 * 50


class TestTransition:
    def test_max_of_switches_and_poweron(self):
        sat = make_satellite(poweron=5)
        a = make_edssp_task("a", degree=80, frequency="f1", polarization="H", mode="search")
        b = make_edssp_task("b", degree=60, frequency="f2", polarization="V", mode="track")
        # frequency 6 dominates polarization 4, mode 3, band 2, power-on 5.
        assert transition_seconds(sat, a, b, LEVELS) == 6

    def test_identical_tasks_cost_only_poweron(self):
        sat = make_satellite(poweron=5)
        a = make_edssp_task("a")
        assert transition_seconds(sat, a, a, LEVELS) == 5

    def test_same_band_despite_different_degree(self):
        sat = make_satellite(poweron=0)
        a = make_edssp_task("a", degree=80, frequency="f1", polarization="H", mode="search")
        b = make_edssp_task("b", degree=90, frequency="f1", polarization="H", mode="search")
        assert transition_seconds(sat, a, b, LEVELS) == 0


def two_task_scenario(storage=1e9):
    t0 = make_edssp_task("t0", est=0, let=300, duration=50, degree=80,
                         frequency="f1", polarization="H", mode="search")
    t1 = make_edssp_task("t1", est=0, let=300, duration=40, degree=60,
                         frequency="f2", polarization="V", mode="track")
    sat = make_satellite(storage=storage)
    windows = [
        flat_window("t0", evt=0, lvt=300, angle=0.01),
        flat_window("t1", evt=0, lvt=300, angle=0.01),
    ]
    return edssp_scenario([t0, t1], windows, satellites=[sat])


def _ids(violations):
    return sorted(v.constraint_id for v in violations)


class TestCheckSchedule:
    def test_valid_schedule_is_clean(self):
        sc = two_task_scenario()
        sched = EdsspSchedule((
            EdsspAssignment("t0", "s0", 0, 0, 0),
            EdsspAssignment("t1", "s0", 0, 0, 56),  # 6s frequency switch
        ))
        assert check_schedule(sc, sched) == []

    def test_start_before_earliest(self):
        task = make_edssp_task("t0", est=10, let=300, duration=50)
        sc = edssp_scenario([task], [flat_window("t0", evt=0, lvt=300, angle=0.01)])
        out = check_schedule(sc, EdsspSchedule((EdsspAssignment("t0", "s0", 0, 0, 5),)))
        assert _ids(out) == ["C1_EST"]

    def test_end_after_latest(self):
        task = make_edssp_task("t0", est=0, let=60, duration=50)
        sc = edssp_scenario([task], [flat_window("t0", evt=0, lvt=300, angle=0.01)])
        out = check_schedule(sc, EdsspSchedule((EdsspAssignment("t0", "s0", 0, 0, 20),)))
        assert _ids(out) == ["C2_LET"]

    def test_angle_exceeded_inside_run(self):
        task = make_edssp_task("t0", est=0, let=300, duration=50, max_angle=0.02)
        win = vee_window("t0", evt=0, lvt=200, edge=0.05, vertex=0.0)
        sc = edssp_scenario([task], [win])
        out = check_schedule(sc, EdsspSchedule((EdsspAssignment("t0", "s0", 0, 0, 0),)))
        assert _ids(out) == ["C3_ANGLE"]

    def test_start_before_window_entry(self):
        task = make_edssp_task("t0", est=0, let=300, duration=50)
        sc = edssp_scenario([task], [flat_window("t0", evt=50, lvt=300, angle=0.01)])
        out = check_schedule(sc, EdsspSchedule((EdsspAssignment("t0", "s0", 0, 0, 30),)))
        assert _ids(out) == ["C4_EVT"]

    def test_end_after_window_exit(self):
        task = make_edssp_task("t0", est=0, let=300, duration=50)
        sc = edssp_scenario([task], [flat_window("t0", evt=0, lvt=70, angle=0.01)])
        out = check_schedule(sc, EdsspSchedule((EdsspAssignment("t0", "s0", 0, 0, 30),)))
        assert _ids(out) == ["C5_LVT"]

    def test_storage_overflow_per_orbit(self):
        # Volumes: t0 = 2*32*50 = 3200, t1 = 2*16*40 = 1280; cap below the sum.
        sc = two_task_scenario(storage=4000.0)
        sched = EdsspSchedule((
            EdsspAssignment("t0", "s0", 0, 0, 0),
            EdsspAssignment("t1", "s0", 0, 0, 56),
        ))
        out = check_schedule(sc, sched)
        assert _ids(out) == ["C6_STORAGE"]
        assert "orbit 0" in out[0].entity

    def test_storage_is_per_orbit_not_global(self):
        sc = two_task_scenario(storage=4000.0)
        windows = list(sc.windows) + [flat_window("t1", orbit=1, index=1, evt=0, lvt=300, angle=0.01)]
        sc = edssp_scenario(sc.tasks, windows, satellites=sc.satellites)
        sched = EdsspSchedule((
            EdsspAssignment("t0", "s0", 0, 0, 0),
            EdsspAssignment("t1", "s0", 1, 1, 0),
        ))
        assert check_schedule(sc, sched) == []

    def test_transition_too_tight(self):
        sc = two_task_scenario()
        sched = EdsspSchedule((
            EdsspAssignment("t0", "s0", 0, 0, 0),
            EdsspAssignment("t1", "s0", 0, 0, 55),  # needs 50 + 6
        ))
        out = check_schedule(sc, sched)
        assert _ids(out) == ["C7_TRANSITION"]

    def test_task_scheduled_twice(self):
        task = make_edssp_task("t0", est=0, let=300, duration=50)
        windows = [
            flat_window("t0", index=0, evt=0, lvt=300, angle=0.01),
            flat_window("t0", index=1, evt=0, lvt=300, angle=0.01),
        ]
        sc = edssp_scenario([task], windows)
        sched = EdsspSchedule((
            EdsspAssignment("t0", "s0", 0, 0, 0),
            EdsspAssignment("t0", "s0", 0, 1, 60),
        ))
        out = check_schedule(sc, sched)
        assert _ids(out) == ["C8_ONCE"]

    def test_unknown_reference_suppresses_other_checks(self):
        sc = two_task_scenario()
        sched = EdsspSchedule((
            EdsspAssignment("ghost", "s0", 0, 0, -999),
            EdsspAssignment("t0", "s0", 0, 9, -999),  # no such window index
        ))
        out = check_schedule(sc, sched)
        assert _ids(out) == ["C9_DOMAIN", "C9_DOMAIN"]

    def test_empty_schedule_is_clean(self):
        assert check_schedule(two_task_scenario(), EdsspSchedule(())) == []


class TestObjective:
    def test_contribution_is_gain_times_weight(self):
        sc = two_task_scenario()
        a = EdsspAssignment("t1", "s0", 0, 0, 100)
        # Flat profile: the best angle over any run is the constant 0.01.
        expected = signal_gain(3.0, 0.1, 0.6, 0.01) * 0.5
        assert task_contribution(sc, a) == pytest.approx(expected, rel=1e-12)

    def test_objective_sums_contributions(self):
        sc = two_task_scenario()
        a0 = EdsspAssignment("t0", "s0", 0, 0, 0)
        a1 = EdsspAssignment("t1", "s0", 0, 0, 56)
        total = objective(sc, EdsspSchedule((a0, a1)))
        parts = task_contribution(sc, a0) + task_contribution(sc, a1)
        assert total == pytest.approx(parts, rel=1e-12)

    def test_objective_independent_of_assignment_order(self):
        sc = two_task_scenario()
        a0 = EdsspAssignment("t0", "s0", 0, 0, 0)
        a1 = EdsspAssignment("t1", "s0", 0, 0, 56)
        assert objective(sc, EdsspSchedule((a0, a1))) == objective(sc, EdsspSchedule((a1, a0)))

    def test_deeper_run_scores_better(self):
        # Running over the vee's vertex reaches a smaller angle, more gain.
        task = make_edssp_task("t0", est=0, let=300, duration=40, max_angle=0.05)
        win = vee_window("t0", evt=0, lvt=200, edge=0.04, vertex=0.0)
        sc = edssp_scenario([task], [win])
        shallow = task_contribution(sc, EdsspAssignment("t0", "s0", 0, 0, 0))
        deep = task_contribution(sc, EdsspAssignment("t0", "s0", 0, 0, 80))
        assert deep > shallow

    def test_empty_schedule_scores_zero(self):
        assert objective(two_task_scenario(), EdsspSchedule(())) == 0.0


class TestDecoding:
    def test_single_task_starts_at_earliest_feasible(self):
        task = make_edssp_task("t0", est=25, let=300, duration=50)
        sc = edssp_scenario([task], [flat_window("t0", evt=10, lvt=300, angle=0.01)])
        sched = decode_permutation(sc, ["t0"])
        assert sched.assignments == (EdsspAssignment("t0", "s0", 0, 0, 25),)

    def test_second_task_waits_for_transition(self):
        sc = two_task_scenario()
        sched = decode_permutation(sc, ["t0", "t1"])
        starts = {a.task_id: a.start_s for a in sched.assignments}
        assert starts == {"t0": 0, "t1": 56}
        assert check_schedule(sc, sched) == []

    def test_decode_order_changes_placement(self):
        sc = two_task_scenario()
        sched = decode_permutation(sc, ["t1", "t0"])
        starts = {a.task_id: a.start_s for a in sched.assignments}
        # t1 first (40s), then the 6s frequency switch back before t0.
        assert starts == {"t1": 0, "t0": 46}

    def test_angle_mask_delays_start(self):
        task = make_edssp_task("t0", est=0, let=300, duration=50, max_angle=0.0207)
        win = vee_window("t0", evt=0, lvt=200, edge=0.05, vertex=0.0)
        sc = edssp_scenario([task], [win])
        sched = decode_permutation(sc, ["t0"])
        assert sched.assignments[0].start_s == 59
        assert check_schedule(sc, sched) == []

    def test_full_storage_skips_task(self):
        sc = two_task_scenario(storage=3200.0)  # exactly one t0-sized slot
        sched = decode_permutation(sc, ["t0", "t1"])
        assert [a.task_id for a in sched.assignments] == ["t0"]

    def test_infeasible_task_is_skipped_not_fatal(self):
        t0 = make_edssp_task("t0", est=0, let=300, duration=50)
        t1 = make_edssp_task("t1", est=0, let=300, duration=50, max_angle=0.001)
        windows = [
            flat_window("t0", evt=0, lvt=300, angle=0.01),
            flat_window("t1", evt=0, lvt=300, angle=0.01),  # always over the limit
        ]
        sc = edssp_scenario([t0, t1], windows)
        sched = decode_permutation(sc, ["t1", "t0"])
        assert [a.task_id for a in sched.assignments] == ["t0"]

    def test_satellite_tie_breaks_alphabetically(self):
        task = make_edssp_task("t0", est=0, let=300, duration=50)
        sats = [make_satellite("s0"), make_satellite("s1")]
        windows = [
            flat_window("t0", sat_id="s1", index=0, evt=0, lvt=300, angle=0.01),
            flat_window("t0", sat_id="s0", index=1, evt=0, lvt=300, angle=0.01),
        ]
        sc = edssp_scenario([task], windows, satellites=sats)
        sched = decode_permutation(sc, ["t0"])
        assert sched.assignments[0].satellite_id == "s0"

    def test_decode_accepts_integer_indexes(self):
        sc = two_task_scenario()
        by_id = decode_permutation(sc, ["t0", "t1"])
        by_idx = decode_permutation(sc, [0, 1])
        assert by_id == by_idx

    def test_placer_undo_restores_state(self):
        sc = two_task_scenario()
        placer = EdsspPlacer(sc)
        a0 = placer.place_earliest("t0")
        placer.commit(a0)
        a1 = placer.place_earliest("t1")
        placer.commit(a1)
        placer.undo(a1)
        placer.undo(a0)
        assert placer.placed == []
        # After a full undo, placement decisions repeat exactly.
        assert placer.place_earliest("t0") == a0

    def test_committed_prefix_always_feasible(self):
        sc = two_task_scenario()
        placer = EdsspPlacer(sc)
        for tid in ("t1", "t0"):
            a = placer.place_earliest(tid)
            placer.commit(a)
            assert check_schedule(sc, placer.to_schedule()) == []
