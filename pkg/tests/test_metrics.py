"""Covered area, pressure, heatmaps, regions, formation lines, player stats."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from passflow.matchdata import (
    FrameSnapshot,
    Pass,
    Phase,
    EventKind,
    PlayerId,
    Position,
    RegionId,
)
from passflow.metrics import (
    ATTACK_RIGHT,
    MetricsError,
    PressureParams,
    REGION_GLYPHS,
    covered_area,
    defense_context,
    dribble_segments,
    formation_lines,
    pattern_heatmap,
    phase_metrics,
    phase_summary,
    player_stats,
    pressure,
    spatial_region,
)

from helpers import frame, load, make_doc, pass_event, tag_event


def _phase(passes, team="home", end_tag="shot", pid=0):
    return Phase(
        id=pid,
        team=team,
        passes=tuple(passes),
        style="unlabeled",
        end_event=EventKind(tag=end_tag, t=passes[-1].t_receive + 1.0, half=passes[0].half),
        half=passes[0].half,
    )


def _pass(passer, receiver, t, origin, target, team="home", half=1, t_receive=None):
    return Pass(
        passer=PlayerId(team, passer),
        receiver=PlayerId(team, receiver),
        t_pass=t,
        t_receive=t + 1.0 if t_receive is None else t_receive,
        origin=Position(*origin),
        target=Position(*target),
        completed=True,
        half=half,
    )


# ---------------------------------------------------------------------------
# Covered area


class TestCoveredArea:
    def test_right_triangle(self):
        pts = [Position(0, 0), Position(1, 0), Position(0, 1)]
        assert covered_area(pts) == pytest.approx(0.5, abs=1e-12)

    def test_pitch_rectangle_exact(self):
        pts = [Position(0, 0), Position(105, 0), Position(105, 68), Position(0, 68)]
        assert covered_area(pts) == 7140.0

    def test_collinear_and_small_sets_are_zero(self):
        assert covered_area([]) == 0.0
        assert covered_area([Position(3, 4)]) == 0.0
        assert covered_area([Position(0, 0), Position(5, 5)]) == 0.0
        assert covered_area([Position(0, 0), Position(5, 5), Position(10, 10)]) == 0.0

    def test_duplicates_do_not_add_area(self):
        pts = [Position(0, 0), Position(1, 0), Position(0, 1), Position(0, 0)]
        assert covered_area(pts) == pytest.approx(0.5, abs=1e-12)

    def test_interior_points_are_ignored(self):
        square = [Position(0, 0), Position(10, 0), Position(10, 10), Position(0, 10)]
        with_interior = square + [Position(5, 5), Position(2, 7)]
        assert covered_area(with_interior) == pytest.approx(100.0, abs=1e-9)

    def test_accepts_ndarray_input(self):
        pts = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]])
        assert covered_area(pts) == pytest.approx(6.0, abs=1e-12)

    def test_non_finite_rejected(self):
        with pytest.raises(MetricsError, match="non-finite"):
            covered_area(np.array([[0.0, 0.0], [np.nan, 1.0], [1.0, 1.0]]))

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_reference_hull(self, seed):
        from scipy.spatial import ConvexHull

        rng = np.random.default_rng(seed)
        pts = rng.uniform([0, 0], [105, 68], size=(11, 2))
        # scipy's 2-D "volume" is the polygon area.
        assert covered_area(pts) == pytest.approx(ConvexHull(pts).volume, abs=1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_subset_never_exceeds_full_set(self, seed):
        rng = np.random.default_rng(seed)
        pts = rng.uniform([0, 0], [105, 68], size=(11, 2))
        full = covered_area(pts)
        subset = covered_area(pts[rng.choice(11, size=7, replace=False)])
        assert subset <= full + 1e-9

    def test_rigid_motion_invariance_and_scaling(self):
        rng = np.random.default_rng(42)
        pts = rng.uniform(0, 50, size=(11, 2))
        base = covered_area(pts)
        theta = 0.83
        rot = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
        )
        moved = pts @ rot.T + np.array([7.5, -3.25])
        assert covered_area(moved) == pytest.approx(base, rel=1e-6)
        assert covered_area(pts * 3.0) == pytest.approx(9.0 * base, rel=1e-9)


# ---------------------------------------------------------------------------
# Pressure


class TestPressure:
    def test_empty_defender_set(self):
        assert pressure(Position(50, 34), ATTACK_RIGHT, []) == 0.0

    def test_beyond_front_reach_vanishes(self):
        params = PressureParams()
        ahead = Position(50 + params.d_front + 0.01, 34)
        assert pressure(Position(50, 34), ATTACK_RIGHT, [ahead], params) == 0.0

    def test_halfway_straight_ahead_is_half(self):
        params = PressureParams(d_front=9.0, d_back=3.0, q=1.0)
        defender = Position(50 + params.d_front / 2, 34)
        value = pressure(Position(50, 34), ATTACK_RIGHT, [defender], params)
        assert value == pytest.approx(0.5, abs=1e-12)

    def test_behind_reaches_zero_at_back_distance(self):
        params = PressureParams(d_front=9.0, d_back=3.0, q=1.0)
        at_back = Position(50 - params.d_back, 34)
        assert pressure(Position(50, 34), ATTACK_RIGHT, [at_back], params) == pytest.approx(
            0.0, abs=1e-12
        )
        inside = Position(50 - params.d_back / 2, 34)
        assert pressure(Position(50, 34), ATTACK_RIGHT, [inside], params) == pytest.approx(
            0.5, abs=1e-12
        )

    def test_coincident_defender_counts_fully(self):
        assert pressure(Position(50, 34), ATTACK_RIGHT, [Position(50, 34)]) == 1.0

    def test_sum_over_defenders(self):
        params = PressureParams(d_front=9.0, d_back=3.0, q=1.0)
        defenders = [Position(54.5, 34), Position(48.5, 34)]
        expected = 0.5 + 0.5
        assert pressure(Position(50, 34), ATTACK_RIGHT, defenders, params) == pytest.approx(
            expected, abs=1e-12
        )

    @given(
        angle=st.floats(0.0, 2 * math.pi),
        d1=st.floats(0.1, 8.9),
        shrink=st.floats(0.05, 0.95),
    )
    @settings(max_examples=80, deadline=None)
    def test_strictly_decreasing_radially_inside_reach(self, angle, d1, shrink):
        params = PressureParams(d_front=9.0, d_back=3.0, q=1.0)
        carrier = Position(50.0, 34.0)
        far = Position(carrier.x + d1 * math.cos(angle), carrier.y + d1 * math.sin(angle))
        d0 = d1 * shrink
        near = Position(carrier.x + d0 * math.cos(angle), carrier.y + d0 * math.sin(angle))
        p_far = pressure(carrier, ATTACK_RIGHT, [far], params)
        p_near = pressure(carrier, ATTACK_RIGHT, [near], params)
        if p_far > 0.0:
            assert p_near > p_far
        else:
            assert p_near >= p_far

    def test_exponent_shapes_falloff(self):
        params_sq = PressureParams(d_front=9.0, d_back=3.0, q=2.0)
        defender = Position(54.5, 34.0)
        value = pressure(Position(50, 34), ATTACK_RIGHT, [defender], params_sq)
        assert value == pytest.approx(0.25, abs=1e-12)

    def test_invalid_params_rejected(self):
        with pytest.raises(MetricsError):
            pressure(Position(0, 0), ATTACK_RIGHT, [], PressureParams(d_front=2.0, d_back=3.0))
        with pytest.raises(MetricsError):
            pressure(Position(0, 0), ATTACK_RIGHT, [], PressureParams(q=0.0))
        with pytest.raises(MetricsError, match="nonzero"):
            pressure(Position(0, 0), (0.0, 0.0), [])

    def test_attack_dir_is_normalized_internally(self):
        params = PressureParams()
        defender = Position(54.5, 34.0)
        a = pressure(Position(50, 34), (1.0, 0.0), [defender], params)
        b = pressure(Position(50, 34), (25.0, 0.0), [defender], params)
        assert a == pytest.approx(b, abs=1e-12)


# ---------------------------------------------------------------------------
# Heatmaps


class TestHeatmap:
    def test_corner_binning_3x3(self):
        phase = _phase([_pass(2, 3, 10.0, (0.0, 0.0), (105.0, 68.0))])
        grid = pattern_heatmap([phase], rows=3, cols=3)
        assert grid.bins[0, 0] == 1
        assert grid.bins[2, 2] == 1
        assert grid.total() == 2

    def test_sum_is_twice_pass_count(self):
        phases = []
        rng = np.random.default_rng(0)
        total_passes = 0
        for pid in range(5):
            passes = []
            t = 10.0 * pid + 10.0
            for i in range(int(rng.integers(1, 7))):
                passes.append(
                    _pass(
                        2, 3, t + i,
                        tuple(rng.uniform([0, 0], [105, 68])),
                        tuple(rng.uniform([0, 0], [105, 68])),
                    )
                )
            total_passes += len(passes)
            phases.append(_phase(passes, pid=pid))
        grid = pattern_heatmap(phases)
        assert grid.total() == 2 * total_passes
        assert grid.rows == 21 and grid.cols == 14

    def test_empty_phase_set(self):
        grid = pattern_heatmap([])
        assert grid.total() == 0
        assert not grid.bins.any()


# ---------------------------------------------------------------------------
# Regions


class TestRegions:
    def test_examples(self):
        assert spatial_region(Position(52.5, 34.0)) == RegionId(1, 1)
        assert spatial_region(Position(1.0, 1.0)) == RegionId(0, 0)
        assert spatial_region(Position(105.0, 68.0)) == RegionId(2, 2)

    def test_out_of_bounds_rejected(self):
        with pytest.raises(MetricsError, match="outside pitch"):
            spatial_region(Position(-0.1, 10.0))
        with pytest.raises(MetricsError):
            spatial_region(Position(10.0, 68.1))

    @given(x=st.floats(0.0, 105.0), y=st.floats(0.0, 68.0))
    @settings(max_examples=120, deadline=None)
    def test_partition_matches_floor_rule(self, x, y):
        region = spatial_region(Position(x, y))
        assert region.col == min(2, int(3.0 * x / 105.0))
        assert region.row == min(2, int(3.0 * y / 68.0))

    def test_all_nine_regions_reachable(self):
        seen = {
            spatial_region(Position(x, y))
            for x in (10.0, 52.5, 95.0)
            for y in (5.0, 34.0, 63.0)
        }
        assert len(seen) == 9

    def test_glyph_table_is_a_bijection(self):
        assert set(REGION_GLYPHS) == {RegionId(r, c) for r in range(3) for c in range(3)}
        assert len(set(REGION_GLYPHS.values())) == 9


# ---------------------------------------------------------------------------
# Formation lines


class TestFormationLines:
    def test_line_counts(self):
        assert formation_lines("4-4-2").line_count == 3
        assert formation_lines("4-2-3-1").line_count == 4

    def test_goalkeeper_and_out_of_range_never_highlighted(self):
        lines = formation_lines("4-4-2")
        assert lines.line_for(-1) is None
        assert lines.line_for(None) is None
        assert lines.line_for(3) is None
        assert lines.line_for(0) == 0
        assert lines.line_for(2) == 2

    def test_wrong_sum_rejected(self):
        with pytest.raises(Exception):
            formation_lines("4-4-3")


# ---------------------------------------------------------------------------
# Phase summaries


class TestPhaseSummary:
    def test_single_pass(self):
        record = load(make_doc([pass_event("home", 2, 3, 10.0)]))
        summary = phase_summary(record.phases[0], record)
        assert summary.first_passer == PlayerId("home", 2)
        assert summary.last_receiver == PlayerId("home", 3)
        assert summary.pass_count == 1

    def test_three_pass_hand_trace(self):
        record = load(
            make_doc(
                [
                    pass_event("home", 1, 3, 10.0, origin=(5.0, 34.0), target=(30.0, 20.0)),
                    pass_event("home", 3, 7, 12.0, origin=(31.0, 21.0), target=(60.0, 40.0)),
                    pass_event("home", 7, 10, 14.0, origin=(61.0, 41.0), target=(90.0, 60.0)),
                    tag_event("shot", 16.0),
                ]
            )
        )
        summary = phase_summary(record.phases[0], record)
        assert summary.first_passer == PlayerId("home", 1)
        assert summary.last_receiver == PlayerId("home", 10)
        assert summary.pass_count == 3
        assert summary.end_event.tag == "shot"
        assert summary.first_region == RegionId(1, 0)  # y=34 is the middle band
        assert summary.last_region == RegionId(2, 2)
        assert summary.line_count == 3
        assert summary.first_formation_line is None  # goalkeeper
        assert summary.last_formation_line == 2

    def test_counter_attack_end_event_copied(self):
        record = load(
            make_doc(
                [pass_event("home", 2, 3, 10.0), tag_event("shot", 12.0)],
                styles=[{"phase_index": 0, "style": "counter-attack"}],
            )
        )
        summary = phase_summary(record.phases[0], record)
        assert summary.end_event.tag == "shot"
        assert record.phases[0].style == "counter-attack"


# ---------------------------------------------------------------------------
# Player statistics


def _frames_for_track(track, player=("home", 2), half=1):
    out = []
    for t, (x, y) in track:
        out.append(
            FrameSnapshot(
                t=t, half=half, positions={PlayerId(*player): Position(x, y)}
            )
        )
    return out


class TestPlayerStats:
    def test_finite_difference_speed(self):
        frames = _frames_for_track([(0.0, (0.0, 0.0)), (1.0, (5.0, 0.0))])
        stats = player_stats(PlayerId("home", 2), frames, [])
        assert stats.max_speed == pytest.approx(5.0)
        assert stats.total_distance == pytest.approx(5.0)
        assert stats.dash_distance == 0.0

    def test_stationary_player(self):
        frames = _frames_for_track([(0.0, (3.0, 3.0)), (1.0, (3.0, 3.0)), (2.0, (3.0, 3.0))])
        stats = player_stats(PlayerId("home", 2), frames, [])
        assert stats.max_speed == 0.0
        assert stats.dash_distance == 0.0

    def test_dash_accumulates_above_threshold(self):
        # 0-2 s at 4 m/s (below), 2-6 s at 6 m/s (above): dash = 24 m.
        track = [(0.0, (0.0, 0.0)), (1.0, (4.0, 0.0)), (2.0, (8.0, 0.0))]
        x = 8.0
        for i in range(4):
            x += 6.0
            track.append((3.0 + i, (x, 0.0)))
        frames = _frames_for_track(track)
        stats = player_stats(PlayerId("home", 2), frames, [])
        assert stats.dash_distance == pytest.approx(24.0)
        assert stats.max_speed == pytest.approx(6.0)
        assert stats.total_distance == pytest.approx(32.0)
        assert stats.dash_distance <= stats.total_distance

    def test_tracking_noise_discarded(self):
        frames = _frames_for_track(
            [(0.0, (0.0, 0.0)), (1.0, (5.0, 0.0)), (2.0, (25.0, 0.0)), (3.0, (30.0, 0.0))]
        )
        stats = player_stats(PlayerId("home", 2), frames, [])
        # The 20 m/s jump is noise: excluded from everything.
        assert stats.max_speed == pytest.approx(5.0)
        assert stats.total_distance == pytest.approx(10.0)

    def test_half_boundary_not_differenced(self):
        frames = _frames_for_track([(100.0, (0.0, 0.0))]) + _frames_for_track(
            [(0.5, (50.0, 0.0))], half=2
        )
        stats = player_stats(PlayerId("home", 2), frames, [])
        assert stats.max_speed == 0.0
        assert stats.total_distance == 0.0

    def test_pass_count_counts_passer_only(self):
        frames = _frames_for_track([(0.0, (0.0, 0.0)), (1.0, (1.0, 0.0))])
        passes = [
            _pass(2, 3, 0.0, (0, 0), (5, 5)),
            _pass(3, 2, 2.0, (5, 5), (0, 0)),
            _pass(2, 4, 4.0, (0, 0), (9, 9)),
        ]
        stats = player_stats(PlayerId("home", 2), frames, passes)
        assert stats.pass_count == 2

    def test_fewer_than_two_frames_rejected(self):
        frames = _frames_for_track([(0.0, (0.0, 0.0))])
        with pytest.raises(MetricsError, match="fewer than 2"):
            player_stats(PlayerId("home", 2), frames, [])


# ---------------------------------------------------------------------------
# Defense context and per-phase series


def _context_fixture():
    events = [
        pass_event("home", 2, 3, 10.0, origin=(30.0, 30.0), target=(50.0, 40.0)),
        tag_event("shot", 12.5),
    ]
    away = {("away", s): (60.0 + s, 30.0 + s) for s in range(1, 12)}
    frames = [
        frame(9.8, {("home", 2): (30.0, 30.0), **away}),
        frame(10.3, {("home", 2): (30.5, 30.0), **{k: (x + 1, y) for k, (x, y) in away.items()}}),
    ]
    return load(make_doc(events, frames=frames))


class TestDefenseContext:
    def test_nearest_frame_selected_with_tie_to_earlier(self):
        record = _context_fixture()
        ctx = defense_context(record.passes()[0], record.frames)
        # 9.8 is 0.2 away, 10.3 is 0.3 away: the earlier frame wins.
        assert ctx.frame_t == 9.8
        assert len(ctx.opponents) == 11
        assert ctx.approximate is True

    def test_exact_tie_prefers_earlier(self):
        record = load(
            make_doc(
                [pass_event("home", 2, 3, 10.0)],
                frames=[
                    frame(9.75, {("away", 5): (50.0, 40.0)}),
                    frame(10.25, {("away", 5): (55.0, 40.0)}),
                ],
            )
        )
        ctx = defense_context(record.passes()[0], record.frames)
        assert ctx.frame_t == 9.75

    def test_values_match_direct_computation(self):
        record = _context_fixture()
        p = record.passes()[0]
        ctx = defense_context(p, record.frames)
        opponents = [
            pos for pid, pos in record.frames[0].positions.items() if pid.team == "away"
        ]
        assert ctx.covered_area == pytest.approx(covered_area(opponents), abs=1e-12)
        assert ctx.pressure == pytest.approx(
            pressure(p.origin, ATTACK_RIGHT, opponents), abs=1e-12
        )

    def test_no_frame_within_tolerance(self):
        record = load(
            make_doc(
                [pass_event("home", 2, 3, 10.0)],
                frames=[frame(8.0, {("away", 5): (50.0, 40.0)})],
            )
        )
        with pytest.raises(MetricsError, match="no frame within"):
            defense_context(record.passes()[0], record.frames)

    def test_half_mismatch_excluded(self):
        record = load(
            make_doc(
                [pass_event("home", 2, 3, 10.0, half=2)],
                frames=[frame(10.0, {("away", 5): (50.0, 40.0)}, half=1)],
            )
        )
        with pytest.raises(MetricsError):
            defense_context(record.passes()[0], record.frames)


class TestPhaseMetrics:
    def test_series_cover_phase_span(self):
        away = {("away", s): (60.0 + s, 25.0 + (s * 7) % 13) for s in range(1, 12)}
        events = [
            pass_event("home", 2, 3, 10.0, t_receive=11.0, target=(40.0, 35.0)),
            pass_event("home", 3, 4, 12.0, origin=(40.0, 35.0)),
            tag_event("foul", 14.0),
        ]
        frames = [
            frame(9.0, away),  # before the phase: excluded
            frame(10.0, {("home", 2): (20.0, 30.0), **away}),
            frame(11.5, {("home", 3): (40.0, 35.0), **away}),
            frame(13.0, {("home", 4): (60.0, 40.0), **away}),
            frame(20.0, away),  # after: excluded
        ]
        record = load(make_doc(events, frames=frames))
        metrics = phase_metrics(record.phases[0], record)
        assert [t for t, _ in metrics.covered_area_series] == [10.0, 11.5, 13.0]
        assert metrics.defense_bar == pytest.approx(
            np.mean([a for _, a in metrics.covered_area_series])
        )
        assert metrics.available
        assert metrics.defense_bar > 0.0
        # The carrier (passer until reception, receiver after) is present
        # in each of the three in-span frames.
        assert len(metrics.pressure_series) == 3

    def test_frameless_phase_unavailable(self):
        record = load(make_doc([pass_event("home", 2, 3, 10.0), tag_event("shot", 12.0)]))
        metrics = phase_metrics(record.phases[0], record)
        assert metrics.defense_bar is None
        assert not metrics.available
        assert metrics.mean_pressure() is None


class TestDribbles:
    def test_receiver_carries_to_next_release(self):
        phase = _phase(
            [
                _pass(2, 3, 10.0, (20, 30), (40, 35)),
                _pass(3, 4, 13.0, (45, 38), (60, 40)),  # 3 dribbled ~5.8 m
                _pass(4, 5, 15.0, (60.5, 40.0), (80, 50)),  # 4 moved ~0.5 m: dropped
            ]
        )
        segs = dribble_segments(phase)
        assert len(segs) == 1
        assert segs[0].player == PlayerId("home", 3)
        assert segs[0].displacement == pytest.approx(math.hypot(5.0, 3.0))

    def test_no_dribble_when_different_player(self):
        phase = _phase(
            [
                _pass(2, 3, 10.0, (20, 30), (40, 35)),
                _pass(7, 8, 13.0, (45, 38), (60, 40)),
            ]
        )
        assert dribble_segments(phase) == ()
