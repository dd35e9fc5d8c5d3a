"""Tactical context metrics computed from positions and phases.

Covered area measures how much ground the defending side spans (convex hull
of all eleven opposing players, goalkeeper included); smaller means a more
compact defense.  Pressure sums direction-weighted defender proximity terms
around the ball carrier.  The rest of the module derives the per-phase
summaries that drive ranking and glyph displays: pass-position heatmaps, the
3 x 3 spatial regions, formation lines, and per-player movement statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .matchdata import (
    EventKind,
    FrameSnapshot,
    MatchRecord,
    Pass,
    Phase,
    PITCH_LENGTH,
    PITCH_WIDTH,
    PlayerId,
    Position,
    RegionId,
    parse_formation,
)


class MetricsError(ValueError):
    """Raised for invalid metric inputs (bad params, out-of-bounds points)."""


# Movement thresholds; overridable per call.  Speeds above SPEED_CLAMP are
# treated as tracking noise and the segment is discarded.
DASH_THRESHOLD = 5.5
SPEED_CLAMP = 12.0
DRIBBLE_DISPLACEMENT_FLOOR = 2.0

# Defender-within-0.5 s rule for snapshot lookups around a pass.
FRAME_TOLERANCE = 0.5


# ---------------------------------------------------------------------------
# Covered area


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain convex hull, counterclockwise, collinear points dropped."""
    pts = np.unique(points, axis=0)
    if len(pts) < 3:
        return pts
    # np.unique sorts lexicographically by (x, y) already.
    def half_hull(candidates):
        hull: list[np.ndarray] = []
        for p in candidates:
            while len(hull) >= 2:
                o, a = hull[-2], hull[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    hull.pop()
                else:
                    break
            hull.append(p)
        return hull

    lower = half_hull(pts)
    upper = half_hull(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def covered_area(positions: Sequence[Position] | np.ndarray) -> float:
    """Convex-hull area of a point set in square meters.

    Fewer than three distinct points, or a collinear set, covers zero area.
    """
    if isinstance(positions, np.ndarray):
        pts = np.asarray(positions, dtype=float).reshape(-1, 2)
    else:
        pts = np.array([(p.x, p.y) for p in positions], dtype=float).reshape(-1, 2)
    if pts.size and not np.all(np.isfinite(pts)):
        raise MetricsError("covered_area: non-finite coordinate")
    if len(pts) < 3:
        return 0.0
    hull = _convex_hull(pts)
    if len(hull) < 3:
        return 0.0
    x, y = hull[:, 0], hull[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


# ---------------------------------------------------------------------------
# Pressure


@dataclass(frozen=True)
class PressureParams:
    """Reach of the pressure zone: long in front of the carrier, short behind.

    The zone radius blends from ``d_front`` (straight ahead, along the
    attack direction) down to ``d_back`` (straight behind) with the cosine
    of the defender's bearing; ``q`` shapes the falloff.  This concretizes
    the qualitative rule that closer defenders press harder, and is marked
    approximate in exported payloads.
    """

    d_front: float = 9.0
    d_back: float = 3.0
    q: float = 1.0

    def validate(self) -> None:
        if not (self.d_front >= self.d_back > 0.0):
            raise MetricsError(
                f"pressure params require d_front >= d_back > 0, got {self.d_front}, {self.d_back}"
            )
        if self.q <= 0.0:
            raise MetricsError(f"pressure exponent must be positive, got {self.q}")


def pressure(
    carrier: Position,
    attack_dir: tuple[float, float],
    defenders: Iterable[Position],
    params: PressureParams = PressureParams(),
) -> float:
    """Total defender pressure on the ball carrier (dimensionless, >= 0).

    Each defender at distance d and bearing phi from the attack direction
    contributes max(0, 1 - d / L(phi))^q with
    L(phi) = d_back + (d_front - d_back) * (1 + cos phi) / 2,
    so the term vanishes beyond L(phi) and grows toward 1 as the defender
    closes in.
    """
    params.validate()
    ux, uy = attack_dir
    norm = math.hypot(ux, uy)
    if norm == 0.0 or not math.isfinite(norm):
        raise MetricsError("attack_dir must be a nonzero vector")
    ux, uy = ux / norm, uy / norm
    total = 0.0
    for d_pos in defenders:
        dx, dy = d_pos.x - carrier.x, d_pos.y - carrier.y
        dist = math.hypot(dx, dy)
        if dist == 0.0:
            total += 1.0
            continue
        cos_phi = (dx * ux + dy * uy) / dist
        reach = params.d_back + (params.d_front - params.d_back) * (1.0 + cos_phi) / 2.0
        term = 1.0 - dist / reach
        if term > 0.0:
            total += term**params.q
    return total


ATTACK_RIGHT = (1.0, 0.0)


# ---------------------------------------------------------------------------
# Heatmaps


@dataclass(frozen=True)
class HeatmapGrid:
    """Counts of pass endpoints over a uniform grid covering the pitch.

    ``bins[i, j]`` covers x in [i*105/R, (i+1)*105/R) and y likewise over
    68/C; points on the far edges fall into the last bin.
    """

    bins: np.ndarray
    extent: tuple[float, float] = (PITCH_LENGTH, PITCH_WIDTH)

    @property
    def rows(self) -> int:
        return self.bins.shape[0]

    @property
    def cols(self) -> int:
        return self.bins.shape[1]

    def total(self) -> int:
        return int(self.bins.sum())


def pattern_heatmap(phases: Iterable[Phase], rows: int = 21, cols: int = 14) -> HeatmapGrid:
    """Bin the origin and target of every pass in the given phases."""
    bins = np.zeros((rows, cols), dtype=int)
    for phase in phases:
        for p in phase.passes:
            for point in (p.origin, p.target):
                i = min(rows - 1, int(point.x * rows / PITCH_LENGTH))
                j = min(cols - 1, int(point.y * cols / PITCH_WIDTH))
                bins[i, j] += 1
    return HeatmapGrid(bins=bins)


# ---------------------------------------------------------------------------
# Spatial regions


def spatial_region(p: Position) -> RegionId:
    """Map an in-bounds point to its cell of the 3 x 3 pitch tiling."""
    if not (0.0 <= p.x <= PITCH_LENGTH and 0.0 <= p.y <= PITCH_WIDTH):
        raise MetricsError(f"point ({p.x}, {p.y}) outside pitch bounds")
    col = min(2, int(3.0 * p.x / PITCH_LENGTH))
    row = min(2, int(3.0 * p.y / PITCH_WIDTH))
    return RegionId(row=row, col=col)


# Stable glyph code per region, keyed off the most prominent pitch marking
# in that cell (attacking left-to-right; row tracks y, col tracks x).
REGION_GLYPHS: Mapping[RegionId, str] = {
    RegionId(0, 0): "own-corner-near",
    RegionId(0, 1): "halfway-touch-near",
    RegionId(0, 2): "opp-corner-near",
    RegionId(1, 0): "own-box",
    RegionId(1, 1): "center-circle",
    RegionId(1, 2): "opp-box",
    RegionId(2, 0): "own-corner-far",
    RegionId(2, 1): "halfway-touch-far",
    RegionId(2, 2): "opp-corner-far",
}


# ---------------------------------------------------------------------------
# Formation lines


@dataclass(frozen=True)
class FormationLines:
    """Line structure of a formation string, e.g. 4-4-2 has three lines."""

    formation: str
    segments: tuple[int, ...]

    @property
    def line_count(self) -> int:
        return len(self.segments)

    def line_for(self, line_index: int | None) -> int | None:
        """Highlighted line for a player's roster line index.

        The goalkeeper (line -1) and indexes outside the formation are
        never highlighted.
        """
        if line_index is None or line_index < 0 or line_index >= self.line_count:
            return None
        return line_index


def formation_lines(formation: str) -> FormationLines:
    return FormationLines(formation=formation, segments=parse_formation(formation))


# ---------------------------------------------------------------------------
# Phase summaries


@dataclass(frozen=True)
class PhaseSummary:
    """The glyph-level digest of one phase: its first and last touch points."""

    phase_id: int
    first_passer: PlayerId
    last_receiver: PlayerId
    line_count: int | None
    first_formation_line: int | None
    last_formation_line: int | None
    first_region: RegionId
    last_region: RegionId
    pass_count: int
    end_event: EventKind


def phase_summary(phase: Phase, match: MatchRecord) -> PhaseSummary:
    """Summarize a nonempty phase against the match's roster metadata."""
    sheet = match.team_sheet(phase.team)
    first, last = phase.passes[0], phase.passes[-1]
    formation = sheet.formation_by_half.get(phase.half)
    lines = formation_lines(formation) if formation else None
    return PhaseSummary(
        phase_id=phase.id,
        first_passer=first.passer,
        last_receiver=last.receiver,
        line_count=lines.line_count if lines else None,
        first_formation_line=lines.line_for(sheet.line_of(first.passer.shirt)) if lines else None,
        last_formation_line=lines.line_for(sheet.line_of(last.receiver.shirt)) if lines else None,
        first_region=spatial_region(first.origin),
        last_region=spatial_region(last.target),
        pass_count=phase.pass_count,
        end_event=phase.end_event,
    )


# ---------------------------------------------------------------------------
# Player statistics


@dataclass(frozen=True)
class PlayerStats:
    max_speed: float
    dash_distance: float
    pass_count: int
    total_distance: float


def player_stats(
    player: PlayerId,
    frames: Sequence[FrameSnapshot],
    passes: Iterable[Pass],
    dash_threshold: float = DASH_THRESHOLD,
    speed_clamp: float = SPEED_CLAMP,
) -> PlayerStats:
    """Movement and passing statistics for one player over a frame span.

    Speeds come from consecutive-frame finite differences within a half;
    segments faster than ``speed_clamp`` are discarded as tracking noise.
    Dash distance accumulates over segments above ``dash_threshold``.
    """
    track = [(f.half, f.t, f.positions[player]) for f in frames if player in f.positions]
    if len(track) < 2:
        raise MetricsError(f"fewer than 2 frames contain {player.label()}")
    max_speed = 0.0
    dash = 0.0
    total = 0.0
    for (h0, t0, p0), (h1, t1, p1) in zip(track, track[1:]):
        if h0 != h1:
            continue  # the clock resets at the half boundary
        dt = t1 - t0
        if dt <= 0.0:
            continue
        dist = p0.distance_to(p1)
        speed = dist / dt
        if speed > speed_clamp:
            continue
        max_speed = max(max_speed, speed)
        total += dist
        if speed > dash_threshold:
            dash += dist
    n_passes = sum(1 for p in passes if p.passer == player)
    return PlayerStats(
        max_speed=max_speed, dash_distance=dash, pass_count=n_passes, total_distance=total
    )


# ---------------------------------------------------------------------------
# Defense snapshots and per-phase series


@dataclass(frozen=True)
class DefenseContext:
    """Opposing positions and derived metrics at the instant of a pass."""

    frame_t: float
    half: int
    opponents: Mapping[PlayerId, Position]
    covered_area: float
    pressure: float
    approximate: bool = True  # the pressure formula is a concretization


def _nearest_frame(
    frames: Sequence[FrameSnapshot], half: int, t: float, tolerance: float
) -> FrameSnapshot | None:
    best: FrameSnapshot | None = None
    best_dt = tolerance
    for f in frames:
        if f.half != half:
            continue
        dt = abs(f.t - t)
        # Ties go to the earlier frame: scanning in time order, a later
        # frame must be strictly nearer to displace the incumbent.
        if dt < best_dt or (best is None and dt <= best_dt):
            best = f
            best_dt = dt
    return best


def defense_context(
    p: Pass,
    frames: Sequence[FrameSnapshot],
    params: PressureParams = PressureParams(),
    tolerance: float = FRAME_TOLERANCE,
) -> DefenseContext:
    """Opposing-team snapshot at the moment of a pass.

    Uses the frame nearest ``t_pass`` within the tolerance (ties toward the
    earlier frame) and evaluates covered area and carrier pressure on it.
    """
    frame = _nearest_frame(frames, p.half, p.t_pass, tolerance)
    if frame is None:
        raise MetricsError(
            f"no frame within {tolerance} s of pass at t={p.t_pass} (half {p.half})"
        )
    opponents = {
        pid: pos for pid, pos in frame.positions.items() if pid.team != p.passer.team
    }
    return DefenseContext(
        frame_t=frame.t,
        half=frame.half,
        opponents=opponents,
        covered_area=covered_area(list(opponents.values())),
        pressure=pressure(p.origin, ATTACK_RIGHT, opponents.values(), params),
    )


@dataclass(frozen=True)
class PhaseMetrics:
    """Covered-area and pressure time series over one phase's span."""

    phase_id: int
    covered_area_series: tuple[tuple[float, float], ...]
    pressure_series: tuple[tuple[float, float], ...]
    defense_bar: float | None

    @property
    def available(self) -> bool:
        return self.defense_bar is not None

    def mean_pressure(self) -> float | None:
        if not self.pressure_series:
            return None
        return float(np.mean([v for _, v in self.pressure_series]))


def _carrier_at(phase: Phase, t: float) -> PlayerId:
    # Possession changes hands at reception; in flight the passer still
    # counts as the carrier.
    carrier = phase.passes[0].passer
    for p in phase.passes:
        if p.t_receive <= t:
            carrier = p.receiver
        else:
            break
    return carrier


def phase_metrics(
    phase: Phase,
    match: MatchRecord,
    params: PressureParams = PressureParams(),
) -> PhaseMetrics:
    """Evaluate the defense context over every frame within the phase span.

    The carrier at a frame is the receiver of the latest pass already
    received (the first passer before that).  Frameless phases yield empty
    series and no defense bar.
    """
    opponent = match.opponent_of(phase.team)
    t0, t1 = phase.start_time, phase.end_time
    areas: list[tuple[float, float]] = []
    pressures: list[tuple[float, float]] = []
    for f in match.frames:
        if f.half != phase.half or not (t0 <= f.t <= t1):
            continue
        opponents = [pos for pid, pos in f.positions.items() if pid.team == opponent]
        areas.append((f.t, covered_area(opponents)))
        carrier = _carrier_at(phase, f.t)
        carrier_pos = f.positions.get(carrier)
        if carrier_pos is not None:
            pressures.append((f.t, pressure(carrier_pos, ATTACK_RIGHT, opponents, params)))
    defense_bar = float(np.mean([a for _, a in areas])) if areas else None
    return PhaseMetrics(
        phase_id=phase.id,
        covered_area_series=tuple(areas),
        pressure_series=tuple(pressures),
        defense_bar=defense_bar,
    )


# ---------------------------------------------------------------------------
# Dribble segments


@dataclass(frozen=True)
class DribbleSegment:
    player: PlayerId
    start: Position
    end: Position

    @property
    def displacement(self) -> float:
        return self.start.distance_to(self.end)


def dribble_segments(
    phase: Phase, displacement_floor: float = DRIBBLE_DISPLACEMENT_FLOOR
) -> tuple[DribbleSegment, ...]:
    """Ball-carrying movements between consecutive passes of a phase.

    When a receiver is also the next passer, their movement from reception
    to the next release is a dribble; slight movements below the floor are
    dropped to reduce clutter.
    """
    segments = []
    for a, b in zip(phase.passes, phase.passes[1:]):
        if a.receiver != b.passer:
            continue
        seg = DribbleSegment(player=a.receiver, start=a.target, end=b.origin)
        if seg.displacement >= displacement_floor:
            segments.append(seg)
    return tuple(segments)
