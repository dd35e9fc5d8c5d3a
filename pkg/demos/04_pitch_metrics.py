"""Tactical context around a phase: space, pressure, movement.

Covered area measures how much pitch the defending team's hull spans
(smaller = more compact).  Pressure sums direction-weighted proximity
terms on the ball carrier.  Heatmaps count pass endpoints on a grid, and
player statistics summarize movement from tracking frames.
"""

import numpy as np

from passflow import (
    PlayerId,
    PressureParams,
    Position,
    covered_area,
    normalize_direction,
    parse_match_dict,
    pattern_heatmap,
    phase_metrics,
    phase_summary,
    player_stats,
    pressure,
    segment,
)
from passflow.synth import demo_match

doc, _ = demo_match(seed=11)
record = normalize_direction(segment(parse_match_dict(doc)), "home")

# Covered area: the full pitch rectangle is 105 x 68 = 7140 m^2.
corners = np.array([[0.0, 0.0], [105.0, 0.0], [105.0, 68.0], [0.0, 68.0]])
print(f"covered_area(full pitch corners) = {covered_area(corners):.0f} m^2")

# Pressure: a defender dead ahead at half the frontal radius scores 0.5.
params = PressureParams()
carrier = Position(52.5, 34.0)
ahead = Position(carrier.x + params.d_front / 2, carrier.y)
print(f"pressure(one defender at d_front/2 ahead) = {pressure(carrier, (1, 0), [ahead], params)}")

# Phase-level series from the tracking frames.
phase = record.team_phases("home")[0]
metrics = phase_metrics(phase, record, params)
print(f"\nphase {phase.id}: defense_bar = {metrics.defense_bar:.1f} m^2, "
      f"mean pressure = {metrics.mean_pressure():.3f}")
for t, area in metrics.covered_area_series:
    print(f"  t={t:6.1f}  covered {area:7.1f} m^2")

summary = phase_summary(phase, record)
print(f"summary: {summary.first_passer.label()} ({summary.first_region.label()}) "
      f"... {summary.last_receiver.label()} ({summary.last_region.label()}), "
      f"{summary.line_count} formation lines")

# Pass-endpoint heatmap over all of the team's phases; mass is conserved:
# every pass contributes exactly its origin and target.
phases = record.team_phases("home")
grid = pattern_heatmap(phases)
total_passes = sum(p.pass_count for p in phases)
print(f"\nheatmap {grid.rows}x{grid.cols}: sum {grid.total():.0f} "
      f"= 2 x {total_passes} passes")
dense = np.unravel_index(np.argmax(grid.bins), grid.bins.shape)
print(f"busiest cell: x-bin {dense[0]}, y-bin {dense[1]}")

# Per-player movement statistics from the frames.
stats = player_stats(PlayerId("home", 9), record.frames, record.passes())
print(f"\nhome:9 over the match: {stats.total_distance:.0f} m total, "
      f"max speed {stats.max_speed:.1f} m/s, dash distance {stats.dash_distance:.0f} m, "
      f"{stats.pass_count} passes")
