"""Report payloads and delimited tables shared by the service and the CLI.

Builders here expect a match that is already segmented and
direction-normalized for the team under view, so positions read
left-to-right and heatmaps and regions are comparable across halves.
All payloads are plain dicts with deterministic construction order, and
the table exports serialize them canonically, so identical inputs yield
byte-identical outputs.
"""

from __future__ import annotations

import csv
import io
import json

from .matchdata import (
    EventKind,
    MatchDataError,
    MatchRecord,
    Pass,
    Phase,
    PlayerId,
    Position,
    RegionId,
)
from .metrics import (
    MetricsError,
    PressureParams,
    REGION_GLYPHS,
    defense_context,
    dribble_segments,
    pattern_heatmap,
    phase_metrics,
    phase_summary,
    player_stats,
    spatial_region,
)
from .patterns import DetectionResult

SHOOTING_TAGS = frozenset({"shot", "goal"})

PATTERN_SORTS = ("frequency", "shootings")


def _pos(p: Position) -> dict:
    return {"x": p.x, "y": p.y}


def _region(r: RegionId) -> dict:
    return {"row": r.row, "col": r.col, "label": r.label(), "glyph": REGION_GLYPHS[r]}


def _event(e: EventKind) -> dict:
    return {
        "tag": e.tag,
        "t": e.t,
        "half": e.half,
        "actor": e.actor.label() if e.actor is not None else None,
    }


def _pass(p: Pass) -> dict:
    return {
        "passer": p.passer.label(),
        "receiver": p.receiver.label(),
        "t": p.t_pass,
        "t_receive": p.t_receive,
        "origin": _pos(p.origin),
        "target": _pos(p.target),
        "completed": p.completed,
    }


def _entry_label(entry: PlayerId | RegionId) -> str:
    return entry.label()


def _phase_shoots(phase: Phase) -> bool:
    return phase.end_event.tag in SHOOTING_TAGS


# ---------------------------------------------------------------------------
# Pattern payloads


def _passer_counts(phases, dictionary) -> list[int]:
    """Pass count per dictionary entry: passes launched by the player, or
    passes originating in the region."""
    counts = [0] * len(dictionary)
    index = dictionary.index
    for phase in phases:
        for p in phase.passes:
            key = p.passer if dictionary.kind == "player" else spatial_region(p.origin)
            if key in index:
                counts[index[key]] += 1
    return counts


def patterns_payload(
    match: MatchRecord,
    detection: DetectionResult,
    team: str,
    sort: str = "frequency",
    heatmap_rows: int = 21,
    heatmap_cols: int = 14,
) -> dict:
    """The pattern-diagram payload: dictionary entries with overall bars,
    plus per-pattern weights, key players, heatmap and within-pattern bars.

    ``sort`` orders patterns by assigned-phase count or by the number of
    assigned phases ending in a shot or goal; ties keep pattern-id order.
    """
    if sort not in PATTERN_SORTS:
        raise MatchDataError(f"sort must be one of {PATTERN_SORTS}, got {sort!r}")
    phases = match.team_phases(team)
    by_id = {p.id: p for p in phases}
    sheet = match.team_sheet(team)
    dictionary = detection.dictionary

    overall = _passer_counts(phases, dictionary)
    entries = []
    for entry, count in zip(dictionary.entries, overall):
        item = {"label": entry.label(), "kind": dictionary.kind, "pass_count": count}
        if isinstance(entry, PlayerId):
            line = sheet.line_of(entry.shirt)
            item.update(
                name=next(p.name for p in sheet.players if p.shirt == entry.shirt),
                role=sheet.role_of(entry.shirt),
                line=line if line >= 0 else None,  # keeper sits outside the lines
            )
        else:
            item["glyph"] = REGION_GLYPHS[entry]
        entries.append(item)

    patterns = []
    for pattern in detection.patterns:
        assigned = [
            by_id[pid]
            for pid, pat in detection.assignments.items()
            if pat == pattern.pattern_id and pid in by_id
        ]
        assigned.sort(key=lambda ph: ph.id)
        grid = pattern_heatmap(assigned, heatmap_rows, heatmap_cols)
        patterns.append(
            {
                "pattern_id": pattern.pattern_id,
                "style": pattern.style,
                "frequency": pattern.frequency,
                "shootings": sum(1 for ph in assigned if _phase_shoots(ph)),
                "weights": [float(w) for w in pattern.weights],
                "key_players": [_entry_label(e) for e in pattern.key_players],
                "pass_counts": _passer_counts(assigned, dictionary),
                "phase_ids": [ph.id for ph in assigned],
                "heatmap": {
                    "rows": grid.rows,
                    "cols": grid.cols,
                    "bins": grid.bins.tolist(),
                },
            }
        )
    patterns.sort(key=lambda p: (-p[sort], p["pattern_id"]))
    return {"team": team, "sort": sort, "players": entries, "patterns": patterns}


# ---------------------------------------------------------------------------
# Flow payloads


def flow_payload(
    match: MatchRecord,
    detection: DetectionResult,
    team: str,
    params: PressureParams = PressureParams(),
) -> dict:
    """The pattern-flow payload: one chronological record per phase."""
    records = []
    for phase in match.team_phases(team):
        summary = phase_summary(phase, match)
        metrics = phase_metrics(phase, match, params)
        records.append(
            {
                "phase_id": phase.id,
                "half": phase.half,
                "pattern_id": detection.assignments.get(phase.id),
                "style": phase.style,
                "style_inferred": phase.style_inferred,
                "start": phase.start_time,
                "end": phase.end_time,
                "pass_count": phase.pass_count,
                "defense_bar": metrics.defense_bar,
                "mean_pressure": metrics.mean_pressure(),
                "shooting": _phase_shoots(phase),
                "end_event": _event(phase.end_event),
                "participants": sorted(
                    {pid.label() for p in phase.passes for pid in p.participants()}
                ),
                "summary": {
                    "first_passer": summary.first_passer.label(),
                    "last_receiver": summary.last_receiver.label(),
                    "line_count": summary.line_count,
                    "first_formation_line": summary.first_formation_line,
                    "last_formation_line": summary.last_formation_line,
                    "first_region": _region(summary.first_region),
                    "last_region": _region(summary.last_region),
                },
            }
        )
    return {"team": team, "phases": records}


# ---------------------------------------------------------------------------
# Phase detail


def phase_detail_payload(
    match: MatchRecord,
    phase: Phase,
    params: PressureParams = PressureParams(),
) -> dict:
    """Everything the phase view needs: passes, dribbles, defense context
    per pass, a statistics table, and the frame slice for animation.

    When no frame lies within tolerance of a pass, that pass's defense row
    is null; ``metrics.available`` is false when every row is.
    """
    defense_rows: list[dict | None] = []
    for i, p in enumerate(phase.passes):
        try:
            ctx = defense_context(p, match.frames, params)
        except MetricsError:
            defense_rows.append(None)
            continue
        defense_rows.append(
            {
                "pass_index": i,
                "frame_t": ctx.frame_t,
                "covered_area": ctx.covered_area,
                "pressure": ctx.pressure,
                "approximate": ctx.approximate,
                "opponents": [
                    {"player": pid.label(), **_pos(pos)}
                    for pid, pos in sorted(ctx.opponents.items())
                ],
            }
        )
    available = any(row is not None for row in defense_rows)
    metrics = phase_metrics(phase, match, params)

    frames = []
    for f in match.frames:
        if f.half == phase.half and phase.start_time <= f.t <= phase.end_time:
            frames.append(
                {
                    "t": f.t,
                    "positions": [
                        {"player": pid.label(), **_pos(pos)}
                        for pid, pos in sorted(f.positions.items())
                    ],
                    "ball": _pos(f.ball) if f.ball is not None else None,
                }
            )

    return {
        "phase_id": phase.id,
        "team": phase.team,
        "half": phase.half,
        "style": phase.style,
        "style_inferred": phase.style_inferred,
        "end_event": _event(phase.end_event),
        "passes": [_pass(p) for p in phase.passes],
        "dribbles": [
            {
                "player": seg.player.label(),
                "start": _pos(seg.start),
                "end": _pos(seg.end),
                "displacement": seg.displacement,
            }
            for seg in dribble_segments(phase)
        ],
        "defense": defense_rows,
        "statistics": [
            {
                "pass_index": i,
                "t": p.t_pass,
                "covered_area": row["covered_area"] if row else None,
                "pressure": row["pressure"] if row else None,
            }
            for i, (p, row) in enumerate(zip(phase.passes, defense_rows))
        ],
        "metrics": {
            "available": available,
            "defense_bar": metrics.defense_bar,
            "mean_pressure": metrics.mean_pressure(),
        },
        "frames": frames,
    }


# ---------------------------------------------------------------------------
# Player statistics


def parse_span(span: str | None) -> tuple[int, float, float] | None:
    """Parse a frame-span selector ``half:t0:t1`` (seconds within the half)."""
    if span is None:
        return None
    parts = span.split(":")
    if len(parts) != 3:
        raise MatchDataError(f"span must be half:t0:t1, got {span!r}")
    try:
        half, t0, t1 = int(parts[0]), float(parts[1]), float(parts[2])
    except ValueError:
        raise MatchDataError(f"span must be numeric half:t0:t1, got {span!r}") from None
    if half not in (1, 2) or t1 < t0:
        raise MatchDataError(f"span out of order or bad half: {span!r}")
    return half, t0, t1


def player_stats_payload(match: MatchRecord, player: PlayerId, span: str | None = None) -> dict:
    """Movement and passing statistics for one player over a frame span."""
    window = parse_span(span)
    if window is None:
        frames = match.frames
    else:
        half, t0, t1 = window
        frames = tuple(f for f in match.frames if f.half == half and t0 <= f.t <= t1)
    stats = player_stats(player, frames, match.passes())
    return {
        "player": player.label(),
        "span": span,
        "max_speed": stats.max_speed,
        "dash_distance": stats.dash_distance,
        "pass_count": stats.pass_count,
        "total_distance": stats.total_distance,
    }


# ---------------------------------------------------------------------------
# Delimited tables


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row[c] is None else row[c] for c in columns])
    return buf.getvalue()


def metrics_csv(flow: dict) -> str:
    """Per-phase metric table: one row per phase of the flow payload."""
    rows = [
        {
            "phase_id": r["phase_id"],
            "defense_bar": r["defense_bar"],
            "mean_pressure": r["mean_pressure"],
            "pass_count": r["pass_count"],
            "end_event": r["end_event"]["tag"],
        }
        for r in flow["phases"]
    ]
    return _csv(rows, ["phase_id", "defense_bar", "mean_pressure", "pass_count", "end_event"])


def flow_csv(flow: dict) -> str:
    rows = [
        {
            "phase_id": r["phase_id"],
            "half": r["half"],
            "pattern_id": r["pattern_id"],
            "style": r["style"],
            "first_passer": r["summary"]["first_passer"],
            "last_receiver": r["summary"]["last_receiver"],
            "first_region": r["summary"]["first_region"]["label"],
            "last_region": r["summary"]["last_region"]["label"],
            "pass_count": r["pass_count"],
            "end_event": r["end_event"]["tag"],
        }
        for r in flow["phases"]
    ]
    return _csv(
        rows,
        [
            "phase_id",
            "half",
            "pattern_id",
            "style",
            "first_passer",
            "last_receiver",
            "first_region",
            "last_region",
            "pass_count",
            "end_event",
        ],
    )


def patterns_csv(payload: dict) -> str:
    rows = [
        {
            "pattern_id": p["pattern_id"],
            "style": p["style"],
            "frequency": p["frequency"],
            "shootings": p["shootings"],
            "key_players": "|".join(p["key_players"]),
        }
        for p in payload["patterns"]
    ]
    return _csv(rows, ["pattern_id", "style", "frequency", "shootings", "key_players"])


def to_json_bytes(payload: dict) -> bytes:
    """Canonical JSON bytes for any reporting payload."""
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode()
