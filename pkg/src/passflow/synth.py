"""Seeded synthetic match generators for tests, demos and benchmarks.

Matches are emitted in the file schema (plain dicts) and meant to be run
through the real parser, so every fixture inherits full validation.  The
central generator plants disjoint passing groups: each possession phase is a
random-order walk through one group's members, which gives downstream
detectors clean ground truth (the group index) while order statistics stay
random.  Both teams switch ends at half time, so direction normalization is
exercised by anything consuming positions.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .matchdata import (
    MatchDataError,
    PITCH_LENGTH,
    PITCH_WIDTH,
    STYLE_COUNTER,
)

# Default partition of the 11 shirts into disjoint passing groups.
DEFAULT_GROUPS: tuple[tuple[int, ...], ...] = ((1, 2, 3, 4), (5, 6, 7, 8), (9, 10, 11))

# Base positions per shirt in the team's attacks-right frame, kept a jitter
# margin away from the pitch boundary.
_BASES: dict[int, tuple[float, float]] = {
    1: (9.0, 34.0),
    2: (26.0, 10.0),
    3: (24.0, 26.0),
    4: (24.0, 42.0),
    5: (26.0, 58.0),
    6: (52.0, 11.0),
    7: (50.0, 27.0),
    8: (50.0, 41.0),
    9: (52.0, 57.0),
    10: (78.0, 27.0),
    11: (78.0, 41.0),
}

_ROLES = {-1: "GK", 0: "DF", 1: "MF", 2: "FW"}
_LINES = {1: -1, 2: 0, 3: 0, 4: 0, 5: 0, 6: 1, 7: 1, 8: 1, 9: 1, 10: 2, 11: 2}

_BREAKERS = ("out-of-bounds", "foul", "interception", "shot")

_JITTER = 3.0


def _team_doc(team_id: str, direction_by_half: dict[int, str]) -> dict:
    return {
        "id": team_id,
        "players": [
            {
                "shirt": shirt,
                "name": f"{team_id} {shirt}",
                "role": _ROLES[_LINES[shirt]],
                "line": _LINES[shirt],
            }
            for shirt in range(1, 12)
        ],
        "formation_by_half": {"1": "4-4-2", "2": "4-4-2"},
        "attack_direction_by_half": {str(h): d for h, d in direction_by_half.items()},
    }


def _place(shirt: int, attacks_right: bool) -> tuple[float, float]:
    x, y = _BASES[shirt]
    if attacks_right:
        return x, y
    return PITCH_LENGTH - x, PITCH_WIDTH - y


def _point(rng: np.random.Generator, base: tuple[float, float]) -> dict:
    x = base[0] + rng.uniform(-_JITTER, _JITTER)
    y = base[1] + rng.uniform(-_JITTER, _JITTER)
    return {"x": round(x, 3), "y": round(y, 3)}


def group_match(
    seed: int = 0,
    n_phases: int = 300,
    groups: Sequence[Sequence[int]] = DEFAULT_GROUPS,
    n_counter: int = 0,
    away_phases: int = 0,
    with_frames: bool = False,
    match_id: str | None = None,
) -> tuple[dict, list[int | None]]:
    """Generate a match whose home phases follow planted passing groups.

    Each build-up phase walks one group in a fresh random order (every
    member touched once), so any two group members co-occur in every phase
    of that group while their order is a coin flip.  Counter-attack phases,
    labeled in ``phase_styles``, sprint goalward through three players.
    Optional away-team phases and per-pass frame snapshots extend coverage.

    Returns the match document and a per-phase ground-truth list indexed by
    phase id: the group index for home build-ups, -1 for counter-attacks,
    None for away phases.
    """
    flat = [s for g in groups for s in g]
    if len(set(flat)) != len(flat):
        raise MatchDataError("groups must be disjoint")
    if any(s not in _BASES for s in flat):
        raise MatchDataError("group shirts must be in 1..11")
    if any(len(g) < 2 for g in groups):
        raise MatchDataError("every group needs at least 2 members")

    rng = np.random.default_rng(seed)
    home_dir = {1: "right", 2: "left"}
    away_dir = {1: "left", 2: "right"}
    doc = {
        "match_id": match_id or f"synthetic-groups-{seed}",
        "teams": [_team_doc("home", home_dir), _team_doc("away", away_dir)],
        "frames": [],
        "events": [],
        "phase_styles": [],
    }
    labels: list[int | None] = []
    # Independent clock per half; events are ordered by (half, t).
    cursor = {1: 10.0, 2: 10.0}

    def emit_frame(half: int, t: float) -> None:
        positions = []
        for team, directions in (("home", home_dir), ("away", away_dir)):
            right = directions[half] == "right"
            for shirt in range(1, 12):
                p = _point(rng, _place(shirt, right))
                positions.append({"team": team, "shirt": shirt, **p})
        doc["frames"].append({"t": round(t, 3), "half": half, "positions": positions})

    def emit_phase(team: str, half: int, walk: list[int], waypoints: list[dict]) -> None:
        t = cursor[half] + 3.0
        for i, (passer, receiver) in enumerate(zip(walk, walk[1:])):
            travel = 0.9 + 0.5 * rng.random()
            if with_frames:
                emit_frame(half, t)
            doc["events"].append(
                {
                    "type": "pass",
                    "t": round(t, 3),
                    "half": half,
                    "passer": {"team": team, "shirt": passer},
                    "receiver": {"team": team, "shirt": receiver},
                    "t_receive": round(t + travel, 3),
                    "origin": waypoints[i],
                    "target": waypoints[i + 1],
                    "completed": True,
                }
            )
            t += travel + 0.5 + 0.4 * rng.random()
        doc["events"].append(
            {"type": str(rng.choice(_BREAKERS)), "t": round(t + 0.3, 3), "half": half}
        )
        cursor[half] = t + 2.0

    def buildup_walk(team: str, half: int, group: Sequence[int]) -> None:
        right = (home_dir if team == "home" else away_dir)[half] == "right"
        walk = [int(s) for s in rng.permutation(list(group))]
        waypoints = [_point(rng, _place(s, right)) for s in walk]
        emit_phase(team, half, walk, waypoints)

    def counter_walk(team: str, half: int) -> None:
        right = (home_dir if team == "home" else away_dir)[half] == "right"
        walk = [int(s) for s in rng.choice(np.arange(2, 12), size=3, replace=False)]
        y0, y1 = rng.uniform(15.0, 53.0, size=2)
        line = [(12.0, y0), (45.0, (y0 + y1) / 2.0), (78.0, y1)]
        waypoints = [
            _point(rng, p if right else (PITCH_LENGTH - p[0], PITCH_WIDTH - p[1]))
            for p in line
        ]
        emit_phase(team, half, walk, waypoints)

    first_half = (n_phases + 1) // 2
    phase_idx = 0
    for i in range(n_phases):
        group_idx = int(rng.integers(0, len(groups)))
        buildup_walk("home", 1 if i < first_half else 2, groups[group_idx])
        labels.append(group_idx)
        phase_idx += 1
    for _ in range(n_counter):
        counter_walk("home", 2)
        doc["phase_styles"].append({"phase_index": phase_idx, "style": STYLE_COUNTER})
        labels.append(-1)
        phase_idx += 1
    for _ in range(away_phases):
        group = [int(s) for s in rng.choice(np.arange(1, 12), size=4, replace=False)]
        buildup_walk("away", 2, group)
        labels.append(None)
        phase_idx += 1

    if not doc["phase_styles"]:
        del doc["phase_styles"]
    return doc, labels


def demo_match(seed: int = 11) -> tuple[dict, list[int | None]]:
    """A compact showcase match: five passing groups, counters, frames."""
    return group_match(
        seed=seed,
        n_phases=60,
        groups=((1, 2, 3), (4, 5), (6, 7), (8, 9), (10, 11)),
        n_counter=6,
        away_phases=8,
        with_frames=True,
        match_id=f"demo-{seed}",
    )


def match_bytes(doc: dict) -> bytes:
    """Canonical file bytes for a match document."""
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()


def write_match(doc: dict, path) -> None:
    with open(path, "wb") as fh:
        fh.write(match_bytes(doc))
