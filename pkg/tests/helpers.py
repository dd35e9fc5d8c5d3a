"""Shared fixture builders and independent scoring helpers for the tests."""

from __future__ import annotations

import random
from math import comb

from passflow.matchdata import parse_match_dict, segment

LINES = {1: -1, 2: 0, 3: 0, 4: 0, 5: 0, 6: 1, 7: 1, 8: 1, 9: 1, 10: 2, 11: 2}
ROLES = {-1: "GK", 0: "DF", 1: "MF", 2: "FW"}


def team_doc(team_id: str, directions: dict[int, str], formation: str = "4-4-2") -> dict:
    return {
        "id": team_id,
        "players": [
            {
                "shirt": s,
                "name": f"{team_id} {s}",
                "role": ROLES[LINES[s]],
                "line": LINES[s],
            }
            for s in range(1, 12)
        ],
        "formation_by_half": {"1": formation, "2": formation},
        "attack_direction_by_half": {str(h): d for h, d in directions.items()},
    }


def make_doc(
    events: list[dict],
    frames: list[dict] | None = None,
    styles: list[dict] | None = None,
    match_id: str = "t-1",
    home_directions: dict[int, str] | None = None,
    away_directions: dict[int, str] | None = None,
    formation: str = "4-4-2",
) -> dict:
    doc = {
        "match_id": match_id,
        "teams": [
            team_doc("home", home_directions or {1: "right", 2: "left"}, formation),
            team_doc("away", away_directions or {1: "left", 2: "right"}, formation),
        ],
        "frames": frames or [],
        "events": events,
    }
    if styles:
        doc["phase_styles"] = styles
    return doc


def pass_event(
    team: str,
    passer: int,
    receiver: int,
    t: float,
    origin: tuple[float, float] = (20.0, 30.0),
    target: tuple[float, float] = (40.0, 35.0),
    t_receive: float | None = None,
    half: int = 1,
    completed: bool = True,
) -> dict:
    return {
        "type": "pass",
        "t": t,
        "half": half,
        "passer": {"team": team, "shirt": passer},
        "receiver": {"team": team, "shirt": receiver},
        "t_receive": t + 1.0 if t_receive is None else t_receive,
        "origin": {"x": origin[0], "y": origin[1]},
        "target": {"x": target[0], "y": target[1]},
        "completed": completed,
    }


def tag_event(tag: str, t: float, half: int = 1, actor: tuple[str, int] | None = None) -> dict:
    event = {"type": tag, "t": t, "half": half}
    if actor is not None:
        event["actor"] = {"team": actor[0], "shirt": actor[1]}
    return event


def frame(t: float, positions: dict[tuple[str, int], tuple[float, float]], half: int = 1) -> dict:
    return {
        "t": t,
        "half": half,
        "positions": [
            {"team": team, "shirt": shirt, "x": x, "y": y}
            for (team, shirt), (x, y) in positions.items()
        ],
    }


def load(doc: dict):
    """Parse and segment a match document."""
    return segment(parse_match_dict(doc))


def random_stream_doc(seed: int, n_events: int = 60, match_id: str | None = None) -> dict:
    """A random but valid two-team event stream mixing passes, breakers,
    possession-gains, set pieces and unknown tags over both halves."""
    rng = random.Random(seed)
    events: list[dict] = []
    clock = {1: 5.0, 2: 5.0}
    for i in range(n_events):
        half = 1 if i < n_events // 2 else 2
        clock[half] += rng.uniform(0.5, 3.0)
        t = round(clock[half], 3)
        team = rng.choice(("home", "away"))
        roll = rng.random()
        if roll < 0.6:
            a, b = rng.sample(range(1, 12), 2)
            origin = (rng.uniform(0, 105), rng.uniform(0, 68))
            target = (rng.uniform(0, 105), rng.uniform(0, 68))
            events.append(
                pass_event(team, a, b, t, origin, target, t + rng.uniform(0.3, 1.5), half)
            )
        elif roll < 0.8:
            events.append(
                tag_event(
                    rng.choice(("shot", "goal", "interception", "out-of-bounds", "foul")),
                    t,
                    half,
                )
            )
        elif roll < 0.9:
            events.append(
                tag_event(
                    rng.choice(("corner", "offside", "card", "substitution", "drinks-break")),
                    t,
                    half,
                )
            )
        else:
            actor = None if rng.random() < 0.3 else (team, rng.randint(1, 11))
            events.append(tag_event("possession-gain", t, half, actor))
    return make_doc(events, match_id=match_id or f"stream-{seed}")


def adjusted_rand_index(labels_a: list[int], labels_b: list[int]) -> float:
    """Chance-corrected agreement of two clusterings of the same items."""
    assert len(labels_a) == len(labels_b) and labels_a
    n = len(labels_a)
    table: dict[tuple[int, int], int] = {}
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for a, b in zip(labels_a, labels_b):
        table[(a, b)] = table.get((a, b), 0) + 1
        rows[a] = rows.get(a, 0) + 1
        cols[b] = cols.get(b, 0) + 1
    sum_ij = sum(comb(v, 2) for v in table.values())
    sum_a = sum(comb(v, 2) for v in rows.values())
    sum_b = sum(comb(v, 2) for v in cols.values())
    total = comb(n, 2)
    expected = sum_a * sum_b / total if total else 0.0
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        return 1.0
    return (sum_ij - expected) / (max_index - expected)
