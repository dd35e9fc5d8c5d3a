"""Match data model: rosters, frames, passes, events, possession phases.

A match file is a single JSON document (see ``parse_match``) holding two
rosters, per-frame player positions and a time-ordered event list that mixes
passes with game events.  All positions live in a fixed 105 x 68 m frame.
Timestamps are seconds from the kickoff of each half; every frame and event
carries a ``half`` field, and ordering is lexicographic over ``(half, t)``.

The derived unit of analysis is the :class:`Phase`: a maximal run of
consecutive passes by one team, terminated by a possession turnover, a
stoppage from the closed breaker set, or the end of a half.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence, Union

PITCH_LENGTH = 105.0
PITCH_WIDTH = 68.0

# Coordinates this far outside the pitch are clamped; anything further is an
# ingest error.
COORD_TOLERANCE = 1.0

# Closed tag set.  "half-end" is synthesized by segmentation only and never
# appears in input files.  Unknown input tags are preserved verbatim but can
# never terminate a phase.
KNOWN_EVENT_TAGS = frozenset(
    {
        "shot",
        "goal",
        "interception",
        "out-of-bounds",
        "foul",
        "corner",
        "offside",
        "substitution",
        "card",
        "possession-gain",
        "half-end",
    }
)

# Tags that unconditionally end the possession phase in progress.
# possession-gain ends a phase only when taken by the other team; the half
# boundary is handled structurally.
PHASE_BREAKERS = frozenset({"shot", "goal", "interception", "out-of-bounds", "foul"})

STYLE_COUNTER = "counter-attack"
STYLE_BUILDUP = "build-up"
STYLE_UNLABELED = "unlabeled"
PHASE_STYLES = frozenset({STYLE_COUNTER, STYLE_BUILDUP, STYLE_UNLABELED})


class MatchDataError(ValueError):
    """Raised for malformed match documents or violated data invariants."""


@dataclass(frozen=True, order=True)
class PlayerId:
    """A player reference: team identifier plus shirt number."""

    team: str
    shirt: int

    def label(self) -> str:
        return f"{self.team}:{self.shirt}"


@dataclass(frozen=True, order=True)
class RegionId:
    """One cell of the fixed 3 x 3 pitch tiling (row over y, col over x)."""

    row: int
    col: int

    def label(self) -> str:
        return f"R{self.row}{self.col}"


@dataclass(frozen=True)
class Position:
    """A point on the pitch, meters: x along the length, y along the width."""

    x: float
    y: float

    def mirrored(self) -> "Position":
        return Position(PITCH_LENGTH - self.x, PITCH_WIDTH - self.y)

    def distance_to(self, other: "Position") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Pass:
    """A completed or attempted pass between two players of one team."""

    passer: PlayerId
    receiver: PlayerId
    t_pass: float
    t_receive: float
    origin: Position
    target: Position
    completed: bool
    half: int

    def participants(self) -> tuple[PlayerId, PlayerId]:
        return (self.passer, self.receiver)


@dataclass(frozen=True)
class EventKind:
    """A non-pass game event: stoppages, outcomes, bookkeeping."""

    tag: str
    t: float
    half: int
    actor: PlayerId | None = None

    @property
    def known(self) -> bool:
        return self.tag in KNOWN_EVENT_TAGS


Event = Union[Pass, EventKind]


@dataclass(frozen=True)
class Phase:
    """One uninterrupted possession: an ordered, nonempty run of passes.

    ``style_inferred`` marks styles set by the counter-attack heuristic
    rather than taken from the input file.
    """

    id: int
    team: str
    passes: tuple[Pass, ...]
    style: str
    end_event: EventKind
    half: int
    style_inferred: bool = False

    @property
    def pass_count(self) -> int:
        return len(self.passes)

    @property
    def start_time(self) -> float:
        return self.passes[0].t_pass

    @property
    def end_time(self) -> float:
        return self.passes[-1].t_receive


@dataclass(frozen=True)
class FrameSnapshot:
    """Positions of all on-pitch players (both teams) at one instant."""

    t: float
    half: int
    positions: Mapping[PlayerId, Position]
    ball: Position | None = None


@dataclass(frozen=True)
class RosterPlayer:
    """Squad entry: shirt, display name, role and formation line index.

    ``line`` indexes the team's formation lines back to front; the
    goalkeeper carries line -1.
    """

    shirt: int
    name: str
    role: str
    line: int


@dataclass(frozen=True)
class TeamSheet:
    """One team's roster plus per-half formation and attacking direction."""

    team_id: str
    players: tuple[RosterPlayer, ...]
    formation_by_half: Mapping[int, str]
    attack_direction_by_half: Mapping[int, str]

    def player_ids(self) -> tuple[PlayerId, ...]:
        return tuple(PlayerId(self.team_id, p.shirt) for p in self.players)

    def line_of(self, shirt: int) -> int | None:
        for p in self.players:
            if p.shirt == shirt:
                return p.line
        return None

    def role_of(self, shirt: int) -> str | None:
        for p in self.players:
            if p.shirt == shirt:
                return p.role
        return None


@dataclass(frozen=True)
class MatchRecord:
    """A full match: rosters, frames, the event stream, derived phases."""

    match_id: str
    teams: tuple[TeamSheet, TeamSheet]
    frames: tuple[FrameSnapshot, ...]
    events: tuple[Event, ...]
    phases: tuple[Phase, ...] = ()
    phase_styles: Mapping[int, str] = field(default_factory=dict)

    def team_sheet(self, team_id: str) -> TeamSheet:
        for sheet in self.teams:
            if sheet.team_id == team_id:
                return sheet
        raise MatchDataError(f"unknown team {team_id!r}")

    def team_ids(self) -> tuple[str, str]:
        return (self.teams[0].team_id, self.teams[1].team_id)

    def opponent_of(self, team_id: str) -> str:
        a, b = self.team_ids()
        if team_id == a:
            return b
        if team_id == b:
            return a
        raise MatchDataError(f"unknown team {team_id!r}")

    def passes(self) -> tuple[Pass, ...]:
        return tuple(e for e in self.events if isinstance(e, Pass))

    def team_phases(self, team_id: str) -> tuple[Phase, ...]:
        self.team_sheet(team_id)
        return tuple(p for p in self.phases if p.team == team_id)


@dataclass(frozen=True)
class PlayerDictionary:
    """Ordered token dictionary over players or pitch regions.

    Entry order is deterministic: players sort by (team, shirt); regions
    enumerate the 3 x 3 grid row-major.  Column ordinals of document vectors
    and rows of the pattern corpus follow this order.
    """

    entries: tuple[PlayerId, ...] | tuple[RegionId, ...]
    kind: str  # "player" | "region"

    def __post_init__(self) -> None:
        if len(set(self.entries)) != len(self.entries):
            raise MatchDataError("dictionary entries must be unique")

    @property
    def index(self) -> dict[PlayerId | RegionId, int]:
        return {entry: i for i, entry in enumerate(self.entries)}

    def __len__(self) -> int:
        return len(self.entries)

    def ordinal(self, entry: PlayerId | RegionId) -> int:
        try:
            return self.index[entry]
        except KeyError:
            raise MatchDataError(f"{entry} not in dictionary") from None


def build_dictionary(roster: Iterable[PlayerId]) -> PlayerDictionary:
    """Build the player dictionary for one squad, ordered (team, shirt)."""
    entries = tuple(sorted(roster))
    if not entries:
        raise MatchDataError("roster is empty")
    if len(set(entries)) != len(entries):
        raise MatchDataError("duplicate roster entries")
    return PlayerDictionary(entries=entries, kind="player")


def region_dictionary() -> PlayerDictionary:
    """The 9-entry region dictionary, row-major over the 3 x 3 tiling."""
    entries = tuple(RegionId(row, col) for row in range(3) for col in range(3))
    return PlayerDictionary(entries=entries, kind="region")


# ---------------------------------------------------------------------------
# Parsing


def _fail(path: str, message: str) -> MatchDataError:
    return MatchDataError(f"{path}: {message}")


def _require(obj: Mapping, key: str, path: str):
    if key not in obj:
        raise _fail(path, f"missing required key {key!r}")
    return obj[key]


def _as_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(path, f"expected a number, got {type(value).__name__}")
    out = float(value)
    if not math.isfinite(out):
        raise _fail(path, "value must be finite")
    return out


def _as_half(value, path: str) -> int:
    if value not in (1, 2):
        raise _fail(path, f"half must be 1 or 2, got {value!r}")
    return int(value)


def _clamp_coord(value: float, limit: float, path: str) -> float:
    if value < -COORD_TOLERANCE or value > limit + COORD_TOLERANCE:
        raise _fail(path, f"coordinate {value} outside pitch bounds [0, {limit}] beyond {COORD_TOLERANCE} m tolerance")
    return min(max(value, 0.0), limit)


def _parse_position(obj, path: str) -> Position:
    if not isinstance(obj, Mapping):
        raise _fail(path, "expected an object with x and y")
    x = _as_number(_require(obj, "x", path), f"{path}.x")
    y = _as_number(_require(obj, "y", path), f"{path}.y")
    return Position(_clamp_coord(x, PITCH_LENGTH, f"{path}.x"), _clamp_coord(y, PITCH_WIDTH, f"{path}.y"))


def _parse_player_ref(obj, path: str, roster: set[PlayerId]) -> PlayerId:
    if not isinstance(obj, Mapping):
        raise _fail(path, "expected an object with team and shirt")
    team = _require(obj, "team", path)
    shirt = _require(obj, "shirt", path)
    if not isinstance(shirt, int) or isinstance(shirt, bool) or shirt < 1:
        raise _fail(f"{path}.shirt", f"shirt must be a positive integer, got {shirt!r}")
    pid = PlayerId(str(team), shirt)
    if pid not in roster:
        raise _fail(path, f"player {pid.label()} not found in any roster")
    return pid


def _parse_team(obj, path: str) -> TeamSheet:
    if not isinstance(obj, Mapping):
        raise _fail(path, "expected a team object")
    team_id = str(_require(obj, "id", path))
    players_raw = _require(obj, "players", path)
    if not isinstance(players_raw, Sequence) or isinstance(players_raw, (str, bytes)):
        raise _fail(f"{path}.players", "expected a list of players")
    players = []
    seen_shirts: set[int] = set()
    for i, p in enumerate(players_raw):
        ppath = f"{path}.players[{i}]"
        shirt = _require(p, "shirt", ppath)
        if not isinstance(shirt, int) or isinstance(shirt, bool) or shirt < 1:
            raise _fail(f"{ppath}.shirt", f"shirt must be a positive integer, got {shirt!r}")
        if shirt in seen_shirts:
            raise _fail(f"{ppath}.shirt", f"duplicate shirt {shirt} in roster {team_id!r}")
        seen_shirts.add(shirt)
        line = p.get("line", 0)
        if not isinstance(line, int) or isinstance(line, bool):
            raise _fail(f"{ppath}.line", "line must be an integer")
        players.append(
            RosterPlayer(
                shirt=shirt,
                name=str(p.get("name", f"#{shirt}")),
                role=str(p.get("role", "")),
                line=line,
            )
        )
    formations: dict[int, str] = {}
    for key, value in (obj.get("formation_by_half") or {}).items():
        half = _as_half(int(key), f"{path}.formation_by_half")
        parse_formation(str(value))  # fail fast on malformed formation strings
        formations[half] = str(value)
    directions: dict[int, str] = {}
    for key, value in (obj.get("attack_direction_by_half") or {}).items():
        half = _as_half(int(key), f"{path}.attack_direction_by_half")
        if value not in ("left", "right"):
            raise _fail(f"{path}.attack_direction_by_half", f"direction must be 'left' or 'right', got {value!r}")
        directions[half] = value
    return TeamSheet(
        team_id=team_id,
        players=tuple(players),
        formation_by_half=formations,
        attack_direction_by_half=directions,
    )


def parse_formation(formation: str) -> tuple[int, ...]:
    """Parse a dash-separated formation string; segments must sum to 10."""
    parts = formation.split("-")
    try:
        segments = tuple(int(p) for p in parts)
    except ValueError:
        raise MatchDataError(f"malformed formation string {formation!r}") from None
    if not segments or any(s < 1 for s in segments):
        raise MatchDataError(f"malformed formation string {formation!r}")
    if sum(segments) != 10:
        raise MatchDataError(f"formation {formation!r} outfield count {sum(segments)} != 10")
    return segments


def parse_match(raw: bytes | str, format: str = "json") -> MatchRecord:
    """Parse and validate a match file.  Phases are absent until segmentation.

    Raises :class:`MatchDataError` with a field path for malformed documents,
    roster reference misses, non-monotone timestamps and out-of-bounds
    coordinates (beyond the 1 m tolerance; closer overshoots are clamped).
    """
    if format != "json":
        raise MatchDataError(f"unsupported format {format!r}")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MatchDataError(f"document is not valid JSON: {exc}") from None
    return parse_match_dict(doc)


def parse_match_dict(doc) -> MatchRecord:
    if not isinstance(doc, Mapping):
        raise MatchDataError("top level: expected an object")
    match_id = str(_require(doc, "match_id", "top level"))
    if not match_id:
        raise MatchDataError("match_id: must be nonempty")

    teams_raw = _require(doc, "teams", "top level")
    if not isinstance(teams_raw, Sequence) or len(teams_raw) != 2:
        raise MatchDataError("teams: expected exactly two team objects")
    teams = tuple(_parse_team(t, f"teams[{i}]") for i, t in enumerate(teams_raw))
    if teams[0].team_id == teams[1].team_id:
        raise MatchDataError("teams: team ids must differ")
    roster = {pid for sheet in teams for pid in sheet.player_ids()}

    frames = []
    prev_key = None
    for i, f in enumerate(doc.get("frames") or []):
        fpath = f"frames[{i}]"
        t = _as_number(_require(f, "t", fpath), f"{fpath}.t")
        half = _as_half(f.get("half", 1), f"{fpath}.half")
        key = (half, t)
        if prev_key is not None and key <= prev_key:
            raise _fail(f"{fpath}.t", "frame timestamps must be strictly increasing within ordering (half, t)")
        prev_key = key
        positions: dict[PlayerId, Position] = {}
        for j, entry in enumerate(_require(f, "positions", fpath)):
            epath = f"{fpath}.positions[{j}]"
            pid = _parse_player_ref(entry, epath, roster)
            if pid in positions:
                raise _fail(epath, f"duplicate position entry for {pid.label()}")
            positions[pid] = _parse_position(entry, epath)
        ball = _parse_position(f["ball"], f"{fpath}.ball") if f.get("ball") is not None else None
        frames.append(FrameSnapshot(t=t, half=half, positions=positions, ball=ball))

    events: list[Event] = []
    prev_key = None
    for i, e in enumerate(doc.get("events") or []):
        epath = f"events[{i}]"
        etype = str(_require(e, "type", epath))
        t = _as_number(_require(e, "t", epath), f"{epath}.t")
        half = _as_half(e.get("half", 1), f"{epath}.half")
        key = (half, t)
        if prev_key is not None and key < prev_key:
            raise _fail(f"{epath}.t", "events must be time-ordered over (half, t)")
        prev_key = key
        if etype == "pass":
            passer = _parse_player_ref(_require(e, "passer", epath), f"{epath}.passer", roster)
            receiver = _parse_player_ref(_require(e, "receiver", epath), f"{epath}.receiver", roster)
            if passer.team != receiver.team:
                raise _fail(epath, f"pass between different teams {passer.team!r} and {receiver.team!r}")
            if passer == receiver:
                raise _fail(epath, f"passer and receiver are both {passer.label()}")
            t_receive = _as_number(_require(e, "t_receive", epath), f"{epath}.t_receive")
            if t_receive < t:
                raise _fail(f"{epath}.t_receive", f"t_receive {t_receive} earlier than t_pass {t}")
            events.append(
                Pass(
                    passer=passer,
                    receiver=receiver,
                    t_pass=t,
                    t_receive=t_receive,
                    origin=_parse_position(_require(e, "origin", epath), f"{epath}.origin"),
                    target=_parse_position(_require(e, "target", epath), f"{epath}.target"),
                    completed=bool(e.get("completed", True)),
                    half=half,
                )
            )
        else:
            if etype == "half-end":
                raise _fail(epath, "half-end events are synthesized, not accepted from input")
            actor = None
            if e.get("actor") is not None:
                actor = _parse_player_ref(e["actor"], f"{epath}.actor", roster)
            events.append(EventKind(tag=etype, t=t, half=half, actor=actor))

    styles: dict[int, str] = {}
    for i, entry in enumerate(doc.get("phase_styles") or []):
        spath = f"phase_styles[{i}]"
        idx = _require(entry, "phase_index", spath)
        style = str(_require(entry, "style", spath))
        if not isinstance(idx, int) or isinstance(idx, bool) or idx < 0:
            raise _fail(f"{spath}.phase_index", "phase_index must be a nonnegative integer")
        if style not in (STYLE_COUNTER, STYLE_BUILDUP):
            raise _fail(f"{spath}.style", f"style must be {STYLE_COUNTER!r} or {STYLE_BUILDUP!r}")
        styles[idx] = style

    return MatchRecord(
        match_id=match_id,
        teams=teams,
        frames=tuple(frames),
        events=tuple(events),
        phases=(),
        phase_styles=styles,
    )


def match_to_dict(match: MatchRecord) -> dict:
    """Serialize a match back to the file schema (inverse of parsing)."""

    def pos(p: Position) -> dict:
        return {"x": p.x, "y": p.y}

    def team(sheet: TeamSheet) -> dict:
        return {
            "id": sheet.team_id,
            "players": [
                {"shirt": p.shirt, "name": p.name, "role": p.role, "line": p.line}
                for p in sheet.players
            ],
            "formation_by_half": {str(h): f for h, f in sorted(sheet.formation_by_half.items())},
            "attack_direction_by_half": {
                str(h): d for h, d in sorted(sheet.attack_direction_by_half.items())
            },
        }

    events = []
    for e in match.events:
        if isinstance(e, Pass):
            events.append(
                {
                    "type": "pass",
                    "t": e.t_pass,
                    "half": e.half,
                    "passer": {"team": e.passer.team, "shirt": e.passer.shirt},
                    "receiver": {"team": e.receiver.team, "shirt": e.receiver.shirt},
                    "t_receive": e.t_receive,
                    "origin": pos(e.origin),
                    "target": pos(e.target),
                    "completed": e.completed,
                }
            )
        else:
            entry = {"type": e.tag, "t": e.t, "half": e.half}
            if e.actor is not None:
                entry["actor"] = {"team": e.actor.team, "shirt": e.actor.shirt}
            events.append(entry)

    frames = []
    for f in match.frames:
        entry = {
            "t": f.t,
            "half": f.half,
            "positions": [
                {"team": pid.team, "shirt": pid.shirt, "x": p.x, "y": p.y}
                for pid, p in sorted(f.positions.items())
            ],
        }
        if f.ball is not None:
            entry["ball"] = pos(f.ball)
        frames.append(entry)

    doc = {
        "match_id": match.match_id,
        "teams": [team(t) for t in match.teams],
        "frames": frames,
        "events": events,
    }
    if match.phase_styles:
        doc["phase_styles"] = [
            {"phase_index": i, "style": s} for i, s in sorted(match.phase_styles.items())
        ]
    return doc


# ---------------------------------------------------------------------------
# Direction normalization


def normalize_direction(match: MatchRecord, target_team: str) -> MatchRecord:
    """Mirror halves so the target team attacks toward increasing x.

    Positions in halves where the metadata says the target team attacks left
    are point-reflected through the pitch center (x -> 105 - x, y -> 68 - y).
    The transformation is purely positional and an involution up to float
    rounding; nothing else about the match is rewritten.
    """
    sheet = match.team_sheet(target_team)
    halves = {e.half for e in match.events} | {f.half for f in match.frames}
    mirror_halves = set()
    for half in sorted(halves):
        direction = sheet.attack_direction_by_half.get(half)
        if direction is None:
            raise MatchDataError(
                f"attacking direction for team {target_team!r} in half {half} is unknown"
            )
        if direction == "left":
            mirror_halves.add(half)
    if not mirror_halves:
        return match

    def flip_pass(p: Pass) -> Pass:
        if p.half not in mirror_halves:
            return p
        return replace(p, origin=p.origin.mirrored(), target=p.target.mirrored())

    frames = tuple(
        f
        if f.half not in mirror_halves
        else FrameSnapshot(
            t=f.t,
            half=f.half,
            positions={pid: pos.mirrored() for pid, pos in f.positions.items()},
            ball=f.ball.mirrored() if f.ball is not None else None,
        )
        for f in match.frames
    )
    events = tuple(flip_pass(e) if isinstance(e, Pass) else e for e in match.events)
    phases = tuple(
        replace(ph, passes=tuple(flip_pass(p) for p in ph.passes)) for ph in match.phases
    )
    return replace(match, frames=frames, events=events, phases=phases)


# ---------------------------------------------------------------------------
# Phase segmentation


def _half_end_event(half: int, t: float) -> EventKind:
    return EventKind(tag="half-end", t=t, half=half)


def segment_phases(match: MatchRecord) -> tuple[Phase, ...]:
    """Split the event stream into possession phases.

    A phase is a maximal run of consecutive passes by one team.  It ends at
    any breaker event (shot, goal, interception, out-of-bounds, foul), at a
    possession-gain by the other team, at the half boundary, or implicitly
    when the other team starts passing; in the implicit case a
    possession-gain event is synthesized as the end event.  Runs with zero
    passes are not phases.  Styles come from the match's ``phase_styles``
    table, defaulting to unlabeled.
    """
    phases: list[Phase] = []
    run: list[Pass] = []

    def close(end_event: EventKind) -> None:
        nonlocal run
        if run:
            idx = len(phases)
            phases.append(
                Phase(
                    id=idx,
                    team=run[0].passer.team,
                    passes=tuple(run),
                    style=match.phase_styles.get(idx, STYLE_UNLABELED),
                    end_event=end_event,
                    half=run[0].half,
                )
            )
        run = []

    current_half: int | None = None
    for event in match.events:
        if current_half is not None and event.half != current_half:
            close(_half_end_event(current_half, run[-1].t_receive if run else 0.0))
        current_half = event.half
        if isinstance(event, Pass):
            if run and event.passer.team != run[0].passer.team:
                # Possession changed hands with no recorded breaker.
                close(
                    EventKind(
                        tag="possession-gain",
                        t=event.t_pass,
                        half=event.half,
                        actor=event.passer,
                    )
                )
            run.append(event)
        else:
            if event.tag in PHASE_BREAKERS:
                close(event)
            elif event.tag == "possession-gain":
                if run and (event.actor is None or event.actor.team != run[0].passer.team):
                    close(event)
    if run:
        close(_half_end_event(current_half if current_half is not None else 1, run[-1].t_receive))
    return tuple(phases)


def segment(match: MatchRecord) -> MatchRecord:
    """Return the match with its derived phase list attached."""
    return replace(match, phases=segment_phases(match))


def infer_counter_attacks(
    match: MatchRecord,
    max_passes: int = 4,
    max_duration: float = 12.0,
    min_advance: float = 30.0,
) -> MatchRecord:
    """Heuristically mark unlabeled phases as counter-attacks.

    A phase qualifies when it has at most ``max_passes`` passes, spans at
    most ``max_duration`` seconds, and the ball advances at least
    ``min_advance`` meters toward the attacking goal (per the team's
    per-half direction metadata; assumed rightward when unknown).  Phases
    marked here carry ``style_inferred=True``; remaining unlabeled phases
    are left untouched.
    """
    updated = []
    for phase in match.phases:
        if phase.style != STYLE_UNLABELED:
            updated.append(phase)
            continue
        direction = match.team_sheet(phase.team).attack_direction_by_half.get(phase.half, "right")
        sign = 1.0 if direction == "right" else -1.0
        advance = sign * (phase.passes[-1].target.x - phase.passes[0].origin.x)
        duration = phase.end_time - phase.start_time
        if phase.pass_count <= max_passes and duration <= max_duration and advance >= min_advance:
            updated.append(replace(phase, style=STYLE_COUNTER, style_inferred=True))
        else:
            updated.append(phase)
    return replace(match, phases=tuple(updated))
