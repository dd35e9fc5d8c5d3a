"""Latent passing-pattern detection via nonnegative matrix factorization.

Each possession phase becomes a bag-of-tokens document over the player
dictionary (who touched the ball, order discarded); the documents form a
nonnegative corpus X with one row per dictionary entry and one column per
phase.  Factorizing X ~ W @ H with W, H >= 0 yields k topics: the columns
of W are participation profiles over players, and each phase is assigned to
the topic with the largest share in its column of H.  A passing pattern is
such a profile, max-normalized into [0, 1], with key players extracted by
threshold.

Counter-attack phases are kept out of the factorization and reported as one
aggregate pattern, since their fast, direct character would otherwise
dominate the possession-based topics.

The solver is deliberately plain: seeded uniform initialization and
multiplicative updates on the Frobenius objective, which makes runs
bit-reproducible and the objective trace provably non-increasing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matchdata import (
    MatchRecord,
    Phase,
    PlayerDictionary,
    PlayerId,
    RegionId,
    STYLE_COUNTER,
    build_dictionary,
    region_dictionary,
)
from .metrics import spatial_region

EPSILON = 1e-12  # damping added to update denominators

DEFAULT_THETA = 0.5  # key-player extraction threshold (fraction of column max)


class PatternError(ValueError):
    """Raised for invalid corpora, degenerate fits, or bad solver arguments."""


@dataclass(frozen=True)
class DocumentVector:
    """Bag-of-tokens encoding of one phase over a dictionary."""

    phase_id: int
    counts: np.ndarray

    def participants(self) -> np.ndarray:
        return np.flatnonzero(self.counts)


@dataclass(frozen=True)
class Corpus:
    """Nonnegative term-by-phase matrix: m dictionary entries x n phases."""

    X: np.ndarray
    dictionary: PlayerDictionary
    phase_ids: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class NmfConfig:
    max_iters: int = 500
    tol: float = 1e-6
    seed: int = 0


@dataclass(frozen=True)
class PassingPattern:
    """One detected pattern: a participation weight per dictionary entry.

    Weights are max-normalized into [0, 1]; key players are the entries at
    or above the extraction threshold relative to the column maximum.
    """

    pattern_id: int
    weights: np.ndarray
    key_players: tuple[PlayerId, ...] | tuple[RegionId, ...]
    frequency: int
    style: str


@dataclass
class PatternModel:
    """A fitted factorization with its diagnostics and phase assignments."""

    W: np.ndarray
    H: np.ndarray
    k: int
    objective_trace: np.ndarray
    assignments: dict[int, int]
    seed: int
    converged: bool
    dictionary: PlayerDictionary
    phase_ids: tuple[int, ...]
    config: NmfConfig
    degenerate_phases: tuple[int, ...] = ()


def _tokens(phase: Phase, dictionary: PlayerDictionary) -> list[int]:
    """Token sequence for one phase: passer then receiver of each pass.

    Region dictionaries tokenize the origin and target cells instead of
    the players.
    """
    ordinals = []
    if dictionary.kind == "region":
        for p in phase.passes:
            ordinals.append(dictionary.ordinal(spatial_region(p.origin)))
            ordinals.append(dictionary.ordinal(spatial_region(p.target)))
    else:
        for p in phase.passes:
            ordinals.append(dictionary.ordinal(p.passer))
            ordinals.append(dictionary.ordinal(p.receiver))
    return ordinals


def phase_tokens(phase: Phase, dictionary: PlayerDictionary) -> list[int]:
    """Public view of the token rule, uncollapsed (one token per endpoint)."""
    return _tokens(phase, dictionary)


def phase_to_document(
    phase: Phase, dictionary: PlayerDictionary, mode: str = "binary"
) -> DocumentVector:
    """Encode a phase as a presence (binary) or occurrence-count vector.

    tf-idf reweighting is deliberately never applied.
    """
    if mode not in ("binary", "count"):
        raise PatternError(f"unknown document mode {mode!r}")
    counts = np.zeros(len(dictionary), dtype=float)
    for ordinal in _tokens(phase, dictionary):
        counts[ordinal] += 1.0
    if mode == "binary":
        counts = (counts > 0).astype(float)
    return DocumentVector(phase_id=phase.id, counts=counts)


def build_corpus(
    phases: Sequence[Phase],
    dictionary: PlayerDictionary,
    mode: str = "binary",
    style_filter: str | None = None,
) -> Corpus:
    """Stack phase documents into a corpus, columns in phase order.

    ``style_filter="build-up"`` drops counter-attack phases before fitting;
    unlabeled phases are kept so unlabeled data stays usable.
    """
    teams = {p.team for p in phases}
    if len(teams) > 1:
        raise PatternError(f"corpus phases must come from one team, got {sorted(teams)}")
    if style_filter == "build-up":
        kept = [p for p in phases if p.style != STYLE_COUNTER]
    elif style_filter == "counter-attack":
        kept = [p for p in phases if p.style == STYLE_COUNTER]
    elif style_filter is None:
        kept = list(phases)
    else:
        raise PatternError(f"unknown style filter {style_filter!r}")
    if not kept:
        raise PatternError("no phases left after style filtering")
    docs = [phase_to_document(p, dictionary, mode) for p in kept]
    X = np.column_stack([d.counts for d in docs])
    return Corpus(X=X, dictionary=dictionary, phase_ids=tuple(p.id for p in kept))


def nmf_fit(corpus: Corpus, k: int, config: NmfConfig = NmfConfig()) -> PatternModel:
    """Factorize the corpus with seeded multiplicative updates.

    Iteration stops when the relative objective decrease falls below
    ``config.tol`` or after ``config.max_iters`` rounds; ``converged``
    records which.  After fitting, each column of W is max-normalized into
    [0, 1] with the compensating scale folded into H, leaving the product
    W @ H unchanged.
    """
    X = corpus.X
    m, n = X.shape
    if not 1 <= k <= min(m, n):
        raise PatternError(f"k must satisfy 1 <= k <= min({m}, {n}), got {k}")
    if not np.any(X):
        raise PatternError("corpus is all zeros")
    if np.any(X < 0):
        raise PatternError("corpus must be nonnegative")

    rng = np.random.default_rng(config.seed)
    W = rng.random((m, k))
    H = rng.random((k, n))

    trace = [float(np.linalg.norm(X - W @ H))]
    converged = False
    for _ in range(config.max_iters):
        H *= (W.T @ X) / (W.T @ W @ H + EPSILON)
        W *= (X @ H.T) / (W @ (H @ H.T) + EPSILON)
        objective = float(np.linalg.norm(X - W @ H))
        previous = trace[-1]
        trace.append(objective)
        if previous == 0.0 or (previous - objective) / previous < config.tol:
            converged = True
            break

    # Max-normalize topic columns for extraction; W @ H is preserved.
    scale = W.max(axis=0)
    nonzero = scale > 0
    W[:, nonzero] /= scale[nonzero]
    H[nonzero, :] *= scale[nonzero, None]

    assignments, degenerate = _argmax_assignments(H, corpus.phase_ids)
    return PatternModel(
        W=W,
        H=H,
        k=k,
        objective_trace=np.array(trace),
        assignments=assignments,
        seed=config.seed,
        converged=converged,
        dictionary=corpus.dictionary,
        phase_ids=corpus.phase_ids,
        config=config,
        degenerate_phases=degenerate,
    )


def _argmax_assignments(
    H: np.ndarray, phase_ids: Sequence[int]
) -> tuple[dict[int, int], tuple[int, ...]]:
    assignments: dict[int, int] = {}
    degenerate: list[int] = []
    top = np.argmax(H, axis=0)  # ties resolve to the lowest pattern index
    for j, phase_id in enumerate(phase_ids):
        assignments[phase_id] = int(top[j])
        if not np.any(H[:, j]):
            degenerate.append(phase_id)
    return assignments, tuple(degenerate)


def assign_phases(model: PatternModel) -> dict[int, int]:
    """Phase-to-pattern map: the argmax row of each phase's H column."""
    assignments, _ = _argmax_assignments(model.H, model.phase_ids)
    return assignments


def extract_pattern(
    model: PatternModel, pattern_id: int, theta: float = DEFAULT_THETA
) -> PassingPattern:
    """Turn one topic column into a pattern with key players.

    Key players are the dictionary entries whose weight reaches ``theta``
    times the column maximum.  Patterns may share players.  An all-zero
    column signals a degenerate fit and raises.
    """
    if not 0 <= pattern_id < model.k:
        raise PatternError(f"pattern_id {pattern_id} out of range for k={model.k}")
    column = model.W[:, pattern_id]
    top = column.max()
    if top <= 0.0:
        raise PatternError(f"pattern {pattern_id} has an all-zero topic column (degenerate fit)")
    keys = tuple(
        entry
        for entry, weight in zip(model.dictionary.entries, column)
        if weight >= theta * top
    )
    frequency = sum(1 for p in model.assignments.values() if p == pattern_id)
    return PassingPattern(
        pattern_id=pattern_id,
        weights=column.copy(),
        key_players=keys,
        frequency=frequency,
        style="build-up",
    )


# ---------------------------------------------------------------------------
# Full detection: build-up topics plus the counter-attack aggregate


@dataclass
class DetectionResult:
    """Patterns and phase assignments for one team of one match."""

    patterns: list[PassingPattern]
    assignments: dict[int, int]
    model: PatternModel | None
    dictionary: PlayerDictionary
    counter_pattern_id: int | None
    counter_phase_ids: tuple[int, ...]


def counter_attack_pattern(
    phases: Sequence[Phase],
    dictionary: PlayerDictionary,
    pattern_id: int,
    theta: float = DEFAULT_THETA,
) -> PassingPattern:
    """Aggregate all counter-attack phases into one synthetic pattern.

    Weights are the per-entry participation frequencies across the phases
    (number of phases the entry appears in), max-normalized into [0, 1].
    """
    if not phases:
        raise PatternError("no counter-attack phases to aggregate")
    freq = np.zeros(len(dictionary), dtype=float)
    for phase in phases:
        freq += phase_to_document(phase, dictionary, "binary").counts
    top = freq.max()
    weights = freq / top if top > 0 else freq
    keys = tuple(
        entry for entry, w in zip(dictionary.entries, weights) if top > 0 and w >= theta
    )
    return PassingPattern(
        pattern_id=pattern_id,
        weights=weights,
        key_players=keys,
        frequency=len(phases),
        style=STYLE_COUNTER,
    )


def detect_patterns(
    match: MatchRecord,
    team: str,
    k: int,
    config: NmfConfig = NmfConfig(),
    mode: str = "binary",
    words: str = "player",
    theta: float = DEFAULT_THETA,
) -> DetectionResult:
    """Detect a team's passing patterns in a segmented, normalized match.

    Fits NMF on the build-up phases only and, when counter-attack phases
    exist, appends one aggregate counter-attack pattern.  Every phase of
    the team receives an assignment.
    """
    if words == "player":
        dictionary = build_dictionary(match.team_sheet(team).player_ids())
    elif words == "region":
        dictionary = region_dictionary()
    else:
        raise PatternError(f"unknown word mode {words!r}")
    phases = match.team_phases(team)
    if not phases:
        raise PatternError(f"match has no phases for team {team!r}")
    counters = [p for p in phases if p.style == STYLE_COUNTER]
    buildups = [p for p in phases if p.style != STYLE_COUNTER]

    patterns: list[PassingPattern] = []
    assignments: dict[int, int] = {}
    model: PatternModel | None = None
    if buildups:
        corpus = build_corpus(phases, dictionary, mode, style_filter="build-up")
        model = nmf_fit(corpus, k, config)
        patterns = [extract_pattern(model, i, theta) for i in range(k)]
        assignments.update(model.assignments)

    counter_id: int | None = None
    counter_ids: tuple[int, ...] = ()
    if counters:
        counter_id = len(patterns)
        counter_ids = tuple(p.id for p in counters)
        patterns.append(counter_attack_pattern(counters, dictionary, counter_id, theta))
        for p in counters:
            assignments[p.id] = counter_id

    return DetectionResult(
        patterns=patterns,
        assignments=assignments,
        model=model,
        dictionary=dictionary,
        counter_pattern_id=counter_id,
        counter_phase_ids=counter_ids,
    )


# ---------------------------------------------------------------------------
# Model export / reload


def _entry_to_json(entry: PlayerId | RegionId) -> dict:
    if isinstance(entry, PlayerId):
        return {"team": entry.team, "shirt": entry.shirt}
    return {"row": entry.row, "col": entry.col}


def _entry_from_json(obj: dict) -> PlayerId | RegionId:
    if "shirt" in obj:
        return PlayerId(team=obj["team"], shirt=obj["shirt"])
    return RegionId(row=obj["row"], col=obj["col"])


def detection_to_dict(result: DetectionResult, match_id: str, team: str, mode: str, words: str) -> dict:
    """Export a detection to a JSON-serializable document.

    Holds everything needed to reload without refitting: dictionary order,
    the factor matrices, solver config and trace, and all assignments.
    """
    model = result.model
    doc = {
        "schema": "passflow-model/1",
        "match_id": match_id,
        "team": team,
        "mode": mode,
        "words": words,
        "dictionary": [_entry_to_json(e) for e in result.dictionary.entries],
        "dictionary_kind": result.dictionary.kind,
        "assignments": {str(pid): pat for pid, pat in sorted(result.assignments.items())},
        "counter_pattern_id": result.counter_pattern_id,
        "counter_phase_ids": list(result.counter_phase_ids),
        "patterns": [
            {
                "pattern_id": p.pattern_id,
                "style": p.style,
                "frequency": p.frequency,
                "weights": [float(w) for w in p.weights],
                "key_players": [_entry_to_json(e) for e in p.key_players],
            }
            for p in result.patterns
        ],
        "model": None,
    }
    if model is not None:
        doc["model"] = {
            "k": model.k,
            "seed": model.seed,
            "converged": model.converged,
            "config": {
                "max_iters": model.config.max_iters,
                "tol": model.config.tol,
                "seed": model.config.seed,
            },
            "W": [[float(v) for v in row] for row in model.W],
            "H": [[float(v) for v in row] for row in model.H],
            "objective_trace": [float(v) for v in model.objective_trace],
            "phase_ids": list(model.phase_ids),
            "degenerate_phases": list(model.degenerate_phases),
        }
    return doc


def detection_to_json(result: DetectionResult, match_id: str, team: str, mode: str, words: str) -> bytes:
    """Canonical bytes for a detection export (stable across identical runs)."""
    doc = detection_to_dict(result, match_id, team, mode, words)
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()


def detection_from_dict(doc: dict) -> DetectionResult:
    """Reload a detection export produced by :func:`detection_to_dict`."""
    if doc.get("schema") != "passflow-model/1":
        raise PatternError(f"unrecognized model schema {doc.get('schema')!r}")
    entries = tuple(_entry_from_json(e) for e in doc["dictionary"])
    dictionary = PlayerDictionary(entries=entries, kind=doc["dictionary_kind"])
    assignments = {int(pid): int(pat) for pid, pat in doc["assignments"].items()}
    patterns = [
        PassingPattern(
            pattern_id=p["pattern_id"],
            weights=np.array(p["weights"], dtype=float),
            key_players=tuple(_entry_from_json(e) for e in p["key_players"]),
            frequency=p["frequency"],
            style=p["style"],
        )
        for p in doc["patterns"]
    ]
    model = None
    raw = doc.get("model")
    if raw is not None:
        config = NmfConfig(
            max_iters=raw["config"]["max_iters"],
            tol=raw["config"]["tol"],
            seed=raw["config"]["seed"],
        )
        phase_ids = tuple(raw["phase_ids"])
        model = PatternModel(
            W=np.array(raw["W"], dtype=float),
            H=np.array(raw["H"], dtype=float),
            k=raw["k"],
            objective_trace=np.array(raw["objective_trace"], dtype=float),
            assignments={pid: assignments[pid] for pid in phase_ids},
            seed=raw["seed"],
            converged=raw["converged"],
            dictionary=dictionary,
            phase_ids=phase_ids,
            config=config,
            degenerate_phases=tuple(raw["degenerate_phases"]),
        )
    counter_id = doc.get("counter_pattern_id")
    return DetectionResult(
        patterns=patterns,
        assignments=assignments,
        model=model,
        dictionary=dictionary,
        counter_pattern_id=counter_id,
        counter_phase_ids=tuple(doc.get("counter_phase_ids") or ()),
    )
