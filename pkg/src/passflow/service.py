"""HTTP service over the detection pipeline with file-backed persistence.

One directory per match under the data directory: the canonical match file
plus one export per fitted model, keyed by (team, k, seed, mode, words).
Matches are parsed and segmented once at ingest; direction normalization is
applied lazily per requested team, since a single stored orientation cannot
serve both teams.  All stored bytes are canonical JSON, so identical runs
and restarts reproduce them exactly.

Configuration comes from the environment: PASSFLOW_PORT, PASSFLOW_DATA_DIR,
PASSFLOW_DEFAULT_K, PASSFLOW_DEFAULT_SEED, PASSFLOW_DETECT_TIMEOUT.  The
numeric defaults are overridable per request.
"""

from __future__ import annotations

import json
import os
import re
import threading
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeout
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .matchdata import (
    MatchDataError,
    MatchRecord,
    PlayerId,
    build_dictionary,
    match_to_dict,
    normalize_direction,
    parse_match,
    region_dictionary,
    segment,
)
from .metrics import MetricsError
from .patterns import (
    DetectionResult,
    NmfConfig,
    PatternError,
    detect_patterns,
    detection_from_dict,
    detection_to_json,
    phase_tokens,
)
from .seqmine import (
    MiningError,
    phase_sequences,
    prefixspan,
    role_sequences,
)
from .report import (
    PATTERN_SORTS,
    flow_payload,
    parse_span,
    patterns_payload,
    phase_detail_payload,
    player_stats_payload,
)

# Match ids and model keys become directory entries; keep them path-safe.
_SAFE_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")

DEFAULT_PORT = 8008
DEFAULT_K = 3
DEFAULT_SEED = 0
DEFAULT_DETECT_TIMEOUT = 60.0

MINE_MODES = ("player", "role", "region")


def _canonical(doc: dict) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class MatchStore:
    """File-backed store: data_dir/{match_id}/match.json + models/*.json."""

    def __init__(self, root: Path):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)
        self._records: dict[str, MatchRecord] = {}
        self._bytes: dict[str, bytes] = {}
        self._normalized: dict[tuple[str, str], MatchRecord] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry = threading.Lock()

    def _lock(self, match_id: str) -> threading.Lock:
        with self._registry:
            return self._locks.setdefault(match_id, threading.Lock())

    def _match_dir(self, match_id: str) -> Path:
        return self.root / match_id

    def match_ids(self) -> list[str]:
        on_disk = {p.name for p in self.root.iterdir() if (p / "match.json").exists()}
        return sorted(on_disk | set(self._records))

    def put_match(self, body: bytes) -> tuple[str, bool]:
        """Persist a match file; returns (match_id, created).

        Identical re-uploads are no-ops; a different file with the same id
        conflicts.
        """
        record = segment(parse_match(body))
        match_id = record.match_id
        if not _SAFE_NAME.match(match_id):
            raise MatchDataError(
                f"match_id {match_id!r} must match {_SAFE_NAME.pattern} to be storable"
            )
        canonical = _canonical(match_to_dict(record))
        with self._lock(match_id):
            existing = self._load_bytes(match_id)
            if existing is not None:
                if existing == canonical:
                    return match_id, False
                raise HTTPException(
                    409, f"match {match_id!r} already stored with different content"
                )
            mdir = self._match_dir(match_id)
            (mdir / "models").mkdir(parents=True, exist_ok=True)
            _atomic_write(mdir / "match.json", canonical)
            self._bytes[match_id] = canonical
            self._records[match_id] = record
        return match_id, True

    def _load_bytes(self, match_id: str) -> bytes | None:
        if match_id in self._bytes:
            return self._bytes[match_id]
        path = self._match_dir(match_id) / "match.json"
        if not path.exists():
            return None
        data = path.read_bytes()
        self._bytes[match_id] = data
        return data

    def get_match(self, match_id: str) -> MatchRecord:
        if match_id in self._records:
            return self._records[match_id]
        data = self._load_bytes(match_id) if _SAFE_NAME.match(match_id) else None
        if data is None:
            raise HTTPException(404, f"unknown match {match_id!r}")
        record = segment(parse_match(data))
        self._records[match_id] = record
        return record

    def get_normalized(self, match_id: str, team: str) -> MatchRecord:
        key = (match_id, team)
        if key not in self._normalized:
            self._normalized[key] = normalize_direction(self.get_match(match_id), team)
        return self._normalized[key]

    # -- models ------------------------------------------------------------

    def model_path(self, match_id: str, key: str) -> Path:
        return self._match_dir(match_id) / "models" / f"{key}.json"

    def model_keys(self, match_id: str) -> list[str]:
        self.get_match(match_id)
        mdir = self._match_dir(match_id) / "models"
        if not mdir.exists():
            return []
        return sorted(p.stem for p in mdir.glob("*.json"))

    def save_model(self, match_id: str, key: str, data: bytes) -> None:
        path = self.model_path(match_id, key)
        path.parent.mkdir(parents=True, exist_ok=True)
        _atomic_write(path, data)

    def load_model_bytes(self, match_id: str, key: str) -> bytes:
        self.get_match(match_id)
        path = self.model_path(match_id, key)
        if not _SAFE_NAME.match(key) or not path.exists():
            raise HTTPException(404, f"unknown model {key!r} for match {match_id!r}")
        return path.read_bytes()

    def load_detection(self, match_id: str, key: str) -> tuple[DetectionResult, dict]:
        doc = json.loads(self.load_model_bytes(match_id, key))
        return detection_from_dict(doc), doc


def model_key(team: str, k: int, seed: int, mode: str, words: str) -> str:
    return f"{team}-k{k}-seed{seed}-{mode}-{words}"


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    """Build the service app over a data directory (env default)."""
    root = Path(data_dir or os.environ.get("PASSFLOW_DATA_DIR", "./passflow-data"))
    default_k = int(os.environ.get("PASSFLOW_DEFAULT_K", DEFAULT_K))
    default_seed = int(os.environ.get("PASSFLOW_DEFAULT_SEED", DEFAULT_SEED))
    detect_timeout = float(
        os.environ.get("PASSFLOW_DETECT_TIMEOUT", DEFAULT_DETECT_TIMEOUT)
    )
    store = MatchStore(root)
    app = FastAPI(title="passflow", version="0.1.0")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def _check_team(match: MatchRecord, team: str) -> str:
        if team not in match.team_ids():
            raise HTTPException(404, f"unknown team {team!r}")
        return team

    @app.exception_handler(MatchDataError)
    def _matchdata_error(_req: Request, exc: MatchDataError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(PatternError)
    def _pattern_error(_req: Request, exc: PatternError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(MetricsError)
    def _metrics_error(_req: Request, exc: MetricsError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(MiningError)
    def _mining_error(_req: Request, exc: MiningError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/matches")
    def list_matches():
        return {"matches": store.match_ids()}

    @app.post("/matches")
    async def ingest(request: Request):
        body = await request.body()
        try:
            match_id, created = store.put_match(body)
        except MatchDataError as exc:
            raise HTTPException(400, str(exc)) from None
        return JSONResponse(
            status_code=201 if created else 200,
            content={"match_id": match_id, "created": created},
        )

    @app.post("/matches/{match_id}/detect")
    def detect(
        match_id: str,
        team: str,
        k: int | None = None,
        seed: int | None = None,
        mode: str = "binary",
        words: str = "player",
        corpus: str = "single",
    ):
        match = store.get_match(match_id)
        _check_team(match, team)
        if corpus == "multi":
            raise HTTPException(501, "multi-match corpora are reserved but not implemented")
        if corpus != "single":
            raise HTTPException(422, f"corpus must be 'single' or 'multi', got {corpus!r}")
        if mode not in ("binary", "count"):
            raise HTTPException(422, f"mode must be 'binary' or 'count', got {mode!r}")
        if words not in ("player", "region"):
            raise HTTPException(422, f"words must be 'player' or 'region', got {words!r}")
        k = default_k if k is None else k
        seed = default_seed if seed is None else seed
        if k < 1:
            raise HTTPException(422, f"k must be a positive integer, got {k}")
        key = model_key(team, k, seed, mode, words)
        with store._lock(match_id):
            if store.model_path(match_id, key).exists():
                return {"model": key, "cached": True}
            config = NmfConfig(seed=seed)
            pool = ThreadPoolExecutor(max_workers=1)
            future = pool.submit(detect_patterns, match, team, k, config, mode, words)
            try:
                result = future.result(timeout=detect_timeout)
            except FutureTimeout:
                raise HTTPException(
                    504, f"detection exceeded {detect_timeout} s"
                ) from None
            except PatternError as exc:
                raise HTTPException(422, str(exc)) from None
            finally:
                # Don't block the response on a runaway fit.
                pool.shutdown(wait=False, cancel_futures=True)
            store.save_model(
                match_id, key, detection_to_json(result, match_id, team, mode, words)
            )
        return {"model": key, "cached": False}

    @app.get("/matches/{match_id}/models")
    def models(match_id: str):
        return {"models": store.model_keys(match_id)}

    @app.get("/matches/{match_id}/models/{key}")
    def model_export(match_id: str, key: str):
        return Response(
            content=store.load_model_bytes(match_id, key),
            media_type="application/json",
        )

    def _load_for_model(match_id: str, model: str, team: str | None):
        detection, doc = store.load_detection(match_id, model)
        model_team = doc["team"]
        if team is not None and team != model_team:
            raise HTTPException(
                422, f"model {model!r} belongs to team {model_team!r}, not {team!r}"
            )
        normalized = store.get_normalized(match_id, model_team)
        return detection, model_team, normalized

    @app.get("/matches/{match_id}/patterns")
    def patterns(match_id: str, model: str, sort: str = "frequency", team: str | None = None):
        if sort not in PATTERN_SORTS:
            raise HTTPException(422, f"sort must be one of {PATTERN_SORTS}, got {sort!r}")
        detection, model_team, normalized = _load_for_model(match_id, model, team)
        return patterns_payload(normalized, detection, model_team, sort)

    @app.get("/matches/{match_id}/flow")
    def flow(match_id: str, model: str, team: str | None = None):
        detection, model_team, normalized = _load_for_model(match_id, model, team)
        return flow_payload(normalized, detection, model_team)

    @app.get("/matches/{match_id}/phases/{pid}")
    def phase_detail(match_id: str, pid: int, team: str | None = None):
        match = store.get_match(match_id)
        if not 0 <= pid < len(match.phases):
            raise HTTPException(404, f"phase {pid} out of range")
        phase_team = match.phases[pid].team
        if team is not None and team != phase_team:
            raise HTTPException(404, f"phase {pid} belongs to team {phase_team!r}")
        normalized = store.get_normalized(match_id, phase_team)
        return phase_detail_payload(normalized, normalized.phases[pid])

    @app.get("/matches/{match_id}/players/{player}/stats")
    def player_stats_endpoint(match_id: str, player: str, span: str | None = None):
        match = store.get_match(match_id)
        try:
            team, shirt = player.rsplit(":", 1)
            pid = PlayerId(team=team, shirt=int(shirt))
        except ValueError:
            raise HTTPException(422, f"player must be 'team:shirt', got {player!r}") from None
        roster = {p for sheet in match.teams for p in sheet.player_ids()}
        if pid not in roster:
            raise HTTPException(404, f"unknown player {player!r}")
        try:
            parse_span(span)
        except MatchDataError as exc:
            raise HTTPException(422, str(exc)) from None
        try:
            return player_stats_payload(match, pid, span)
        except MetricsError as exc:
            raise HTTPException(422, str(exc)) from None

    @app.post("/matches/{match_id}/mine")
    def mine(
        match_id: str,
        team: str,
        min_support: int = 2,
        max_len: int = 8,
        mode: str = "player",
    ):
        match = store.get_match(match_id)
        _check_team(match, team)
        if min_support < 1:
            raise HTTPException(422, f"min_support must be >= 1, got {min_support}")
        if max_len < 1:
            raise HTTPException(422, f"max_len must be >= 1, got {max_len}")
        if mode not in MINE_MODES:
            raise HTTPException(422, f"mode must be one of {MINE_MODES}, got {mode!r}")
        phases = match.team_phases(team)
        if not phases:
            raise HTTPException(422, f"no phases for team {team!r}")
        dictionary = build_dictionary(match.team_sheet(team).player_ids())
        if mode == "region":
            normalized = store.get_normalized(match_id, team)
            rdict = region_dictionary()
            sequences = []
            for phase in normalized.team_phases(team):
                toks = phase_tokens(phase, rdict)
                sequences.append(
                    tuple(t for i, t in enumerate(toks) if i == 0 or t != toks[i - 1])
                )
            labels = [entry.label() for entry in rdict.entries]
        elif mode == "role":
            sheet = match.team_sheet(team)
            base = phase_sequences(phases, dictionary)
            sequences, roles = role_sequences(
                base, dictionary, lambda p: sheet.role_of(p.shirt) or "?"
            )
            labels = list(roles)
        else:
            sequences = phase_sequences(phases, dictionary)
            labels = [entry.label() for entry in dictionary.entries]
        try:
            mined = prefixspan(sequences, min_support, max_len)
        except MiningError as exc:
            raise HTTPException(422, str(exc)) from None
        return {
            "team": team,
            "mode": mode,
            "min_support": min_support,
            "max_len": max_len,
            "patterns": [
                {
                    "tokens": [labels[t] for t in p.tokens],
                    "support": p.support,
                    "length": p.length,
                }
                for p in mined
            ],
        }

    return app


def run_server(
    data_dir: str | Path | None = None,
    host: str = "127.0.0.1",
    port: int | None = None,
) -> None:
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    if port is None:
        port = int(os.environ.get("PASSFLOW_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(data_dir), host=host, port=port)
