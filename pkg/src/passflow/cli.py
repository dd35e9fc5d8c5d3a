"""Batch driver: ingest, detect, mine, export, serve.

Every subcommand is deterministic given its inputs and flags; exports are
canonical bytes, so repeated runs produce identical files.  Exit codes:
0 success, 1 domain error (invalid data, degenerate fits), 2 usage error
(bad flags, missing paths).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .matchdata import (
    MatchDataError,
    MatchRecord,
    STYLE_UNLABELED,
    build_dictionary,
    infer_counter_attacks,
    match_to_dict,
    normalize_direction,
    parse_match,
    region_dictionary,
    segment,
)
from .metrics import MetricsError
from .patterns import (
    NmfConfig,
    PatternError,
    detect_patterns,
    detection_to_json,
    phase_tokens,
)
from .report import (
    flow_csv,
    flow_payload,
    metrics_csv,
    patterns_csv,
    patterns_payload,
    to_json_bytes,
)
from .seqmine import (
    MiningError,
    patterns_to_csv,
    phase_sequences,
    prefixspan,
    role_sequences,
)
from .synth import match_bytes


class UsageError(Exception):
    """Bad paths or flag combinations caught before any work starts."""


def _read_input(path_str: str) -> bytes:
    path = Path(path_str)
    if not path.is_file():
        raise UsageError(f"input path {path_str!r} does not exist")
    return path.read_bytes()


def _load(args) -> MatchRecord:
    record = segment(parse_match(_read_input(args.input)))
    if getattr(args, "infer_styles", False):
        record = infer_counter_attacks(record)
        styles = {
            p.id: p.style for p in record.phases if p.style != STYLE_UNLABELED
        }
        record = replace(record, phase_styles=styles)
    return record


def _team_phases(record: MatchRecord, team: str):
    phases = record.team_phases(team)
    if not phases:
        raise MatchDataError(f"no phases for team {team!r}")
    return phases


def _cmd_ingest(args) -> int:
    record = _load(args)
    shown = record
    if args.team:
        shown = normalize_direction(record, args.team)
    if args.out:
        Path(args.out).write_bytes(match_bytes(match_to_dict(shown)))
    n_passes = len(record.passes())
    print(
        f"{record.match_id}: teams {', '.join(record.team_ids())}; "
        f"{len(record.frames)} frames, {n_passes} passes, {len(record.phases)} phases"
    )
    for team in record.team_ids():
        print(f"  {team}: {len(record.team_phases(team))} phases")
    return 0


def _cmd_detect(args) -> int:
    record = _load(args)
    config = NmfConfig(max_iters=args.max_iters, tol=args.tol, seed=args.seed)
    result = detect_patterns(record, args.team, args.k, config, args.mode, args.words)
    data = detection_to_json(result, record.match_id, args.team, args.mode, args.words)
    Path(args.out).write_bytes(data)
    converged = result.model.converged if result.model else True
    print(
        f"wrote {args.out}: {len(result.patterns)} patterns "
        f"({len(result.assignments)} phases assigned, converged={converged})"
    )
    return 0


def _mine_sequences(record: MatchRecord, team: str, mode: str):
    phases = _team_phases(record, team)
    dictionary = build_dictionary(record.team_sheet(team).player_ids())
    if mode == "region":
        normalized = normalize_direction(record, team)
        rdict = region_dictionary()
        sequences = []
        for phase in normalized.team_phases(team):
            toks = phase_tokens(phase, rdict)
            sequences.append(
                tuple(t for i, t in enumerate(toks) if i == 0 or t != toks[i - 1])
            )
        labels = [e.label() for e in rdict.entries]
    elif mode == "role":
        sheet = record.team_sheet(team)
        base = phase_sequences(phases, dictionary)
        sequences, labels = role_sequences(
            base, dictionary, lambda p: sheet.role_of(p.shirt) or "?"
        )
    else:
        sequences = phase_sequences(phases, dictionary)
        labels = [e.label() for e in dictionary.entries]
    return sequences, labels


def _cmd_mine(args) -> int:
    record = _load(args)
    sequences, labels = _mine_sequences(record, args.team, args.mode)
    mined = prefixspan(sequences, args.min_support, args.max_len)
    text = patterns_to_csv(mined, labels)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}: {len(mined)} patterns")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_export(args) -> int:
    record = _load(args)
    _team_phases(record, args.team)
    normalized = normalize_direction(record, args.team)
    config = NmfConfig(max_iters=args.max_iters, tol=args.tol, seed=args.seed)
    result = detect_patterns(record, args.team, args.k, config, args.mode, args.words)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    flow = flow_payload(normalized, result, args.team)
    patterns = patterns_payload(normalized, result, args.team, args.sort)
    files = {
        "model.json": detection_to_json(
            result, record.match_id, args.team, args.mode, args.words
        ),
        "flow.json": to_json_bytes(flow),
        "flow.csv": flow_csv(flow).encode(),
        "patterns.json": to_json_bytes(patterns),
        "patterns.csv": patterns_csv(patterns).encode(),
        "metrics.csv": metrics_csv(flow).encode(),
    }
    for name, data in files.items():
        (out_dir / name).write_bytes(data)
    print(f"wrote {len(files)} files to {out_dir}")
    return 0


def _cmd_serve(args) -> int:
    from .service import run_server

    run_server(data_dir=args.data_dir, host=args.host, port=args.port)
    return 0


def _add_common_detect_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--team", required=True, help="team id to analyze")
    sub.add_argument("--k", type=int, default=3, help="number of build-up patterns")
    sub.add_argument("--seed", type=int, default=0, help="factorization seed")
    sub.add_argument("--tol", type=float, default=1e-6, help="relative-decrease stop")
    sub.add_argument("--max-iters", type=int, default=500, help="iteration cap")
    sub.add_argument(
        "--mode", choices=("binary", "count"), default="binary", help="document mode"
    )
    sub.add_argument(
        "--words", choices=("player", "region"), default="player", help="token kind"
    )
    sub.add_argument(
        "--infer-styles",
        action="store_true",
        help="mark unlabeled fast goalward phases as counter-attacks",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="passflow",
        description="Passing-pattern detection and tactical context metrics",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("ingest", help="validate and normalize a match file")
    p.add_argument("--in", dest="input", required=True, help="match file path")
    p.add_argument("--team", help="direction-normalize for this team")
    p.add_argument("--out", help="write the normalized match file here")
    p.add_argument("--infer-styles", action="store_true")
    p.set_defaults(func=_cmd_ingest)

    p = subs.add_parser("detect", help="fit patterns and write a model export")
    p.add_argument("--in", dest="input", required=True, help="match file path")
    _add_common_detect_flags(p)
    p.add_argument("--out", required=True, help="model export path")
    p.set_defaults(func=_cmd_detect)

    p = subs.add_parser("mine", help="mine frequent pass sequences")
    p.add_argument("--in", dest="input", required=True, help="match file path")
    p.add_argument("--team", required=True)
    p.add_argument("--min-support", type=int, default=2)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--mode", choices=("player", "role", "region"), default="player")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=_cmd_mine)

    p = subs.add_parser("export", help="write flow/pattern/metric tables")
    p.add_argument("--in", dest="input", required=True, help="match file path")
    _add_common_detect_flags(p)
    p.add_argument(
        "--sort", choices=("frequency", "shootings"), default="frequency"
    )
    p.add_argument("--out-dir", required=True, help="directory for the tables")
    p.set_defaults(func=_cmd_export)

    p = subs.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--data-dir", default=None)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (MatchDataError, PatternError, MetricsError, MiningError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
