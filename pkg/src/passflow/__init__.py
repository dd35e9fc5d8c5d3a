"""Latent passing-pattern detection and tactical context metrics.

The pipeline: parse a match file, segment it into possession phases,
normalize attacking direction, turn phases into bag-of-players documents,
factorize the corpus to find passing patterns, and derive the contextual
metrics (covered area, pressure, heatmaps, regions) that situate each
pattern and phase.  A sequential-pattern miner provides the frequent
pass-chain baseline, and an HTTP service plus CLI expose the whole thing.
"""

from .matchdata import (
    EventKind,
    FrameSnapshot,
    MatchDataError,
    MatchRecord,
    Pass,
    Phase,
    PlayerDictionary,
    PlayerId,
    Position,
    RegionId,
    RosterPlayer,
    TeamSheet,
    build_dictionary,
    infer_counter_attacks,
    match_to_dict,
    normalize_direction,
    parse_match,
    parse_match_dict,
    region_dictionary,
    segment,
    segment_phases,
)
from .metrics import (
    DefenseContext,
    HeatmapGrid,
    MetricsError,
    PhaseMetrics,
    PhaseSummary,
    PlayerStats,
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
from .patterns import (
    Corpus,
    DetectionResult,
    DocumentVector,
    NmfConfig,
    PassingPattern,
    PatternError,
    PatternModel,
    assign_phases,
    build_corpus,
    counter_attack_pattern,
    detect_patterns,
    detection_from_dict,
    detection_to_dict,
    detection_to_json,
    extract_pattern,
    nmf_fit,
    phase_to_document,
)
from .seqmine import (
    MiningError,
    SequentialPattern,
    brute_force_mine,
    patterns_to_csv,
    phase_sequences,
    phase_token_sequence,
    prefixspan,
    role_sequences,
)
from .service import create_app, run_server

__version__ = "0.1.0"

__all__ = [
    "EventKind",
    "FrameSnapshot",
    "MatchDataError",
    "MatchRecord",
    "Pass",
    "Phase",
    "PlayerDictionary",
    "PlayerId",
    "Position",
    "RegionId",
    "RosterPlayer",
    "TeamSheet",
    "build_dictionary",
    "infer_counter_attacks",
    "match_to_dict",
    "normalize_direction",
    "parse_match",
    "parse_match_dict",
    "region_dictionary",
    "segment",
    "segment_phases",
    "DefenseContext",
    "HeatmapGrid",
    "MetricsError",
    "PhaseMetrics",
    "PhaseSummary",
    "PlayerStats",
    "PressureParams",
    "REGION_GLYPHS",
    "covered_area",
    "defense_context",
    "dribble_segments",
    "formation_lines",
    "pattern_heatmap",
    "phase_metrics",
    "phase_summary",
    "player_stats",
    "pressure",
    "spatial_region",
    "Corpus",
    "DetectionResult",
    "DocumentVector",
    "NmfConfig",
    "PassingPattern",
    "PatternError",
    "PatternModel",
    "assign_phases",
    "build_corpus",
    "counter_attack_pattern",
    "detect_patterns",
    "detection_from_dict",
    "detection_to_dict",
    "detection_to_json",
    "extract_pattern",
    "nmf_fit",
    "phase_to_document",
    "MiningError",
    "SequentialPattern",
    "brute_force_mine",
    "patterns_to_csv",
    "phase_sequences",
    "phase_token_sequence",
    "prefixspan",
    "role_sequences",
    "create_app",
    "run_server",
    "__version__",
]
