"""Frequent sequential-pattern mining over player token sequences.

This is the order-preserving baseline for pattern detection: each phase
becomes the sequence of players touching the ball, and mining finds
subsequences (indices strictly increasing, not necessarily contiguous) that
occur in many phases.  Support counts distinct sequences, never repeat
occurrences within one sequence.  ``brute_force_mine`` is a deliberately
naive enumeration kept as a verification oracle for ``prefixspan``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .matchdata import MatchDataError, Phase, PlayerDictionary

TokenSequence = tuple[int, ...]

BRUTE_FORCE_TOKEN_GUARD = 200


class MiningError(ValueError):
    """Raised for invalid mining inputs."""


@dataclass(frozen=True)
class SequentialPattern:
    tokens: TokenSequence
    support: int

    @property
    def length(self) -> int:
        return len(self.tokens)


def _check_args(sequences: Sequence[Sequence[int]], min_support: int, max_len: int) -> None:
    if not sequences:
        raise MiningError("no sequences to mine")
    if any(len(s) == 0 for s in sequences):
        raise MiningError("sequences must be nonempty")
    if min_support < 1:
        raise MiningError(f"min_support must be >= 1, got {min_support}")
    if max_len < 1:
        raise MiningError(f"max_len must be >= 1, got {max_len}")


def _sorted_patterns(counts: Mapping[TokenSequence, int]) -> list[SequentialPattern]:
    return [
        SequentialPattern(tokens=tokens, support=support)
        for tokens, support in sorted(counts.items(), key=lambda kv: (-kv[1], len(kv[0]), kv[0]))
    ]


def prefixspan(
    sequences: Sequence[Sequence[int]], min_support: int, max_len: int
) -> list[SequentialPattern]:
    """All subsequence patterns of length <= max_len with support >= min_support.

    Projected-database recursion: each frequent token extends the current
    prefix, and the projection keeps, per sequence, only the suffix after
    that token's first occurrence.  Output is sorted by descending support,
    then length, then lexicographic tokens.
    """
    _check_args(sequences, min_support, max_len)
    seqs = [tuple(s) for s in sequences]
    found: dict[TokenSequence, int] = {}

    def mine(projections: list[TokenSequence], prefix: TokenSequence) -> None:
        counts: dict[int, int] = {}
        for suffix in projections:
            for token in set(suffix):
                counts[token] = counts.get(token, 0) + 1
        for token, support in counts.items():
            if support < min_support:
                continue
            pattern = prefix + (token,)
            found[pattern] = support
            if len(pattern) >= max_len:
                continue
            projected = []
            for suffix in projections:
                if token in suffix:
                    projected.append(suffix[suffix.index(token) + 1 :])
            mine(projected, pattern)

    mine(seqs, ())
    return _sorted_patterns(found)


def _is_subsequence(pattern: TokenSequence, sequence: TokenSequence) -> bool:
    it = iter(sequence)
    return all(token in it for token in pattern)


def brute_force_mine(
    sequences: Sequence[Sequence[int]], min_support: int, max_len: int
) -> list[SequentialPattern]:
    """Exhaustive-enumeration oracle with the same contract as prefixspan.

    Guarded to small inputs: total token count must not exceed
    ``BRUTE_FORCE_TOKEN_GUARD``.
    """
    _check_args(sequences, min_support, max_len)
    seqs = [tuple(s) for s in sequences]
    total = sum(len(s) for s in seqs)
    if total > BRUTE_FORCE_TOKEN_GUARD:
        raise MiningError(
            f"brute force guard: {total} tokens exceeds {BRUTE_FORCE_TOKEN_GUARD}"
        )

    candidates: set[TokenSequence] = set()
    for seq in seqs:
        level: set[TokenSequence] = {()}
        for _ in range(max_len):
            nxt: set[TokenSequence] = set()
            for prefix in level:
                # Extend by every token after the prefix's greedy match; the
                # leftmost embedding leaves the maximal suffix, so this
                # enumerates exactly the distinct subsequences.
                rest = seq
                for token in prefix:
                    rest = rest[rest.index(token) + 1 :]
                for token in set(rest):
                    nxt.add(prefix + (token,))
            if not nxt:
                break
            candidates |= nxt
            level = nxt

    counts = {}
    for pattern in candidates:
        support = sum(1 for seq in seqs if _is_subsequence(pattern, seq))
        if support >= min_support:
            counts[pattern] = support
    return _sorted_patterns(counts)


# ---------------------------------------------------------------------------
# Sequence construction from phases


def phase_token_sequence(
    phase: Phase, dictionary: PlayerDictionary, collapse_repeats: bool = True
) -> TokenSequence:
    """The ball's path through the dictionary: passer then receiver per pass.

    With ``collapse_repeats`` (the default) a receiver who passes next is
    not repeated, giving the natural chain of players touching the ball.
    """
    tokens: list[int] = []
    for p in phase.passes:
        for player in p.participants():
            ordinal = dictionary.ordinal(player)
            if collapse_repeats and tokens and tokens[-1] == ordinal:
                continue
            tokens.append(ordinal)
    return tuple(tokens)


def phase_sequences(
    phases: Iterable[Phase], dictionary: PlayerDictionary, collapse_repeats: bool = True
) -> list[TokenSequence]:
    return [phase_token_sequence(p, dictionary, collapse_repeats) for p in phases]


def role_sequences(
    sequences: Iterable[Sequence[int]],
    dictionary: PlayerDictionary,
    role_of: Callable[[object], str],
) -> tuple[list[TokenSequence], list[str]]:
    """Map player-token sequences to role-token sequences.

    ``role_of`` maps a dictionary entry to its role name; the returned role
    vocabulary is sorted, and adjacent repeats are collapsed the same way
    player chains are.
    """
    if dictionary.kind != "player":
        raise MatchDataError("role mapping requires a player dictionary")
    roles = sorted({role_of(entry) for entry in dictionary.entries})
    role_ordinal = {name: i for i, name in enumerate(roles)}
    mapped: list[TokenSequence] = []
    for seq in sequences:
        out: list[int] = []
        for token in seq:
            ordinal = role_ordinal[role_of(dictionary.entries[token])]
            if out and out[-1] == ordinal:
                continue
            out.append(ordinal)
        mapped.append(tuple(out))
    return mapped, roles


def patterns_to_csv(
    patterns: Iterable[SequentialPattern], labels: Sequence[str] | None = None
) -> str:
    """Delimited export: tokens, support, length (one pattern per line)."""
    lines = ["tokens,support,length"]
    for p in patterns:
        shown = (
            "|".join(labels[t] for t in p.tokens) if labels else "|".join(map(str, p.tokens))
        )
        lines.append(f"{shown},{p.support},{p.length}")
    return "\n".join(lines) + "\n"
