"""Walk a match file from raw bytes to segmented possession phases.

Builds a small synthetic match, parses and validates it, segments the
event stream into phases, and shows how direction normalization makes
both halves comparable.
"""

from passflow import normalize_direction, parse_match_dict, segment
from passflow.synth import demo_match

doc, _ = demo_match(seed=11)
record = segment(parse_match_dict(doc))

print(f"match {record.match_id}: teams {', '.join(record.team_ids())}")
print(f"  {len(record.passes())} passes, {len(record.frames)} frames")
print(f"  {len(record.phases)} phases after segmentation")

for team in record.team_ids():
    phases = record.team_phases(team)
    by_style = {}
    for p in phases:
        by_style[p.style] = by_style.get(p.style, 0) + 1
    print(f"  {team}: {len(phases)} phases {by_style}")

# A phase is a maximal same-team pass run; the end event says why it closed.
phase = record.phases[0]
print(f"\nphase {phase.id} ({phase.team}, half {phase.half}):")
for p in phase.passes:
    print(
        f"  {p.passer.label()} -> {p.receiver.label()}"
        f"  t={p.t_pass:6.1f}  ({p.origin.x:5.1f},{p.origin.y:5.1f})"
        f" -> ({p.target.x:5.1f},{p.target.y:5.1f})"
    )
print(f"  closed by: {phase.end_event.tag}")

# Segmentation partitions the passes: nothing lost, nothing duplicated.
flat = [p for phase in record.phases for p in phase.passes]
assert flat == list(record.passes())
print(f"\npartition check: {len(flat)} phase passes == {len(record.passes())} total")

# Direction normalization mirrors the halves where the team attacks left,
# so all of a team's phases read left-to-right.  Home attacks right in
# half 1 (untouched) and left in half 2 (mirrored).
normalized = normalize_direction(record, "home")
second_half = next(p for p in record.team_phases("home") if p.half == 2)
before = second_half.passes[0].origin
after = normalized.phases[second_half.id].passes[0].origin
print(f"normalize_direction('home'), half-2 origin: {before} -> {after}")
