"""
Qualitative guidance: where to share and what to check
======================================================

The quantitative grid says how much sharing saves; this rule layer says
where it is worth the organizational cost, what to verify on the ground,
and how pooled-core compares with RAN-only sharing for LTE.
"""

from netshare import (
    AreaKind,
    LteContext,
    NetworkState,
    Technology,
    checklist,
    compare_lte,
    recommend,
)

# verdicts for every area and technology generation
print("sharing verdicts:")
for area in AreaKind:
    for tech in Technology:
        rec = recommend(area, tech)
        print(f"  {area.value:<9} {tech.value}: {rec.verdict.value}")
        for note in rec.notes:
            print(f"      - {note}")

# the feasibility questions differ for live networks and green-field builds
for state in NetworkState:
    doc = checklist(state)
    print(f"\n{state.value} network checklist ({len(doc.items)} items):")
    for item in doc.items:
        print(f"  ({item.domain}) {item.text}")

# for LTE the choice is between sharing only the radio layers (MOCN) and
# also pooling the mobility core (GWCN); context decides
print("\nLTE comparison, operator that needs roaming and CS fallback:")
needy = compare_lte(
    LteContext(needs_cs_fallback=True, needs_roaming=True, cost_priority_weight=0.3)
)
for row in needy.rows:
    print(f"  {row.criterion:<28} MOCN {row.mocn}  GWCN {row.gwcn}")
print(f"  -> preferred: {needy.preferred}")

print("\nLTE comparison, green-field data-only operator chasing cost:")
frugal = compare_lte(LteContext(voice_via_ims=True, cost_priority_weight=1.0))
print(f"  -> preferred: {frugal.preferred} "
      f"(scores MOCN {frugal.mocn_score:+.1f} / GWCN {frugal.gwcn_score:+.1f})")
