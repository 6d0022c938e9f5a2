"""Plan-vs-log diffing: deviation pattern detection and adherence scoring.

A day's planned and logged intervals are matched in two greedy stages,
then classified into seven event kinds: forward_shift, backward_shift,
replacement, addition, lengthening, shortening, and omission (the residual
class for planned-and-never-done, so every interval lands somewhere).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import bin_day
from .model import DayRecord, KIND_LOGGED, KIND_PLANNED, TimeInterval

FORWARD_SHIFT = "forward_shift"
BACKWARD_SHIFT = "backward_shift"
REPLACEMENT = "replacement"
ADDITION = "addition"
LENGTHENING = "lengthening"
SHORTENING = "shortening"
OMISSION = "omission"

EVENT_KINDS = (
    FORWARD_SHIFT,
    BACKWARD_SHIFT,
    REPLACEMENT,
    ADDITION,
    LENGTHENING,
    SHORTENING,
    OMISSION,
)

# sort sentinel for events missing a planned or logged side
_NO_START = 1441


@dataclass(frozen=True)
class DetectorConfig:
    """Detection thresholds.

    duration_tolerance_minutes: how much longer/shorter an activity may run
    before it counts as lengthening/shortening. replacement_overlap_fraction:
    how much of a dropped plan a different activity must cover to count as
    its replacement.
    """

    duration_tolerance_minutes: int = 15
    replacement_overlap_fraction: float = 0.5

    def __post_init__(self):
        if self.duration_tolerance_minutes < 0:
            raise ValueError("duration tolerance must be >= 0")
        if not (0.0 < self.replacement_overlap_fraction <= 1.0):
            raise ValueError("replacement overlap fraction must be in (0, 1]")


@dataclass(frozen=True)
class PatternEvent:
    """One detected deviation between plan and log."""

    kind: str
    activity: str
    planned_ref: TimeInterval | None = None
    logged_ref: TimeInterval | None = None
    replacing_activity: str | None = None
    magnitude_minutes: int = 0


@dataclass(frozen=True)
class Matching:
    """Output of the two matching stages plus the unmatched leftovers."""

    kept: tuple[tuple[TimeInterval, TimeInterval], ...]
    shifted: tuple[tuple[TimeInterval, TimeInterval], ...]
    leftover_planned: tuple[TimeInterval, ...]
    leftover_logged: tuple[TimeInterval, ...]


@dataclass(frozen=True)
class AdherenceReport:
    """Jaccard-style symmetry scores; None marks no-data."""

    per_activity: dict[str, float | None] = field(default_factory=dict)
    overall: float | None = None


def event_sort_key(event: PatternEvent) -> tuple:
    planned_start = event.planned_ref.start if event.planned_ref else _NO_START
    logged_start = event.logged_ref.start if event.logged_ref else _NO_START
    return (planned_start, logged_start, event.kind)


def match_intervals(
    planned: Sequence[TimeInterval],
    logged: Sequence[TimeInterval],
    config: DetectorConfig | None = None,
) -> Matching:
    """Pair planned with logged intervals of the same activity.

    Stage 1 keeps overlapping pairs, greedily by descending overlap; stage 2
    pairs what remains by ascending start distance (those are the shifts).
    Ties break on earlier planned start, then earlier logged start, so equal
    inputs always produce the same matching.
    """
    del config  # thresholds only matter for classification, kept for symmetry
    used_p: set[int] = set()
    used_l: set[int] = set()
    kept: list[tuple[TimeInterval, TimeInterval]] = []
    shifted: list[tuple[TimeInterval, TimeInterval]] = []

    overlap_candidates = sorted(
        (
            (pi, li)
            for pi, p in enumerate(planned)
            for li, l in enumerate(logged)
            if p.activity == l.activity and p.overlap(l) > 0
        ),
        key=lambda c: (
            -planned[c[0]].overlap(logged[c[1]]),
            planned[c[0]].start,
            logged[c[1]].start,
        ),
    )
    for pi, li in overlap_candidates:
        if pi in used_p or li in used_l:
            continue
        used_p.add(pi)
        used_l.add(li)
        kept.append((planned[pi], logged[li]))

    shift_candidates = sorted(
        (
            (pi, li)
            for pi, p in enumerate(planned)
            for li, l in enumerate(logged)
            if pi not in used_p
            and li not in used_l
            and p.activity == l.activity
        ),
        key=lambda c: (
            abs(logged[c[1]].start - planned[c[0]].start),
            planned[c[0]].start,
            logged[c[1]].start,
        ),
    )
    for pi, li in shift_candidates:
        if pi in used_p or li in used_l:
            continue
        used_p.add(pi)
        used_l.add(li)
        shifted.append((planned[pi], logged[li]))

    return Matching(
        kept=tuple(kept),
        shifted=tuple(shifted),
        leftover_planned=tuple(
            p for pi, p in enumerate(planned) if pi not in used_p
        ),
        leftover_logged=tuple(
            l for li, l in enumerate(logged) if li not in used_l
        ),
    )


def _duration_events(
    p: TimeInterval, l: TimeInterval, tolerance: int
) -> list[PatternEvent]:
    delta = l.duration - p.duration
    if delta > tolerance:
        return [
            PatternEvent(
                kind=LENGTHENING,
                activity=p.activity,
                planned_ref=p,
                logged_ref=l,
                magnitude_minutes=delta,
            )
        ]
    if -delta > tolerance:
        return [
            PatternEvent(
                kind=SHORTENING,
                activity=p.activity,
                planned_ref=p,
                logged_ref=l,
                magnitude_minutes=-delta,
            )
        ]
    return []


def detect_patterns(
    day: DayRecord,
    config: DetectorConfig | None = None,
) -> list[PatternEvent]:
    """Classify one day's plan-vs-log differences into pattern events.

    Kept pairs report duration drift beyond the tolerance. Shift pairs
    report the start-time move, plus any duration drift on the same pair,
    so one real act can yield two events. A dropped plan becomes a
    replacement when an unmatched log of another activity covers enough of
    it, otherwise an omission; unconsumed logs are additions. Active
    timers are ignored. The result is deterministically ordered.
    """
    config = config or DetectorConfig()
    tolerance = config.duration_tolerance_minutes
    matching = match_intervals(day.planned, day.logged, config)

    events: list[PatternEvent] = []
    for p, l in matching.kept:
        events.extend(_duration_events(p, l, tolerance))

    for p, l in matching.shifted:
        kind = FORWARD_SHIFT if l.start > p.start else BACKWARD_SHIFT
        events.append(
            PatternEvent(
                kind=kind,
                activity=p.activity,
                planned_ref=p,
                logged_ref=l,
                magnitude_minutes=abs(l.start - p.start),
            )
        )
        events.extend(_duration_events(p, l, tolerance))

    consumed_by_replacement: set[int] = set()
    for p in matching.leftover_planned:
        candidates = [
            (li, l, p.overlap(l))
            for li, l in enumerate(matching.leftover_logged)
            if l.activity != p.activity and p.overlap(l) > 0
        ]
        best = (
            max(candidates, key=lambda c: (c[2], -c[1].start))
            if candidates
            else None
        )
        if best is not None and best[2] >= (
            config.replacement_overlap_fraction * p.duration
        ):
            li, replacing, overlap = best
            consumed_by_replacement.add(li)
            events.append(
                PatternEvent(
                    kind=REPLACEMENT,
                    activity=p.activity,
                    planned_ref=p,
                    logged_ref=replacing,
                    replacing_activity=replacing.activity,
                    magnitude_minutes=overlap,
                )
            )
        else:
            events.append(
                PatternEvent(
                    kind=OMISSION,
                    activity=p.activity,
                    planned_ref=p,
                    magnitude_minutes=p.duration,
                )
            )

    for li, l in enumerate(matching.leftover_logged):
        if li in consumed_by_replacement:
            continue
        events.append(
            PatternEvent(
                kind=ADDITION,
                activity=l.activity,
                logged_ref=l,
                magnitude_minutes=l.duration,
            )
        )

    events.sort(key=event_sort_key)
    return events


def adherence_score(
    day: DayRecord,
    activities: Iterable[str] | None = None,
) -> AdherenceReport:
    """Score how closely the log matches the plan, per activity and overall.

    Uses the same hour-bin masses the stream renders, so the number is
    literally the symmetry of the chart: sum of min(P, L) over sum of
    max(P, L). Zero mass on both sides means no-data, reported as None.
    """
    if activities is None:
        universe: tuple[str, ...] = tuple(day.referenced_activities())
    else:
        universe = tuple(activities)
    planned = bin_day(day, KIND_PLANNED, universe)
    logged = bin_day(day, KIND_LOGGED, universe)

    per_activity: dict[str, float | None] = {}
    total_min = 0
    total_max = 0
    for activity in universe:
        mins = sum(
            min(p, l)
            for p, l in zip(planned.cells[activity], logged.cells[activity])
        )
        maxs = sum(
            max(p, l)
            for p, l in zip(planned.cells[activity], logged.cells[activity])
        )
        total_min += mins
        total_max += maxs
        per_activity[activity] = (mins / maxs) if maxs else None
    overall = (total_min / total_max) if total_max else None
    return AdherenceReport(per_activity=per_activity, overall=overall)


def interval_to_dict(iv: TimeInterval) -> dict:
    return {"activity": iv.activity, "start": iv.start, "end": iv.end}


def event_to_dict(event: PatternEvent) -> dict:
    return {
        "kind": event.kind,
        "activity": event.activity,
        "planned": interval_to_dict(event.planned_ref) if event.planned_ref else None,
        "logged": interval_to_dict(event.logged_ref) if event.logged_ref else None,
        "replacing_activity": event.replacing_activity,
        "magnitude_minutes": event.magnitude_minutes,
    }


def report_to_dict(report: AdherenceReport) -> dict:
    return {"per_activity": dict(report.per_activity), "overall": report.overall}
