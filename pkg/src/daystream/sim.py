"""Role-play scenario generator with labeled ground truth.

Three scripted student personas plan a day (fixed schedule plus duration
goals placed earliest-fit on a 5-minute grid). Unexpected events are
injected by a deck of eight life cards drawn without replacement at
wake-up, noon, and evening; each card perturbs the log of one upcoming
planned interval and records the pattern event it injected. The deck
covers all six deviation patterns plus omission.

Everything is deterministic in (seed, persona), which makes these
scenarios the primary labeled fixture source for the pattern detector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import date as Date

from .analytics import (
    ADDITION,
    BACKWARD_SHIFT,
    FORWARD_SHIFT,
    LENGTHENING,
    OMISSION,
    REPLACEMENT,
    SHORTENING,
    PatternEvent,
    event_sort_key,
)
from .errors import InfeasiblePersona
from .model import (
    ActivityDef,
    BankableGoal,
    DayRecord,
    KIND_LOGGED,
    KIND_PLANNED,
    MINUTES_PER_DAY,
    TimeInterval,
    check_day,
)
from .store import Journal

SCENARIO_DATE = Date(2024, 3, 4)
NOON = 720
EVENING = 1080
GRID = 5
GOAL_CHUNKS = (30, 45, 60, 90, 120)

EFFECT_DELAY = "delay"
EFFECT_EARLY_START = "early_start"
EFFECT_CANCEL = "cancel_event"
EFFECT_SWAP = "swap_activity"
EFFECT_EXTEND = "extend"
EFFECT_TRUNCATE = "truncate"
EFFECT_INSERT = "insert_unplanned"
EFFECT_NONE = "no_effect"


@dataclass(frozen=True)
class LifeCard:
    """One unexpected event. The affected interval is always the next
    upcoming planned interval (at draw time) the effect can apply to."""

    id: int
    name: str
    effect: str
    minutes: int = 0
    activity: str | None = None


DECK: tuple[LifeCard, ...] = (
    LifeCard(1, "held up", EFFECT_DELAY, minutes=60),
    LifeCard(2, "slot opened up", EFFECT_EARLY_START, minutes=60),
    LifeCard(3, "event cancelled", EFFECT_CANCEL),
    LifeCard(4, "something came up", EFFECT_SWAP, activity="errands"),
    LifeCard(5, "in the zone", EFFECT_EXTEND, minutes=30),
    LifeCard(6, "cut short", EFFECT_TRUNCATE, minutes=30),
    LifeCard(7, "power nap", EFFECT_INSERT, minutes=30, activity="nap"),
    LifeCard(8, "smooth sailing", EFFECT_NONE),
)


@dataclass(frozen=True)
class Persona:
    name: str
    activities: tuple[ActivityDef, ...]
    fixed_schedule: tuple[tuple[str, int, int], ...]
    goal_activities: tuple[tuple[str, int], ...]
    wake_time: int


def _defs(*rows: tuple[str, str, str]) -> tuple[ActivityDef, ...]:
    return tuple(
        ActivityDef(id=i, name=n, color=c, order=k)
        for k, (i, n, c) in enumerate(rows)
    )


_COMMON = [
    ("sleep", "Sleep", "#1a237e"),
    ("meals", "Meals", "#e65100"),
    ("classes", "Classes", "#5d4037"),
    ("study", "Study", "#2e7d32"),
    ("leisure", "Leisure", "#fbc02d"),
    ("nap", "Nap", "#7e57c2"),
    ("errands", "Errands", "#00838f"),
]

STUDIOUS_SENIOR = Persona(
    name="studious_senior",
    activities=_defs(*_COMMON, ("gym", "Gym", "#c62828")),
    fixed_schedule=(
        ("sleep", 0, 420),
        ("meals", 420, 450),
        ("classes", 540, 650),
        ("meals", 720, 780),
        ("classes", 840, 950),
        ("meals", 1110, 1170),
        ("leisure", 1290, 1350),
        ("sleep", 1380, 1440),
    ),
    goal_activities=(("study", 330), ("gym", 45)),
    wake_time=420,
)

STUDENT_ATHLETE = Persona(
    name="student_athlete",
    activities=_defs(*_COMMON, ("training", "Training", "#c62828")),
    fixed_schedule=(
        ("sleep", 0, 390),
        ("meals", 390, 420),
        ("training", 420, 540),
        ("classes", 600, 710),
        ("meals", 720, 770),
        ("classes", 810, 920),
        ("training", 960, 1080),
        ("meals", 1110, 1160),
        ("leisure", 1200, 1260),
        ("sleep", 1380, 1440),
    ),
    goal_activities=(("study", 120),),
    wake_time=390,
)

CAREFREE_FRESHMAN = Persona(
    name="carefree_freshman",
    activities=_defs(*_COMMON, ("social", "Social", "#ad1457")),
    fixed_schedule=(
        ("sleep", 0, 540),
        ("meals", 570, 630),
        ("classes", 660, 770),
        ("leisure", 800, 920),
        ("meals", 1140, 1200),
        ("social", 1230, 1350),
        ("sleep", 1410, 1440),
    ),
    goal_activities=(("study", 90), ("leisure", 60)),
    wake_time=540,
)

PERSONAS: dict[str, Persona] = {
    p.name: p for p in (STUDIOUS_SENIOR, STUDENT_ATHLETE, CAREFREE_FRESHMAN)
}


@dataclass(frozen=True)
class ScenarioResult:
    planned_day: DayRecord
    logged_day: DayRecord
    ground_truth: tuple[PatternEvent, ...]
    drawn_cards: tuple[tuple[int, LifeCard], ...]

    def day(self) -> DayRecord:
        """Planned and logged merged into one record for the detector."""
        return DayRecord(
            date=self.planned_day.date,
            planned=self.planned_day.planned,
            logged=self.logged_day.logged,
        )


def _validate_persona(persona: Persona) -> None:
    ids = {a.id for a in persona.activities}
    total = 0
    by_activity: dict[str, list[tuple[int, int]]] = {}
    for activity, start, end in persona.fixed_schedule:
        if activity not in ids:
            raise InfeasiblePersona(f"unknown activity {activity!r} in schedule")
        if not (0 <= start < end <= MINUTES_PER_DAY):
            raise InfeasiblePersona(f"bad fixed interval [{start}, {end})")
        total += end - start
        by_activity.setdefault(activity, []).append((start, end))
    for activity, spans in by_activity.items():
        spans.sort()
        for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
            if s2 < e1:
                raise InfeasiblePersona(
                    f"fixed schedule overlaps itself on {activity!r}"
                )
    goal_total = sum(minutes for _, minutes in persona.goal_activities)
    for activity, minutes in persona.goal_activities:
        if activity not in ids:
            raise InfeasiblePersona(f"unknown goal activity {activity!r}")
        if minutes <= 0:
            raise InfeasiblePersona("goal minutes must be positive")
    if total + goal_total > MINUTES_PER_DAY:
        raise InfeasiblePersona("fixed schedule plus goals exceed the day")


def _busy_spans(intervals: list[TimeInterval]) -> list[tuple[int, int]]:
    spans = sorted((iv.start, iv.end) for iv in intervals)
    merged: list[tuple[int, int]] = []
    for start, end in spans:
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return merged


def _gaps(intervals: list[TimeInterval], not_before: int = 0) -> list[tuple[int, int]]:
    """Free spans (5-minute aligned) between busy intervals."""
    cursor = not_before
    gaps = []
    for start, end in _busy_spans(intervals):
        if start > cursor:
            gaps.append((cursor, start))
        cursor = max(cursor, end)
    if cursor < MINUTES_PER_DAY:
        gaps.append((cursor, MINUTES_PER_DAY))
    aligned = []
    for start, end in gaps:
        start = ((start + GRID - 1) // GRID) * GRID
        end = (end // GRID) * GRID
        if end > start:
            aligned.append((start, end))
    return aligned


def build_plan(persona: Persona, rng: random.Random) -> DayRecord:
    """Fixed schedule plus goal chunks placed earliest-fit on the 5-min grid."""
    _validate_persona(persona)
    plan = [
        TimeInterval(activity, start, end, KIND_PLANNED)
        for activity, start, end in persona.fixed_schedule
    ]
    for activity, target in persona.goal_activities:
        remaining = target
        while remaining > 0:
            gaps = _gaps(plan)
            largest = max((end - start for start, end in gaps), default=0)
            if largest == 0:
                raise InfeasiblePersona(
                    f"no free slot left for {activity!r} goal minutes"
                )
            # shrink the seeded chunk to whatever still fits
            chunk = min(remaining, rng.choice(GOAL_CHUNKS), largest)
            for gap_start, gap_end in gaps:
                if gap_end - gap_start >= chunk:
                    plan.append(
                        TimeInterval(
                            activity, gap_start, gap_start + chunk, KIND_PLANNED
                        )
                    )
                    break
            remaining -= chunk
    plan.sort(key=lambda iv: (iv.start, iv.end, iv.activity))
    day = DayRecord(date=SCENARIO_DATE, planned=tuple(plan))
    check_day(day)
    return day


def _as_logged(iv: TimeInterval) -> TimeInterval:
    return TimeInterval(iv.activity, iv.start, iv.end, KIND_LOGGED)


def verbatim_log(plan: DayRecord) -> DayRecord:
    """The log of someone who did exactly what they planned."""
    return DayRecord(
        date=plan.date,
        logged=tuple(
            sorted(
                (_as_logged(iv) for iv in plan.planned),
                key=lambda iv: (iv.start, iv.end, iv.activity),
            )
        ),
    )


def _overlaps_any(candidate: TimeInterval, log: list[TimeInterval]) -> bool:
    return any(candidate.overlap(other) > 0 for other in log)


def _remove(log: list[TimeInterval], target: TimeInterval) -> list[TimeInterval]:
    out = list(log)
    out.remove(target)
    return out


def apply_life_card(
    day_plan: DayRecord,
    partial_log: DayRecord,
    card: LifeCard,
    draw_time: int,
) -> tuple[DayRecord, list[PatternEvent]]:
    """Apply one card to the not-yet-lived remainder of the day.

    The target is the earliest still-verbatim planned interval starting at
    or after draw_time that the effect can cleanly apply to (moved or grown
    intervals must not collide with anything already in the log). A card
    with no eligible target is a recorded no-op, not an error.
    """
    log = list(partial_log.logged)
    if card.effect == EFFECT_NONE:
        return partial_log, []

    if card.effect == EFFECT_INSERT:
        for gap_start, gap_end in _gaps(list(day_plan.planned), draw_time):
            if gap_end - gap_start < card.minutes:
                continue
            candidate = TimeInterval(
                card.activity, gap_start, gap_start + card.minutes, KIND_LOGGED
            )
            if _overlaps_any(candidate, log):
                continue
            new_log = sorted(
                log + [candidate], key=lambda iv: (iv.start, iv.end, iv.activity)
            )
            event = PatternEvent(
                kind=ADDITION,
                activity=card.activity,
                logged_ref=candidate,
                magnitude_minutes=candidate.duration,
            )
            return (
                DayRecord(date=partial_log.date, logged=tuple(new_log)),
                [event],
            )
        return partial_log, []

    for planned_iv in day_plan.planned:
        if planned_iv.start < draw_time:
            continue
        verbatim = _as_logged(planned_iv)
        if verbatim not in log:
            continue  # already perturbed by an earlier card
        outcome = _apply_to_target(card, planned_iv, verbatim, log)
        if outcome is None:
            continue
        new_log, events = outcome
        new_log.sort(key=lambda iv: (iv.start, iv.end, iv.activity))
        return DayRecord(date=partial_log.date, logged=tuple(new_log)), events
    return partial_log, []


def _apply_to_target(
    card: LifeCard,
    planned_iv: TimeInterval,
    verbatim: TimeInterval,
    log: list[TimeInterval],
) -> tuple[list[TimeInterval], list[PatternEvent]] | None:
    """The transformed log and injected events, or None when infeasible."""
    rest = _remove(log, verbatim)
    duration = planned_iv.duration

    if card.effect in (EFFECT_DELAY, EFFECT_EARLY_START):
        # the move must clear its own plan entirely, otherwise the detector
        # would see an overlapping kept pair and no shift at all
        if duration > card.minutes:
            return None
        offset = card.minutes if card.effect == EFFECT_DELAY else -card.minutes
        start, end = planned_iv.start + offset, planned_iv.end + offset
        if start < 0 or end > MINUTES_PER_DAY:
            return None
        moved = TimeInterval(planned_iv.activity, start, end, KIND_LOGGED)
        if _overlaps_any(moved, rest):
            return None
        kind = FORWARD_SHIFT if offset > 0 else BACKWARD_SHIFT
        event = PatternEvent(
            kind=kind,
            activity=planned_iv.activity,
            planned_ref=planned_iv,
            logged_ref=moved,
            magnitude_minutes=card.minutes,
        )
        return rest + [moved], [event]

    if card.effect == EFFECT_CANCEL:
        event = PatternEvent(
            kind=OMISSION,
            activity=planned_iv.activity,
            planned_ref=planned_iv,
            magnitude_minutes=duration,
        )
        return rest, [event]

    if card.effect == EFFECT_SWAP:
        if card.activity == planned_iv.activity:
            return None
        swapped = TimeInterval(
            card.activity, planned_iv.start, planned_iv.end, KIND_LOGGED
        )
        if _overlaps_any(swapped, rest):
            return None
        event = PatternEvent(
            kind=REPLACEMENT,
            activity=planned_iv.activity,
            planned_ref=planned_iv,
            logged_ref=swapped,
            replacing_activity=card.activity,
            magnitude_minutes=duration,
        )
        return rest + [swapped], [event]

    if card.effect == EFFECT_EXTEND:
        end = planned_iv.end + card.minutes
        if end > MINUTES_PER_DAY:
            return None
        grown = TimeInterval(planned_iv.activity, planned_iv.start, end, KIND_LOGGED)
        if _overlaps_any(grown, rest):
            return None
        event = PatternEvent(
            kind=LENGTHENING,
            activity=planned_iv.activity,
            planned_ref=planned_iv,
            logged_ref=grown,
            magnitude_minutes=card.minutes,
        )
        return rest + [grown], [event]

    if card.effect == EFFECT_TRUNCATE:
        if duration - card.minutes < GRID:
            return None
        shrunk = TimeInterval(
            planned_iv.activity,
            planned_iv.start,
            planned_iv.end - card.minutes,
            KIND_LOGGED,
        )
        event = PatternEvent(
            kind=SHORTENING,
            activity=planned_iv.activity,
            planned_ref=planned_iv,
            logged_ref=shrunk,
            magnitude_minutes=card.minutes,
        )
        return rest + [shrunk], [event]

    raise ValueError(f"unknown card effect {card.effect!r}")


def _draw_points(persona: Persona) -> tuple[int, int, int]:
    return (persona.wake_time, NOON, EVENING)


def generate_scenario(seed: int, persona: Persona) -> ScenarioResult:
    """One simulated day: plan, three card draws, perturbed log, labels."""
    rng = random.Random(seed)
    plan = build_plan(persona, rng)
    log = verbatim_log(plan)

    cards = rng.sample(DECK, 3)
    truth: list[PatternEvent] = []
    drawn: list[tuple[int, LifeCard]] = []
    for draw_time, card in zip(_draw_points(persona), cards):
        log, events = apply_life_card(plan, log, card, draw_time)
        truth.extend(events)
        drawn.append((draw_time, card))

    check_day(log)
    truth.sort(key=event_sort_key)
    return ScenarioResult(
        planned_day=plan,
        logged_day=log,
        ground_truth=tuple(truth),
        drawn_cards=tuple(drawn),
    )


def single_card_scenario(
    seed: int, persona: Persona, card: LifeCard
) -> ScenarioResult:
    """One plan, one card, at a seed-chosen draw point. The acceptance
    sweep uses this to exercise every card in isolation."""
    rng = random.Random(seed)
    plan = build_plan(persona, rng)
    log = verbatim_log(plan)
    draw_time = rng.choice(_draw_points(persona))
    log, events = apply_life_card(plan, log, card, draw_time)
    check_day(log)
    events.sort(key=event_sort_key)
    return ScenarioResult(
        planned_day=plan,
        logged_day=log,
        ground_truth=tuple(events),
        drawn_cards=((draw_time, card),),
    )


def scenario_journal(persona: Persona, result: ScenarioResult) -> Journal:
    """Persist a scenario as a normal journal with the persona's goals."""
    goals = tuple(
        BankableGoal(
            id=f"goal-{i + 1}",
            activity=activity,
            target_minutes=minutes,
            date=result.planned_day.date,
        )
        for i, (activity, minutes) in enumerate(persona.goal_activities)
    )
    return Journal(
        activities=persona.activities,
        days={result.planned_day.date: result.day()},
        goals=goals,
    )


def card_to_dict(card: LifeCard) -> dict:
    return {
        "id": card.id,
        "name": card.name,
        "effect": card.effect,
        "minutes": card.minutes,
        "activity": card.activity,
    }
