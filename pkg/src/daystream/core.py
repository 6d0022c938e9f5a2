"""Operations on activities, day records, timers, bins, and bankable goals.

All operations are pure: they take value inputs and return new values.
Callers that share a journal across threads must serialize writers
themselves; readers can safely hold onto any snapshot.
"""

from __future__ import annotations

import re
from dataclasses import replace
from typing import Collection, Iterable, Mapping, Sequence

from .errors import (
    ClockRegression,
    DuplicateName,
    DuplicateOrder,
    EmptyName,
    InvalidRange,
    OverlapSameActivity,
    SchemaViolation,
    UnknownActivity,
)
from .model import (
    HOURS_PER_DAY,
    KIND_LOGGED,
    MINUTES_PER_DAY,
    ActiveTimer,
    ActivityDef,
    BankableGoal,
    BinMatrix,
    DayRecord,
    TimeInterval,
    validate_color,
)


def slugify(name: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", name.strip().lower()).strip("-")
    return slug or "activity"


def define_activity(
    existing: Sequence[ActivityDef],
    name: str,
    color: str,
    order: int | None = None,
) -> ActivityDef:
    """Create a new activity definition against the existing collection.

    Names must be unique among non-archived activities (case-insensitive).
    When order is omitted the activity stacks after all existing ones; an
    explicit order colliding with a live activity is rejected rather than
    silently shuffling the stack.
    """
    name = name.strip()
    if not name:
        raise EmptyName("activity name is empty")
    validate_color(color)
    live = [a for a in existing if not a.archived]
    if any(a.name.casefold() == name.casefold() for a in live):
        raise DuplicateName(f"an activity named {name!r} already exists")
    if order is None:
        order = max((a.order for a in existing), default=-1) + 1
    elif any(a.order == order for a in live):
        raise DuplicateOrder(f"stack position {order} is already taken")

    taken = {a.id for a in existing}
    slug = slugify(name)
    candidate, n = slug, 2
    while candidate in taken:
        candidate = f"{slug}-{n}"
        n += 1
    return ActivityDef(id=candidate, name=name, color=color, order=order)


def _check_known(activity: str, known: Collection[str] | None) -> None:
    if known is not None and activity not in known:
        raise UnknownActivity(f"no activity with id {activity!r}")


def add_interval(
    day: DayRecord,
    interval: TimeInterval,
    known_activities: Collection[str] | None = None,
) -> DayRecord:
    """Insert an interval into the day.

    Overlap with an existing interval of the same activity and kind is
    rejected, never merged, so double-logging mistakes stay visible.
    Touching endpoints are fine, and different activities may freely
    overlap (people multitask).
    """
    _check_known(interval.activity, known_activities)
    current = day.intervals(interval.kind)
    for other in current:
        if other.activity == interval.activity and interval.overlap(other) > 0:
            raise OverlapSameActivity(
                f"{interval.kind} {interval.activity!r} "
                f"[{interval.start},{interval.end}) overlaps "
                f"[{other.start},{other.end})"
            )
    return day.with_intervals(interval.kind, current + (interval,))


def remove_interval(
    day: DayRecord,
    kind: str,
    activity: str,
    start: int,
    end: int,
) -> DayRecord:
    """Remove the exact interval (activity, start, end) of the given kind."""
    current = day.intervals(kind)
    kept = tuple(
        iv
        for iv in current
        if not (iv.activity == activity and iv.start == start and iv.end == end)
    )
    if len(kept) == len(current):
        raise InvalidRange(
            f"no {kind} interval {activity!r} [{start},{end}) on {day.date}"
        )
    return day.with_intervals(kind, kept)


def find_timer(day: DayRecord, activity: str) -> ActiveTimer | None:
    for timer in day.active:
        if timer.activity == activity:
            return timer
    return None


def toggle_activity(
    day: DayRecord,
    activity: str,
    now: int,
    activities: Mapping[str, ActivityDef] | None = None,
) -> DayRecord:
    """Start a timer for the activity, or stop the running one.

    Stopping appends a logged interval [started_at, now); a zero-length
    result just discards the timer. Archived activities cannot be toggled.
    On any error the day is left untouched.
    """
    if activities is not None:
        definition = activities.get(activity)
        if definition is None or definition.archived:
            raise UnknownActivity(f"no loggable activity with id {activity!r}")
    timer = find_timer(day, activity)
    if timer is None:
        if not (0 <= now < MINUTES_PER_DAY):
            raise InvalidRange(f"timer start must be in 0..{MINUTES_PER_DAY - 1}")
        return replace(day, active=day.active + (ActiveTimer(activity, now),))

    if now < timer.started_at:
        raise ClockRegression(
            f"clock moved backwards: timer started at {timer.started_at}, now {now}"
        )
    remaining = tuple(t for t in day.active if t.activity != activity)
    if now == timer.started_at:
        return replace(day, active=remaining)
    if now > MINUTES_PER_DAY:
        raise InvalidRange(f"stop time past end of day: {now}")
    interval = TimeInterval(activity, timer.started_at, now, KIND_LOGGED)
    closed = add_interval(day, interval)
    return replace(closed, active=remaining)


def midnight_rollover(
    day: DayRecord,
    next_day: DayRecord | None = None,
) -> tuple[DayRecord, DayRecord]:
    """Close every live timer at 24:00 and reopen it at 0:00 the next day.

    A no-op (beyond creating the successor record) when nothing is running.
    """
    if next_day is None:
        next_day = DayRecord.empty(day.next_date())
    elif next_day.date != day.next_date():
        raise InvalidRange(
            f"rollover target {next_day.date} does not follow {day.date}"
        )
    closed = day
    carried = next_day
    for timer in day.active:
        interval = TimeInterval(
            timer.activity, timer.started_at, MINUTES_PER_DAY, KIND_LOGGED
        )
        closed = add_interval(closed, interval)
        if find_timer(carried, timer.activity) is not None:
            raise SchemaViolation(
                f"next day already has a timer for {timer.activity!r}"
            )
        carried = replace(
            carried, active=carried.active + (ActiveTimer(timer.activity, 0),)
        )
    closed = replace(closed, active=())
    return closed, carried


def bin_day(
    day: DayRecord,
    kind: str,
    activities: Iterable[str] | None = None,
) -> BinMatrix:
    """Sum minutes of each activity into 24 hour bins.

    cell[a][h] is the intersection length of a's closed intervals with
    clock hour h. Live timers contribute nothing until they are stopped,
    so rendered data is always a closed record.
    """
    if activities is None:
        universe: tuple[str, ...] = tuple(day.referenced_activities())
    else:
        universe = tuple(activities)
    sums = {a: [0] * HOURS_PER_DAY for a in universe}
    for iv in day.intervals(kind):
        row = sums.get(iv.activity)
        if row is None:
            continue
        first, last = iv.start // 60, (iv.end - 1) // 60
        for hour in range(first, last + 1):
            lo, hi = hour * 60, hour * 60 + 60
            row[hour] += min(iv.end, hi) - max(iv.start, lo)
    return BinMatrix(
        date=day.date,
        activities=universe,
        cells={a: tuple(row) for a, row in sums.items()},
    )


def logged_minutes(day: DayRecord, activity: str) -> int:
    return sum(iv.duration for iv in day.logged if iv.activity == activity)


def bankable_progress(
    goal: BankableGoal,
    day: DayRecord,
    known_activities: Collection[str] | None = None,
) -> dict:
    """Report progress toward a duration goal: minutes, fraction, met flag.

    The fraction is deliberately uncapped so overshoot stays visible.
    """
    _check_known(goal.activity, known_activities)
    if goal.date != day.date:
        raise InvalidRange(
            f"goal is for {goal.date}, day record is {day.date}"
        )
    minutes = logged_minutes(day, goal.activity)
    return {
        "logged_minutes": minutes,
        "fraction": minutes / goal.target_minutes,
        "met": minutes >= goal.target_minutes,
    }
