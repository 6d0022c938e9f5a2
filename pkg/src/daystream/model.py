"""Core domain types: activities, intervals, day records, goals, bin matrices.

All types are immutable values. Times are integer minutes from midnight
(0..1440, half-open intervals that never span midnight); dates are plain
``datetime.date`` objects, local-naive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import date as Date
from datetime import timedelta

from .errors import (
    EmptyName,
    InvalidColor,
    InvalidRange,
    SchemaViolation,
)

MINUTES_PER_DAY = 1440
HOURS_PER_DAY = 24

KIND_PLANNED = "planned"
KIND_LOGGED = "logged"
KINDS = (KIND_PLANNED, KIND_LOGGED)

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")


def minutes_to_hhmm(minutes: int) -> str:
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def hhmm_to_minutes(text: str) -> int:
    """Parse "HH:MM" into minutes from midnight; "24:00" means end of day."""
    m = re.fullmatch(r"(\d{1,2}):(\d{2})", text.strip())
    if not m:
        raise InvalidRange(f"not a HH:MM time: {text!r}")
    hours, mins = int(m.group(1)), int(m.group(2))
    total = hours * 60 + mins
    if mins > 59 or total > MINUTES_PER_DAY:
        raise InvalidRange(f"time out of range: {text!r}")
    return total


def parse_date(text: str) -> Date:
    try:
        return Date.fromisoformat(text)
    except ValueError as exc:
        raise InvalidRange(f"not a calendar date: {text!r}") from exc


def validate_color(color: str) -> str:
    if not _COLOR_RE.match(color):
        raise InvalidColor(f"color must match #RRGGBB, got {color!r}")
    return color


@dataclass(frozen=True)
class ActivityDef:
    """A user-authored activity category."""

    id: str
    name: str
    color: str
    order: int
    archived: bool = False

    def __post_init__(self):
        if not self.name.strip():
            raise EmptyName("activity name is empty")
        validate_color(self.color)
        if self.order < 0:
            raise InvalidRange(f"activity order must be >= 0, got {self.order}")


@dataclass(frozen=True, order=True)
class TimeInterval:
    """A half-open minute span [start, end) of one activity on one day."""

    activity: str
    start: int
    end: int
    kind: str = KIND_LOGGED

    def __post_init__(self):
        if not (0 <= self.start < self.end <= MINUTES_PER_DAY):
            raise InvalidRange(
                f"interval must satisfy 0 <= start < end <= {MINUTES_PER_DAY}, "
                f"got [{self.start}, {self.end})"
            )
        if self.kind not in KINDS:
            raise ValueError(f"unknown interval kind: {self.kind!r}")

    @property
    def duration(self) -> int:
        return self.end - self.start

    def overlap(self, other: "TimeInterval") -> int:
        """Overlap length in minutes; 0 when disjoint or merely touching."""
        return max(0, min(self.end, other.end) - max(self.start, other.start))


@dataclass(frozen=True)
class ActiveTimer:
    """An on-the-go recording in progress. Several may run concurrently,
    but at most one per activity."""

    activity: str
    started_at: int

    def __post_init__(self):
        if not (0 <= self.started_at < MINUTES_PER_DAY):
            raise InvalidRange(
                f"timer start must be in 0..{MINUTES_PER_DAY - 1}, got {self.started_at}"
            )


@dataclass(frozen=True)
class BankableGoal:
    """A duration target for one activity on one day; placement is flexible."""

    id: str
    activity: str
    target_minutes: int
    date: Date

    def __post_init__(self):
        if not (1 <= self.target_minutes <= MINUTES_PER_DAY):
            raise InvalidRange(
                f"goal target must be in 1..{MINUTES_PER_DAY}, got {self.target_minutes}"
            )


@dataclass(frozen=True)
class DayRecord:
    """One day's planned and logged intervals plus any live timers."""

    date: Date
    planned: tuple[TimeInterval, ...] = ()
    logged: tuple[TimeInterval, ...] = ()
    active: tuple[ActiveTimer, ...] = ()

    @staticmethod
    def empty(day: Date) -> "DayRecord":
        return DayRecord(date=day)

    def intervals(self, kind: str) -> tuple[TimeInterval, ...]:
        if kind == KIND_PLANNED:
            return self.planned
        if kind == KIND_LOGGED:
            return self.logged
        raise ValueError(f"unknown interval kind: {kind!r}")

    def with_intervals(self, kind: str, intervals: tuple[TimeInterval, ...]) -> "DayRecord":
        if kind == KIND_PLANNED:
            return replace(self, planned=intervals)
        if kind == KIND_LOGGED:
            return replace(self, logged=intervals)
        raise ValueError(f"unknown interval kind: {kind!r}")

    def referenced_activities(self) -> list[str]:
        """Activity ids referenced by this day, in sorted order."""
        ids = {iv.activity for iv in self.planned}
        ids.update(iv.activity for iv in self.logged)
        ids.update(t.activity for t in self.active)
        return sorted(ids)

    def next_date(self) -> Date:
        return self.date + timedelta(days=1)


@dataclass(frozen=True)
class BinMatrix:
    """Per-day 24-slot matrix of minutes per activity, the layout's input."""

    date: Date
    activities: tuple[str, ...]
    cells: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def row(self, activity: str) -> tuple[int, ...]:
        return self.cells[activity]

    def total(self, activity: str) -> int:
        return sum(self.cells[activity])

    def mass(self) -> int:
        return sum(sum(row) for row in self.cells.values())


def check_interval_list(intervals: tuple[TimeInterval, ...], kind: str) -> None:
    """Reject kind mismatches and same-activity overlap (touching is fine)."""
    by_activity: dict[str, list[TimeInterval]] = {}
    for iv in intervals:
        if iv.kind != kind:
            raise SchemaViolation(
                f"interval kind {iv.kind!r} stored in the {kind} list"
            )
        by_activity.setdefault(iv.activity, []).append(iv)
    for activity, group in by_activity.items():
        group.sort(key=lambda iv: (iv.start, iv.end))
        for prev, cur in zip(group, group[1:]):
            if cur.start < prev.end:
                raise SchemaViolation(
                    f"{kind} intervals of {activity!r} overlap: "
                    f"[{prev.start},{prev.end}) and [{cur.start},{cur.end})"
                )


def check_day(day: DayRecord) -> None:
    """Raise SchemaViolation when any DayRecord invariant is broken."""
    check_interval_list(day.planned, KIND_PLANNED)
    check_interval_list(day.logged, KIND_LOGGED)
    seen: set[str] = set()
    for timer in day.active:
        if timer.activity in seen:
            raise SchemaViolation(
                f"more than one active timer for activity {timer.activity!r}"
            )
        seen.add(timer.activity)


def check_bins(matrix: BinMatrix) -> None:
    """Raise SchemaViolation when a BinMatrix invariant is broken."""
    if set(matrix.cells) != set(matrix.activities):
        raise SchemaViolation("bin matrix rows do not match its activity list")
    for activity in matrix.activities:
        row = matrix.cells[activity]
        if len(row) != HOURS_PER_DAY:
            raise SchemaViolation(f"row for {activity!r} is not 24 cells")
        for value in row:
            if not (0 <= value <= 60):
                raise SchemaViolation(
                    f"cell out of 0..60 for {activity!r}: {value}"
                )
