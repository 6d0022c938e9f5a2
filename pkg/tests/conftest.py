from __future__ import annotations

import random
import sys
from datetime import date as Date
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from daystream.model import (
    KIND_LOGGED,
    KIND_PLANNED,
    ActiveTimer,
    ActivityDef,
    DayRecord,
    TimeInterval,
)

PALETTE = ["#1a237e", "#e65100", "#2e7d32", "#6a1b9a", "#00838f", "#c62828"]


def make_activities(n: int) -> list[ActivityDef]:
    return [
        ActivityDef(
            id=f"act{i}",
            name=f"Activity {i}",
            color=PALETTE[i % len(PALETTE)],
            order=i,
        )
        for i in range(n)
    ]


def random_intervals(
    rng: random.Random,
    activity: str,
    kind: str,
    max_count: int = 4,
    grid: int = 1,
) -> list[TimeInterval]:
    """Non-overlapping intervals of one activity and kind, random positions."""
    count = rng.randint(0, max_count)
    if count == 0:
        return []
    cuts = sorted(rng.sample(range(0, 1440 // grid + 1), min(2 * count, 1440 // grid)))
    out = []
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        if hi > lo:
            out.append(TimeInterval(activity, lo * grid, hi * grid, kind))
    return out


def random_day(
    rng: random.Random,
    activities: list[str],
    day: Date = Date(2024, 3, 4),
    max_per_kind: int = 4,
    grid: int = 1,
    with_timers: bool = False,
) -> DayRecord:
    planned: list[TimeInterval] = []
    logged: list[TimeInterval] = []
    for activity in activities:
        planned.extend(random_intervals(rng, activity, KIND_PLANNED, max_per_kind, grid))
        logged.extend(random_intervals(rng, activity, KIND_LOGGED, max_per_kind, grid))
    timers = []
    if with_timers:
        for activity in activities:
            if rng.random() < 0.3:
                timers.append(ActiveTimer(activity, rng.randrange(0, 1440)))
    return DayRecord(
        date=day,
        planned=tuple(planned),
        logged=tuple(logged),
        active=tuple(timers),
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xDA57)
