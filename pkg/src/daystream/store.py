"""Durable journal persistence: one human-readable, diffable JSON document.

The on-disk schema (version 1) is exactly:

    {
      "version": 1,
      "activities": [{"id", "name", "color", "order", "archived"}, ...],
      "days": {"YYYY-MM-DD": {"planned": [{"activity", "start", "end"}, ...],
                              "logged":  [...],
                              "active":  [{"activity", "started_at"}, ...]}},
      "goals": [{"id", "activity", "target_minutes", "date"}, ...]
    }

Saves are atomic (temp file + rename) and canonical: equal journals
produce byte-identical files. Every invariant is re-validated on load;
files from a future schema version are rejected, never coerced.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field, replace
from datetime import date as Date
from pathlib import Path

from .errors import (
    DomainError,
    IoFailure,
    ParseError,
    SchemaViolation,
    UnsupportedVersion,
)
from .model import (
    ActiveTimer,
    ActivityDef,
    BankableGoal,
    DayRecord,
    KIND_LOGGED,
    KIND_PLANNED,
    TimeInterval,
    check_day,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Journal:
    version: int = SCHEMA_VERSION
    activities: tuple[ActivityDef, ...] = ()
    days: dict[Date, DayRecord] = field(default_factory=dict)
    goals: tuple[BankableGoal, ...] = ()

    def activity_map(self) -> dict[str, ActivityDef]:
        return {a.id: a for a in self.activities}

    def day(self, day: Date) -> DayRecord:
        """The stored record, or an empty one for days never written."""
        return self.days.get(day, DayRecord.empty(day))

    def with_day(self, record: DayRecord) -> "Journal":
        days = dict(self.days)
        days[record.date] = record
        return replace(self, days=days)

    def goal_map(self) -> dict[str, BankableGoal]:
        return {g.id: g for g in self.goals}


def check_journal(journal: Journal) -> None:
    """Validate every invariant a freshly loaded journal must satisfy."""
    ids = set()
    live_names = set()
    live_orders = set()
    for activity in journal.activities:
        if activity.id in ids:
            raise SchemaViolation(f"duplicate activity id {activity.id!r}")
        ids.add(activity.id)
        if not activity.archived:
            name = activity.name.casefold()
            if name in live_names:
                raise SchemaViolation(f"duplicate activity name {activity.name!r}")
            live_names.add(name)
            if activity.order in live_orders:
                raise SchemaViolation(f"duplicate stack order {activity.order}")
            live_orders.add(activity.order)

    for day_date, record in journal.days.items():
        if record.date != day_date:
            raise SchemaViolation(
                f"day record dated {record.date} stored under key {day_date}"
            )
        check_day(record)
        for iv in list(record.planned) + list(record.logged):
            if iv.activity not in ids:
                raise SchemaViolation(
                    f"interval references unknown activity {iv.activity!r}"
                )
        for timer in record.active:
            if timer.activity not in ids:
                raise SchemaViolation(
                    f"timer references unknown activity {timer.activity!r}"
                )

    goal_ids = set()
    for goal in journal.goals:
        if goal.id in goal_ids:
            raise SchemaViolation(f"duplicate goal id {goal.id!r}")
        goal_ids.add(goal.id)
        if goal.activity not in ids:
            raise SchemaViolation(
                f"goal references unknown activity {goal.activity!r}"
            )


def _interval_to_dict(iv: TimeInterval) -> dict:
    return {"activity": iv.activity, "start": iv.start, "end": iv.end}


def journal_to_dict(journal: Journal) -> dict:
    return {
        "version": journal.version,
        "activities": [
            {
                "id": a.id,
                "name": a.name,
                "color": a.color,
                "order": a.order,
                "archived": a.archived,
            }
            for a in journal.activities
        ],
        "days": {
            day.isoformat(): {
                "planned": [_interval_to_dict(iv) for iv in record.planned],
                "logged": [_interval_to_dict(iv) for iv in record.logged],
                "active": [
                    {"activity": t.activity, "started_at": t.started_at}
                    for t in record.active
                ],
            }
            for day, record in sorted(journal.days.items())
        },
        "goals": [
            {
                "id": g.id,
                "activity": g.activity,
                "target_minutes": g.target_minutes,
                "date": g.date.isoformat(),
            }
            for g in journal.goals
        ],
    }


def _require(mapping: dict, key: str, kind, where: str):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaViolation(f"missing {key!r} in {where}")
    value = mapping[key]
    if kind is int and isinstance(value, bool):
        raise SchemaViolation(f"{where}.{key} must be an integer")
    if not isinstance(value, kind):
        raise SchemaViolation(f"{where}.{key} has the wrong type")
    return value


def _interval_from_dict(raw: dict, kind: str, where: str) -> TimeInterval:
    try:
        return TimeInterval(
            activity=_require(raw, "activity", str, where),
            start=_require(raw, "start", int, where),
            end=_require(raw, "end", int, where),
            kind=kind,
        )
    except DomainError as exc:
        raise SchemaViolation(f"{where}: {exc}") from exc


def journal_from_dict(raw: dict) -> Journal:
    if not isinstance(raw, dict):
        raise SchemaViolation("journal document is not an object")
    version = raw.get("version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise SchemaViolation("journal version is not an integer")
    if version != SCHEMA_VERSION:
        raise UnsupportedVersion(
            f"journal version {version} is not supported (expected {SCHEMA_VERSION})"
        )

    try:
        activities = tuple(
            ActivityDef(
                id=_require(a, "id", str, "activity"),
                name=_require(a, "name", str, "activity"),
                color=_require(a, "color", str, "activity"),
                order=_require(a, "order", int, "activity"),
                archived=_require(a, "archived", bool, "activity"),
            )
            for a in raw.get("activities", [])
        )
    except DomainError as exc:
        raise SchemaViolation(f"activity: {exc}") from exc

    days: dict[Date, DayRecord] = {}
    for key, body in raw.get("days", {}).items():
        try:
            day_date = Date.fromisoformat(key)
        except ValueError as exc:
            raise SchemaViolation(f"bad day key {key!r}") from exc
        where = f"days[{key}]"
        if not isinstance(body, dict):
            raise SchemaViolation(f"{where} is not an object")
        try:
            timers = tuple(
                ActiveTimer(
                    activity=_require(t, "activity", str, where),
                    started_at=_require(t, "started_at", int, where),
                )
                for t in body.get("active", [])
            )
        except DomainError as exc:
            raise SchemaViolation(f"{where}: {exc}") from exc
        days[day_date] = DayRecord(
            date=day_date,
            planned=tuple(
                _interval_from_dict(iv, KIND_PLANNED, where)
                for iv in body.get("planned", [])
            ),
            logged=tuple(
                _interval_from_dict(iv, KIND_LOGGED, where)
                for iv in body.get("logged", [])
            ),
            active=timers,
        )

    try:
        goals = tuple(
            BankableGoal(
                id=_require(g, "id", str, "goal"),
                activity=_require(g, "activity", str, "goal"),
                target_minutes=_require(g, "target_minutes", int, "goal"),
                date=Date.fromisoformat(_require(g, "date", str, "goal")),
            )
            for g in raw.get("goals", [])
        )
    except DomainError as exc:
        raise SchemaViolation(f"goal: {exc}") from exc
    except ValueError as exc:
        raise SchemaViolation(f"goal: {exc}") from exc

    journal = Journal(
        version=version, activities=activities, days=days, goals=goals
    )
    check_journal(journal)
    return journal


def dumps_journal(journal: Journal) -> str:
    return json.dumps(journal_to_dict(journal), indent=2, sort_keys=False) + "\n"


def save_journal(journal: Journal, path: str | Path) -> None:
    """Atomically write the journal: temp file in the same directory, fsync,
    rename over the target. A crash mid-save never truncates the old file."""
    path = Path(path)
    payload = dumps_journal(journal)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(
            dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, path)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise
    except OSError as exc:
        raise IoFailure(f"cannot write journal to {path}: {exc}") from exc


def load_journal(path: str | Path) -> Journal:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read journal from {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed journal document {path}: {exc}") from exc
    return journal_from_dict(raw)
