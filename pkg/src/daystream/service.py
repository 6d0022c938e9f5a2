"""Journal service: the single writer every user-facing surface goes through.

Wraps one journal file with a lock, applies core operations, persists
atomically after every successful mutation, and builds the JSON-ready
payloads that the HTTP API and the CLI both emit (which is what keeps the
two surfaces byte-consistent).
"""

from __future__ import annotations

import datetime
import threading
from dataclasses import replace
from datetime import date as Date
from pathlib import Path

from . import analytics, core, layout, svg
from .errors import (
    AlreadyActive,
    DuplicateName,
    DuplicateOrder,
    EmptyName,
    InvalidParameter,
    NotActive,
    UnknownActivity,
    UnknownGoal,
    UnknownInterval,
)
from .model import (
    ActivityDef,
    BankableGoal,
    DayRecord,
    KIND_LOGGED,
    KIND_PLANNED,
    TimeInterval,
    validate_color,
)
from .store import Journal, check_journal, load_journal, save_journal


def activity_to_dict(activity: ActivityDef) -> dict:
    return {
        "id": activity.id,
        "name": activity.name,
        "color": activity.color,
        "order": activity.order,
        "archived": activity.archived,
    }


def day_to_dict(day: DayRecord) -> dict:
    return {
        "date": day.date.isoformat(),
        "planned": [
            {"activity": iv.activity, "start": iv.start, "end": iv.end}
            for iv in day.planned
        ],
        "logged": [
            {"activity": iv.activity, "start": iv.start, "end": iv.end}
            for iv in day.logged
        ],
        "active": [
            {"activity": t.activity, "started_at": t.started_at}
            for t in day.active
        ],
    }


def goal_to_dict(goal: BankableGoal) -> dict:
    return {
        "id": goal.id,
        "activity": goal.activity,
        "target_minutes": goal.target_minutes,
        "date": goal.date.isoformat(),
    }


def interval_id(activity: str, start: int, end: int) -> str:
    return f"{activity}:{start}:{end}"


def parse_interval_id(raw: str) -> tuple[str, int, int]:
    parts = raw.rsplit(":", 2)
    if len(parts) != 3:
        raise InvalidParameter(f"bad interval id {raw!r}")
    try:
        return parts[0], int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InvalidParameter(f"bad interval id {raw!r}") from exc


def wall_clock_now() -> tuple[Date, int]:
    now = datetime.datetime.now()
    return now.date(), now.hour * 60 + now.minute


class JournalService:
    """Single-writer facade over one journal file.

    All mutations run under one lock and persist before returning; queries
    grab a snapshot reference and compute on immutable values.
    """

    def __init__(self, path: str | Path, autosave: bool = True):
        self.path = Path(path)
        self.autosave = autosave
        self._lock = threading.RLock()
        if self.path.exists():
            self._journal = load_journal(self.path)
        else:
            self._journal = Journal()
            if autosave:
                save_journal(self._journal, self.path)

    # -- snapshots and persistence -------------------------------------------

    @property
    def journal(self) -> Journal:
        with self._lock:
            return self._journal

    def _commit(self, journal: Journal) -> None:
        check_journal(journal)
        if self.autosave:
            save_journal(journal, self.path)
        self._journal = journal

    def flush(self) -> None:
        with self._lock:
            save_journal(self._journal, self.path)

    # -- activities ------------------------------------------------------------

    def list_activities(self) -> list[dict]:
        journal = self.journal
        return [
            activity_to_dict(a)
            for a in sorted(journal.activities, key=lambda a: (a.order, a.id))
        ]

    def add_activity(self, name: str, color: str, order: int | None = None) -> dict:
        with self._lock:
            journal = self._journal
            activity = core.define_activity(journal.activities, name, color, order)
            self._commit(
                replace(journal, activities=journal.activities + (activity,))
            )
            return activity_to_dict(activity)

    def _get_activity(self, activity_id: str) -> ActivityDef:
        activity = self.journal.activity_map().get(activity_id)
        if activity is None:
            raise UnknownActivity(f"no activity with id {activity_id!r}")
        return activity

    def resolve_activity(self, ref: str) -> ActivityDef:
        """Accept an activity id or a unique live name (CLI convenience)."""
        journal = self.journal
        by_id = journal.activity_map()
        if ref in by_id:
            return by_id[ref]
        matches = [
            a
            for a in journal.activities
            if not a.archived and a.name.casefold() == ref.casefold()
        ]
        if len(matches) == 1:
            return matches[0]
        raise UnknownActivity(f"no activity with id or name {ref!r}")

    def patch_activity(
        self,
        activity_id: str,
        name: str | None = None,
        color: str | None = None,
        order: int | None = None,
        archived: bool | None = None,
    ) -> dict:
        with self._lock:
            journal = self._journal
            current = self._get_activity(activity_id)
            updated = current
            if name is not None:
                name = name.strip()
                if not name:
                    raise EmptyName("activity name is empty")
                clash = any(
                    a.id != activity_id
                    and not a.archived
                    and a.name.casefold() == name.casefold()
                    for a in journal.activities
                )
                if clash:
                    raise DuplicateName(f"an activity named {name!r} already exists")
                updated = replace(updated, name=name)
            if color is not None:
                validate_color(color)
                updated = replace(updated, color=color)
            if archived is not None:
                updated = replace(updated, archived=archived)
            if order is not None:
                clash = any(
                    a.id != activity_id and not a.archived and a.order == order
                    for a in journal.activities
                )
                if clash and not updated.archived:
                    raise DuplicateOrder(f"stack position {order} is already taken")
                updated = replace(updated, order=order)
            activities = tuple(
                updated if a.id == activity_id else a for a in journal.activities
            )
            self._commit(replace(journal, activities=activities))
            return activity_to_dict(updated)

    def archive_activity(self, activity_id: str) -> dict:
        return self.patch_activity(activity_id, archived=True)

    # -- days and intervals ------------------------------------------------------

    def get_day(self, day: Date) -> dict:
        return day_to_dict(self.journal.day(day))

    def _known_ids(self, journal: Journal) -> set[str]:
        return {a.id for a in journal.activities}

    def add_plan(self, day: Date, activity: str, start: int, end: int) -> dict:
        return self._add_interval(day, activity, start, end, KIND_PLANNED)

    def add_log(self, day: Date, activity: str, start: int, end: int) -> dict:
        return self._add_interval(day, activity, start, end, KIND_LOGGED)

    def _add_interval(
        self, day: Date, activity: str, start: int, end: int, kind: str
    ) -> dict:
        with self._lock:
            journal = self._journal
            interval = TimeInterval(activity, start, end, kind)
            record = core.add_interval(
                journal.day(day), interval, self._known_ids(journal)
            )
            self._commit(journal.with_day(record))
            return day_to_dict(record)

    def remove_plan(self, day: Date, raw_interval_id: str) -> dict:
        return self._remove_interval(day, raw_interval_id, KIND_PLANNED)

    def remove_log(self, day: Date, raw_interval_id: str) -> dict:
        return self._remove_interval(day, raw_interval_id, KIND_LOGGED)

    def _remove_interval(self, day: Date, raw_interval_id: str, kind: str) -> dict:
        activity, start, end = parse_interval_id(raw_interval_id)
        with self._lock:
            journal = self._journal
            record = journal.day(day)
            exists = any(
                iv.activity == activity and iv.start == start and iv.end == end
                for iv in record.intervals(kind)
            )
            if not exists:
                raise UnknownInterval(
                    f"no {kind} interval {raw_interval_id!r} on {day}"
                )
            record = core.remove_interval(record, kind, activity, start, end)
            self._commit(journal.with_day(record))
            return day_to_dict(record)

    # -- toggle logging -----------------------------------------------------------

    def toggle(
        self,
        activity: str,
        day: Date | None = None,
        now: int | None = None,
    ) -> dict:
        if day is None or now is None:
            clock_day, clock_now = wall_clock_now()
            day = day if day is not None else clock_day
            now = now if now is not None else clock_now
        with self._lock:
            journal = self._journal
            record = journal.day(day)
            was_running = core.find_timer(record, activity) is not None
            record = core.toggle_activity(
                record, activity, now, journal.activity_map()
            )
            self._commit(journal.with_day(record))
            return {
                "status": "stopped" if was_running else "started",
                "day": day_to_dict(record),
            }

    def start(self, activity: str, day: Date | None = None, now: int | None = None) -> dict:
        """Explicit start: unlike toggle, refuses to stop a running timer."""
        if day is None or now is None:
            clock_day, clock_now = wall_clock_now()
            day = day if day is not None else clock_day
            now = now if now is not None else clock_now
        with self._lock:
            record = self._journal.day(day)
            if core.find_timer(record, activity) is not None:
                raise AlreadyActive(f"{activity!r} is already running on {day}")
            return self.toggle(activity, day, now)

    def stop(self, activity: str, day: Date | None = None, now: int | None = None) -> dict:
        """Explicit stop: unlike toggle, refuses to start a timer."""
        if day is None or now is None:
            clock_day, clock_now = wall_clock_now()
            day = day if day is not None else clock_day
            now = now if now is not None else clock_now
        with self._lock:
            record = self._journal.day(day)
            if core.find_timer(record, activity) is None:
                raise NotActive(f"{activity!r} is not running on {day}")
            return self.toggle(activity, day, now)

    def active_timers(self, day: Date | None = None) -> dict:
        if day is None:
            day, _ = wall_clock_now()
        record = self.journal.day(day)
        return {
            "date": day.isoformat(),
            "active": [
                {"activity": t.activity, "started_at": t.started_at}
                for t in record.active
            ],
        }

    # -- goals ---------------------------------------------------------------------

    def list_goals(self) -> list[dict]:
        return [goal_to_dict(g) for g in self.journal.goals]

    def add_goal(self, activity: str, target_minutes: int, day: Date) -> dict:
        with self._lock:
            journal = self._journal
            if activity not in self._known_ids(journal):
                raise UnknownActivity(f"no activity with id {activity!r}")
            taken = {g.id for g in journal.goals}
            n = len(journal.goals) + 1
            goal_id = f"goal-{n}"
            while goal_id in taken:
                n += 1
                goal_id = f"goal-{n}"
            goal = BankableGoal(
                id=goal_id, activity=activity, target_minutes=target_minutes, date=day
            )
            self._commit(replace(journal, goals=journal.goals + (goal,)))
            return goal_to_dict(goal)

    def goal_progress(self, goal_id: str, day: Date | None = None) -> dict:
        journal = self.journal
        goal = journal.goal_map().get(goal_id)
        if goal is None:
            raise UnknownGoal(f"no goal with id {goal_id!r}")
        if day is not None and day != goal.date:
            raise InvalidParameter(
                f"goal {goal_id} is for {goal.date}, not {day}"
            )
        progress = core.bankable_progress(
            goal, journal.day(goal.date), self._known_ids(journal)
        )
        return {"goal": goal_to_dict(goal), "progress": progress}

    # -- analytics and layout --------------------------------------------------------

    def default_order(self) -> tuple[str, ...]:
        return tuple(
            a.id
            for a in sorted(
                (a for a in self.journal.activities if not a.archived),
                key=lambda a: a.order,
            )
        )

    def palette(self) -> dict[str, str]:
        return {a.id: a.color for a in self.journal.activities}

    def layout_config(
        self,
        order: list[str] | None = None,
        visible: list[str] | None = None,
        smooth: bool = True,
        samples_per_bin: int = 8,
    ) -> layout.LayoutConfig:
        known = self._known_ids(self.journal)
        stack = tuple(order) if order is not None else self.default_order()
        unknown = [a for a in stack if a not in known]
        if unknown:
            raise UnknownActivity(f"unknown activities in order: {unknown}")
        shown = frozenset(visible) if visible is not None else frozenset(stack)
        unknown = sorted(shown - set(stack))
        if unknown:
            raise UnknownActivity(f"visible outside the stack order: {unknown}")
        return layout.LayoutConfig(
            order=stack,
            visible=shown,
            smoothing=layout.SMOOTH_CUBIC if smooth else layout.SMOOTH_NONE,
            samples_per_bin=samples_per_bin,
        )

    def bins_payload(self, day: Date) -> dict:
        record = self.journal.day(day)
        order = self.default_order()
        universe = tuple(
            dict.fromkeys(list(order) + record.referenced_activities())
        )
        planned = core.bin_day(record, KIND_PLANNED, universe)
        logged = core.bin_day(record, KIND_LOGGED, universe)
        return {
            "date": day.isoformat(),
            "activities": list(universe),
            "planned": {a: list(planned.cells[a]) for a in universe},
            "logged": {a: list(logged.cells[a]) for a in universe},
        }

    def day_geometry(self, day: Date, config: layout.LayoutConfig) -> layout.WaveGeometry:
        return layout.day_layout(self.journal.day(day), config)

    def layout_payload(self, day: Date, config: layout.LayoutConfig) -> dict:
        return layout.geometry_to_dict(self.day_geometry(day, config))

    def week_payload(self, start: Date, config: layout.LayoutConfig) -> dict:
        journal = self.journal
        days = [
            journal.day(start + datetime.timedelta(days=i)) for i in range(7)
        ]
        geometries = layout.week_layouts(days, config)
        return {
            "start": start.isoformat(),
            "shared_y_max": geometries[0].y_max if geometries else 0.0,
            "layouts": [layout.geometry_to_dict(g) for g in geometries],
        }

    def svg_document(
        self,
        day: Date,
        config: layout.LayoutConfig,
        width_px: int = 960,
        height_px: int = 420,
    ) -> str:
        geometry = self.day_geometry(day, config)
        return svg.render_svg(geometry, self.palette(), width_px, height_px)

    def patterns_payload(
        self, day: Date, config: analytics.DetectorConfig | None = None
    ) -> dict:
        events = analytics.detect_patterns(self.journal.day(day), config)
        return {
            "date": day.isoformat(),
            "events": [analytics.event_to_dict(e) for e in events],
        }

    def score_payload(self, day: Date) -> dict:
        record = self.journal.day(day)
        universe = tuple(
            dict.fromkeys(list(self.default_order()) + record.referenced_activities())
        )
        report = analytics.adherence_score(record, universe)
        payload = analytics.report_to_dict(report)
        payload["date"] = day.isoformat()
        return payload
