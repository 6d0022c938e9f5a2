"""Command-line surface: authorship, planning, on-the-go logging, reports.

Exit codes: 0 success, 1 domain error, 2 usage error. Times are entered as
HH:MM and stored as minutes; `--now`/`--date` flags inject the clock so
scripted runs stay reproducible. The journal path comes from --journal,
else $AR_DATA_DIR/journal.json, else ./journal.json.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .analytics import event_to_dict
from .errors import DomainError
from .model import hhmm_to_minutes, parse_date
from .service import JournalService, interval_id
from .sim import PERSONAS, card_to_dict, generate_scenario, scenario_journal
from .store import save_journal

JOURNAL_FILE = "journal.json"


def default_journal_path() -> Path:
    data_dir = os.environ.get("AR_DATA_DIR")
    if data_dir:
        return Path(data_dir) / JOURNAL_FILE
    return Path.cwd() / JOURNAL_FILE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="daystream",
        description="Plan, log, and reflect on self-defined daily activities.",
    )
    parser.add_argument("--journal", type=Path, default=None, help="journal file path")
    parser.add_argument("--version", action="version", version=f"daystream {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("init", help="create an empty journal")

    activity = sub.add_parser("activity", help="manage activity definitions")
    activity_sub = activity.add_subparsers(dest="action", required=True)
    add = activity_sub.add_parser("add", help="define a new activity")
    add.add_argument("name")
    add.add_argument("--color", required=True, help='hex color like "#1a237e"')
    add.add_argument("--order", type=int, default=None)
    activity_sub.add_parser("list", help="list activities")
    archive = activity_sub.add_parser("archive", help="archive an activity")
    archive.add_argument("activity")

    plan = sub.add_parser("plan", help="manage planned intervals")
    plan_sub = plan.add_subparsers(dest="action", required=True)
    plan_add = plan_sub.add_parser("add")
    for name in ("date", "activity", "start", "end"):
        plan_add.add_argument(name)
    plan_remove = plan_sub.add_parser("remove")
    for name in ("date", "activity", "start", "end"):
        plan_remove.add_argument(name)
    plan_list = plan_sub.add_parser("list")
    plan_list.add_argument("date")

    log = sub.add_parser("log", help="on-the-go and retrospective logging")
    log_sub = log.add_subparsers(dest="action", required=True)
    for action in ("start", "stop"):
        p = log_sub.add_parser(action)
        p.add_argument("activity")
        p.add_argument("--date", default=None)
        p.add_argument("--now", default=None, help="clock injection, HH:MM")
    log_add = log_sub.add_parser("add")
    for name in ("date", "activity", "start", "end"):
        log_add.add_argument(name)

    show = sub.add_parser("show", help="render one day")
    show.add_argument("date")
    show.add_argument("--ascii", action="store_true", help="24-column dual histogram")
    show.add_argument("--svg", type=Path, default=None, help="write an SVG file")
    show.add_argument("--width", type=int, default=960)
    show.add_argument("--height", type=int, default=420)
    show.add_argument("--flat", action="store_true", help="disable wave smoothing")

    patterns = sub.add_parser("patterns", help="plan-vs-log deviation events")
    patterns.add_argument("date")

    score = sub.add_parser("score", help="plan adherence scores")
    score.add_argument("date")

    goal = sub.add_parser("goal", help="bankable duration goals")
    goal_sub = goal.add_subparsers(dest="action", required=True)
    goal_add = goal_sub.add_parser("add")
    goal_add.add_argument("date")
    goal_add.add_argument("activity")
    goal_add.add_argument("minutes", type=int)
    progress = goal_sub.add_parser("progress")
    progress.add_argument("goal_id")
    progress.add_argument("--date", default=None)

    sim = sub.add_parser("sim", help="generate a labeled role-play scenario")
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--persona", choices=sorted(PERSONAS), required=True)
    sim.add_argument("--out", type=Path, default=None, help="journal output path")
    sim.add_argument("--truth", type=Path, default=None, help="ground-truth sidecar path")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--static", type=Path, default=None, help="serve a built web UI from this dir"
    )

    return parser


def ascii_day(payload: dict) -> str:
    """24-column dual histogram: logged above the baseline, planned below."""
    logged_totals = [0] * 24
    planned_totals = [0] * 24
    for activity in payload["activities"]:
        for hour in range(24):
            logged_totals[hour] += payload["logged"][activity][hour]
            planned_totals[hour] += payload["planned"][activity][hour]
    peak = max(logged_totals + planned_totals + [60])
    rows = math.ceil(peak / 60)

    def bar(totals, row, label):
        cells = "".join("#" if totals[h] > row * 60 else " " for h in range(24))
        return f"{(row + 1) * 60:>5} |{cells}| {label}"

    lines = [f"{payload['date']}  (one column per hour, one row per 60 min)"]
    for row in range(rows - 1, -1, -1):
        lines.append(bar(logged_totals, row, "logged" if row == rows - 1 else ""))
    lines.append("      +" + "-" * 24 + "+")
    for row in range(rows):
        lines.append(bar(planned_totals, row, "planned" if row == rows - 1 else ""))
    ruler = [" "] * 24
    for hour in (0, 6, 12, 18):
        for offset, ch in enumerate(str(hour)):
            ruler[hour + offset] = ch
    lines.append("       " + "".join(ruler))
    return "\n".join(lines)


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def _minutes(raw: str) -> int:
    return hhmm_to_minutes(raw)


def run(args: argparse.Namespace) -> int:
    journal_path = args.journal or default_journal_path()

    if args.command == "init":
        service = JournalService(journal_path)
        print(f"journal ready at {service.path}")
        return 0

    if args.command == "sim":
        persona = PERSONAS[args.persona]
        result = generate_scenario(args.seed, persona)
        journal = scenario_journal(persona, result)
        out = args.out or journal_path
        save_journal(journal, out)
        truth_path = args.truth or out.with_suffix(".truth.json")
        sidecar = {
            "seed": args.seed,
            "persona": persona.name,
            "date": result.planned_day.date.isoformat(),
            "drawn_cards": [
                {"at": at, "card": card_to_dict(card)}
                for at, card in result.drawn_cards
            ],
            "ground_truth": [event_to_dict(e) for e in result.ground_truth],
        }
        truth_path.write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
        print(f"journal: {out}")
        print(f"ground truth: {truth_path}")
        return 0

    if args.command == "serve":
        from .api import serve as run_server

        run_server(journal_path, port=args.port, host=args.host, static_dir=args.static)
        return 0

    service = JournalService(journal_path)

    if args.command == "activity":
        if args.action == "add":
            created = service.add_activity(args.name, args.color, args.order)
            print(created["id"])
        elif args.action == "list":
            _emit(service.list_activities())
        elif args.action == "archive":
            archived = service.archive_activity(service.resolve_activity(args.activity).id)
            print(f"archived {archived['id']}")
        return 0

    if args.command == "plan":
        day = parse_date(args.date)
        if args.action == "list":
            _emit(service.get_day(day)["planned"])
            return 0
        activity = service.resolve_activity(args.activity).id
        start, end = _minutes(args.start), _minutes(args.end)
        if args.action == "add":
            service.add_plan(day, activity, start, end)
            print(f"planned {activity} {args.start}-{args.end} on {day}")
        else:
            service.remove_plan(day, interval_id(activity, start, end))
            print(f"removed plan {activity} {args.start}-{args.end} on {day}")
        return 0

    if args.command == "log":
        if args.action == "add":
            day = parse_date(args.date)
            activity = service.resolve_activity(args.activity).id
            service.add_log(day, activity, _minutes(args.start), _minutes(args.end))
            print(f"logged {activity} {args.start}-{args.end} on {day}")
            return 0
        day = parse_date(args.date) if args.date else None
        now = _minutes(args.now) if args.now else None
        activity = service.resolve_activity(args.activity).id
        if args.action == "start":
            outcome = service.start(activity, day, now)
            print(f"started {activity} on {outcome['day']['date']}")
        else:
            outcome = service.stop(activity, day, now)
            print(f"stopped {activity} on {outcome['day']['date']}")
        return 0

    if args.command == "show":
        day = parse_date(args.date)
        if args.svg is not None:
            config = service.layout_config(smooth=not args.flat)
            document = service.svg_document(day, config, args.width, args.height)
            args.svg.write_text(document, encoding="utf-8")
            print(f"wrote {args.svg}")
        elif args.ascii:
            print(ascii_day(service.bins_payload(day)))
        else:
            _emit(service.get_day(day))
        return 0

    if args.command == "patterns":
        _emit(service.patterns_payload(parse_date(args.date)))
        return 0

    if args.command == "score":
        _emit(service.score_payload(parse_date(args.date)))
        return 0

    if args.command == "goal":
        if args.action == "add":
            created = service.add_goal(
                service.resolve_activity(args.activity).id,
                args.minutes,
                parse_date(args.date),
            )
            print(created["id"])
        else:
            day = parse_date(args.date) if args.date else None
            _emit(service.goal_progress(args.goal_id, day))
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except DomainError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
