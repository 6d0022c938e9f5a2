"""HTTP facade over one journal: mutations, layout, analytics, SVG export.

Single-user local service. Every mutation is one core operation under the
journal lock, persisted before the response; queries are pure over the
journal snapshot. Domain errors map to {"code", "message"} bodies with
422 for validation, 404 for missing resources, and 409 for conflicts.
"""

from __future__ import annotations

import errno
import os
from contextlib import asynccontextmanager
from datetime import date as Date
from pathlib import Path

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response

from .errors import DomainError, InvalidParameter
from .model import parse_date
from .service import JournalService

DEFAULT_PORT = 8000


def _parse_day(raw: str) -> Date:
    try:
        return parse_date(raw)
    except DomainError as exc:
        raise InvalidParameter(f"bad date {raw!r}") from exc


def _comma_list(raw: str | None) -> list[str] | None:
    if raw is None:
        return None
    return [part for part in raw.split(",") if part]


def create_app(
    service: JournalService, static_dir: str | Path | None = None
) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        service.flush()  # graceful shutdown leaves the journal saved

    app = FastAPI(title="daystream", docs_url=None, redoc_url=None, lifespan=lifespan)
    app.state.service = service

    @app.exception_handler(DomainError)
    async def domain_error_handler(request: Request, exc: DomainError):
        return JSONResponse(
            status_code=exc.http_status,
            content={"code": exc.code, "message": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"code": "InvalidParameter", "message": str(exc.errors())},
        )

    # -- activities -------------------------------------------------------------

    @app.get("/api/activities")
    def list_activities():
        return service.list_activities()

    @app.post("/api/activities")
    def add_activity(body: dict = Body(...)):
        name = body.get("name")
        color = body.get("color")
        if not isinstance(name, str) or not isinstance(color, str):
            raise InvalidParameter("body needs string fields name and color")
        order = body.get("order")
        if order is not None and not isinstance(order, int):
            raise InvalidParameter("order must be an integer")
        return service.add_activity(name, color, order)

    @app.patch("/api/activities/{activity_id}")
    def patch_activity(activity_id: str, body: dict = Body(...)):
        allowed = {"name", "color", "order", "archived"}
        unknown = set(body) - allowed
        if unknown:
            raise InvalidParameter(f"unknown fields: {sorted(unknown)}")
        return service.patch_activity(
            activity_id,
            name=body.get("name"),
            color=body.get("color"),
            order=body.get("order"),
            archived=body.get("archived"),
        )

    # -- days ---------------------------------------------------------------------

    @app.get("/api/days/{day}")
    def get_day(day: str):
        return service.get_day(_parse_day(day))

    def _interval_body(body: dict) -> tuple[str, int, int]:
        activity = body.get("activity")
        start, end = body.get("start"), body.get("end")
        if not isinstance(activity, str):
            raise InvalidParameter("body needs a string activity field")
        if not isinstance(start, int) or not isinstance(end, int) or isinstance(
            start, bool
        ) or isinstance(end, bool):
            raise InvalidParameter("start and end must be integer minutes")
        return activity, start, end

    @app.post("/api/days/{day}/plan")
    def add_plan(day: str, body: dict = Body(...)):
        return service.add_plan(_parse_day(day), *_interval_body(body))

    @app.delete("/api/days/{day}/plan/{interval_id}")
    def remove_plan(day: str, interval_id: str):
        return service.remove_plan(_parse_day(day), interval_id)

    @app.post("/api/days/{day}/log")
    def add_log(day: str, body: dict = Body(...)):
        return service.add_log(_parse_day(day), *_interval_body(body))

    @app.delete("/api/days/{day}/log/{interval_id}")
    def remove_log(day: str, interval_id: str):
        return service.remove_log(_parse_day(day), interval_id)

    # -- toggle logging --------------------------------------------------------------

    @app.post("/api/toggle")
    def toggle(body: dict = Body(...)):
        activity = body.get("activity")
        if not isinstance(activity, str):
            raise InvalidParameter("body needs a string activity field")
        day = _parse_day(body["date"]) if "date" in body else None
        now = body.get("now")
        if now is not None and (not isinstance(now, int) or isinstance(now, bool)):
            raise InvalidParameter("now must be integer minutes from midnight")
        return service.toggle(activity, day, now)

    @app.get("/api/active")
    def active(date: str | None = Query(default=None)):
        return service.active_timers(_parse_day(date) if date else None)

    # -- queries -----------------------------------------------------------------------

    def _config(
        order: str | None,
        visible: str | None,
        smooth: bool,
        samples: int,
    ):
        if samples < 1:
            raise InvalidParameter("samples must be >= 1")
        return service.layout_config(
            order=_comma_list(order),
            visible=_comma_list(visible),
            smooth=smooth,
            samples_per_bin=samples,
        )

    @app.get("/api/days/{day}/bins")
    def day_bins(day: str):
        return service.bins_payload(_parse_day(day))

    @app.get("/api/days/{day}/layout")
    def day_layout(
        day: str,
        order: str | None = Query(default=None),
        visible: str | None = Query(default=None),
        smooth: bool = Query(default=True),
        samples: int = Query(default=8),
    ):
        return service.layout_payload(
            _parse_day(day), _config(order, visible, smooth, samples)
        )

    @app.get("/api/days/{day}/patterns")
    def day_patterns(day: str):
        return service.patterns_payload(_parse_day(day))

    @app.get("/api/days/{day}/score")
    def day_score(day: str):
        return service.score_payload(_parse_day(day))

    @app.get("/api/days/{day}/svg")
    def day_svg(
        day: str,
        order: str | None = Query(default=None),
        visible: str | None = Query(default=None),
        smooth: bool = Query(default=True),
        samples: int = Query(default=8),
        width: int = Query(default=960),
        height: int = Query(default=420),
    ):
        document = service.svg_document(
            _parse_day(day), _config(order, visible, smooth, samples), width, height
        )
        return Response(content=document, media_type="image/svg+xml")

    @app.get("/api/week/{day}/layouts")
    def week(
        day: str,
        order: str | None = Query(default=None),
        visible: str | None = Query(default=None),
        smooth: bool = Query(default=True),
        samples: int = Query(default=8),
    ):
        return service.week_payload(
            _parse_day(day), _config(order, visible, smooth, samples)
        )

    # -- goals ---------------------------------------------------------------------------

    @app.get("/api/goals")
    def list_goals():
        return service.list_goals()

    @app.post("/api/goals")
    def add_goal(body: dict = Body(...)):
        activity = body.get("activity")
        target = body.get("target_minutes")
        date_raw = body.get("date")
        if not isinstance(activity, str) or not isinstance(date_raw, str):
            raise InvalidParameter("body needs activity and date fields")
        if not isinstance(target, int) or isinstance(target, bool):
            raise InvalidParameter("target_minutes must be an integer")
        return service.add_goal(activity, target, _parse_day(date_raw))

    @app.get("/api/goals/{goal_id}/progress")
    def goal_progress(goal_id: str, date: str | None = Query(default=None)):
        return service.goal_progress(
            goal_id, _parse_day(date) if date else None
        )

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        # mounted last so /api routes always win
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def serve(
    journal_path: str | Path,
    port: int | None = None,
    host: str = "127.0.0.1",
    static_dir: str | Path | None = None,
) -> None:
    """Run the service until interrupted; the journal is created if absent.

    static_dir (or $AR_STATIC_DIR), when set, serves the built web UI at /.
    """
    import uvicorn

    from .errors import IoFailure

    if port is None:
        port = int(os.environ.get("AR_PORT", DEFAULT_PORT))
    if static_dir is None:
        static_dir = os.environ.get("AR_STATIC_DIR") or None
    service = JournalService(journal_path)
    app = create_app(service, static_dir=static_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            raise IoFailure(f"port {port} is already in use") from exc
        raise
