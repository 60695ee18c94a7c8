"""HTTP facade over the store, priority matrix, reports, metrics, and scheduler.

Every handler loads the store fresh from disk, so the process holds no
request state between calls; anything a 4xx rejects is validated before
the first byte is written, which keeps failed calls from mutating the
store file.  Dates travel as ISO 8601 strings.
"""

from __future__ import annotations

import argparse
import json
import os
from dataclasses import replace
from datetime import date, datetime
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request as HttpRequest
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .dates import format_date, parse_date, parse_date_only
from .errors import (
    ConfigurationError,
    NotFoundError,
    TransitionError,
    ValidationError,
)
from .fileio import atomic_write_text, write_lock
from .metrics import (
    DeskEvent,
    EventKind,
    compute_metrics,
    events_to_csv,
    parse_events_csv,
)
from .model import (
    DEFAULT_CALENDAR,
    DEFAULT_PRIORITY_MATRIX,
    Priority,
    PriorityMatrix,
    Request,
    Status,
    transition,
)
from .reporting import (
    SettingsFile,
    build_detailed,
    build_overview,
    emit_files,
)
from .scheduling import Job, compare
from .store import RequestStore

MATRIX_NAME = "priority_matrix.json"
EVENTS_NAME = "desk_events.csv"


# -- request bodies ------------------------------------------------------

class RequestIn(BaseModel):
    creation: str
    issue_type: str
    priority: str
    subject: str
    status: str = "Open"
    assignee: Optional[str] = None
    completion: Optional[str] = None


class RequestPatch(BaseModel):
    status: Optional[str] = None
    priority: Optional[str] = None
    assignee: Optional[str] = None
    completion: Optional[str] = None


class EventIn(BaseModel):
    kind: str
    at: str
    case_id: Optional[str] = None
    answer_delay_s: Optional[float] = None


class JobIn(BaseModel):
    id: str
    duration_h: float
    deadline_h: float
    priority: int


class SimulateIn(BaseModel):
    jobs: list[JobIn]


class PrepareIn(BaseModel):
    as_of: Optional[str] = None
    output_dir: Optional[str] = None
    overview_name: Optional[str] = None
    detailed_name: Optional[str] = None


def request_to_json(req: Request) -> dict:
    return {
        "issue_id": req.issue_id,
        "creation": format_date(req.creation),
        "issue_type": req.issue_type,
        "priority": req.priority.value,
        "subject": req.subject,
        "status": req.status.value,
        "completion": format_date(req.completion) if req.completion else None,
        "assignee": req.assignee,
    }


def _error_body(status: int, code: str, message: str, details: Optional[list] = None) -> dict:
    return {"status": status, "code": code, "message": message, "details": details}


def load_matrix(path: Path) -> PriorityMatrix:
    """Matrix currently in force; a fresh deployment runs on the defaults."""
    if not path.exists():
        return DEFAULT_PRIORITY_MATRIX
    return PriorityMatrix.from_dict(json.loads(path.read_text(encoding="utf-8")))


def save_matrix(path: Path, matrix: PriorityMatrix) -> None:
    with write_lock(path):
        atomic_write_text(path, json.dumps(matrix.to_dict(), indent=2) + "\n")


def _parse_as_of(raw: Optional[str]) -> date:
    return parse_date_only(raw) if raw else date.today()


def _parse_events(payload: list[EventIn]) -> list[DeskEvent]:
    events = []
    for i, item in enumerate(payload):
        try:
            kind = EventKind(item.kind)
        except ValueError:
            raise ValidationError(f"event {i}: unknown kind {item.kind!r}") from None
        try:
            at = datetime.fromisoformat(item.at)
        except ValueError:
            raise ValidationError(f"event {i}: bad timestamp {item.at!r}") from None
        events.append(DeskEvent(kind, at, item.case_id, item.answer_delay_s))
    return events


def create_app(
    store_path: Path,
    output_dir: Optional[Path] = None,
    matrix_path: Optional[Path] = None,
    events_path: Optional[Path] = None,
) -> FastAPI:
    store_path = Path(store_path)
    base = store_path.parent
    app = FastAPI(title="slatrack", docs_url=None, redoc_url=None)
    app.state.store_path = store_path
    app.state.output_dir = Path(output_dir) if output_dir else base
    app.state.matrix_path = Path(matrix_path) if matrix_path else base / MATRIX_NAME
    app.state.events_path = Path(events_path) if events_path else base / EVENTS_NAME

    # The dashboard is served from its own origin.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _json_error(status: int, code: str, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=status, content=_error_body(status, code, str(exc)))

    @app.exception_handler(ValidationError)
    async def _on_validation(_req: HttpRequest, exc: ValidationError):
        return _json_error(422, "validation_error", exc)

    @app.exception_handler(ConfigurationError)
    async def _on_configuration(_req: HttpRequest, exc: ConfigurationError):
        return _json_error(422, "configuration_error", exc)

    @app.exception_handler(NotFoundError)
    async def _on_not_found(_req: HttpRequest, exc: NotFoundError):
        return _json_error(404, "not_found", exc)

    @app.exception_handler(TransitionError)
    async def _on_transition(_req: HttpRequest, exc: TransitionError):
        return _json_error(409, "transition_error", exc)

    @app.exception_handler(RequestValidationError)
    async def _on_body_shape(_req: HttpRequest, exc: RequestValidationError):
        details = [
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
            for err in exc.errors()
        ]
        body = _error_body(422, "validation_error", "malformed request body", details)
        return JSONResponse(status_code=422, content=body)

    def _store() -> RequestStore:
        return RequestStore.load(app.state.store_path)

    def _matrix() -> PriorityMatrix:
        return load_matrix(app.state.matrix_path)

    # -- requests ------------------------------------------------------

    @app.post("/requests", status_code=201)
    def create_request(body: RequestIn):
        store = _store()
        req = Request(
            issue_id=store.allocate_id(),
            creation=parse_date(body.creation),
            issue_type=body.issue_type,
            priority=Priority.parse(body.priority),
            subject=body.subject,
            status=Status.parse(body.status),
            completion=parse_date(body.completion) if body.completion else None,
            assignee=body.assignee,
        )
        store.upsert(req)
        store.save()
        return request_to_json(req)

    @app.get("/requests")
    def list_requests(
        status: Optional[str] = None,
        priority: Optional[str] = None,
        issue_type: Optional[str] = None,
    ):
        requests = _store().list(
            status=Status.parse(status) if status else None,
            priority=Priority.parse(priority) if priority else None,
            issue_type=issue_type,
        )
        return [request_to_json(r) for r in requests]

    @app.get("/requests/{issue_id}")
    def get_request(issue_id: str):
        return request_to_json(_store().get(issue_id))

    @app.patch("/requests/{issue_id}")
    def patch_request(issue_id: str, body: RequestPatch):
        store = _store()
        req = store.get(issue_id)
        if body.priority is not None:
            req = replace(req, priority=Priority.parse(body.priority))
        if body.status is not None:
            req = transition(
                req,
                Status.parse(body.status),
                at=parse_date(body.completion) if body.completion else None,
                assignee=body.assignee,
            )
        elif body.completion is not None or body.assignee is not None:
            raise ValidationError("completion and assignee only apply with a status change")
        store.upsert(req)
        store.save()
        return request_to_json(req)

    # -- priority matrix -----------------------------------------------

    @app.get("/priority-matrix")
    def get_matrix():
        return _matrix().to_dict()

    @app.put("/priority-matrix")
    def put_matrix(body: dict):
        matrix = PriorityMatrix.from_dict(body)
        save_matrix(app.state.matrix_path, matrix)
        return matrix.to_dict()

    # -- reports and files ---------------------------------------------

    @app.get("/reports/detailed")
    def detailed_report(as_of: Optional[str] = None):
        rows = build_detailed(_store().list(), _matrix(), DEFAULT_CALENDAR, _parse_as_of(as_of))
        return [row.to_dict() for row in rows]

    @app.get("/reports/overview")
    def overview_report(as_of: Optional[str] = None):
        snapshot = _parse_as_of(as_of)
        rows = build_detailed(_store().list(), _matrix(), DEFAULT_CALENDAR, snapshot)
        return [row.to_dict() for row in build_overview(rows, snapshot)]

    @app.post("/files/prepare")
    def prepare_files(body: PrepareIn):
        out_dir = Path(body.output_dir) if body.output_dir else app.state.output_dir
        if not out_dir.is_dir():
            raise ValidationError(f"output directory does not exist: {out_dir}")
        snapshot = _parse_as_of(body.as_of)
        settings = SettingsFile(
            output_dir=out_dir,
            **{k: v for k, v in {
                "overview_name": body.overview_name,
                "detailed_name": body.detailed_name,
            }.items() if v},
        )
        detailed = build_detailed(_store().list(), _matrix(), DEFAULT_CALENDAR, snapshot)
        overview = build_overview(detailed, snapshot)
        paths = emit_files(overview, detailed, settings)
        return {"paths": [str(p) for p in paths]}

    # -- desk metrics --------------------------------------------------

    @app.post("/metrics/events")
    def add_events(body: list[EventIn]):
        new = _parse_events(body)
        path = app.state.events_path
        with write_lock(path):
            existing = parse_events_csv(path.read_text(encoding="utf-8")) if path.exists() else []
            atomic_write_text(path, events_to_csv(existing + new))
        return {"stored": len(new), "total": len(existing) + len(new)}

    @app.get("/metrics/desk")
    def desk_metrics(
        from_: Optional[str] = Query(None, alias="from"),
        to: Optional[str] = None,
        tsf_threshold_s: float = 20.0,
    ):
        if (from_ is None) != (to is None):
            raise ValidationError("from and to must be given together")
        window = None
        if from_ is not None:
            try:
                window = (datetime.fromisoformat(from_), datetime.fromisoformat(to))
            except ValueError as exc:
                raise ValidationError(f"bad window bound: {exc}") from None
        path = app.state.events_path
        events = parse_events_csv(path.read_text(encoding="utf-8")) if path.exists() else []
        return compute_metrics(events, tsf_threshold_s=tsf_threshold_s, window=window).to_dict()

    # -- scheduler -----------------------------------------------------

    @app.post("/scheduler/simulate")
    def simulate(body: SimulateIn):
        jobs = [Job(j.id, j.duration_h, j.deadline_h, j.priority) for j in body.jobs]
        return compare(jobs).to_dict()

    return app


def main(argv: Optional[list[str]] = None) -> None:
    parser = argparse.ArgumentParser(prog="sla-api", description="Serve the SLA tracking API.")
    parser.add_argument("--host", default=os.environ.get("SLATRACK_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("SLATRACK_PORT", "8000")))
    parser.add_argument("--store", default=os.environ.get("SLATRACK_STORE", "requests.csv"))
    parser.add_argument("--out-dir", default=os.environ.get("SLATRACK_OUT_DIR"))
    parser.add_argument("--matrix", default=os.environ.get("SLATRACK_MATRIX"))
    args = parser.parse_args(argv)

    import uvicorn

    app = create_app(
        Path(args.store),
        output_dir=Path(args.out_dir) if args.out_dir else None,
        matrix_path=Path(args.matrix) if args.matrix else None,
    )
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
