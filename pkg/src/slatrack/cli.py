"""slactl: command-line operation against a local store, no server needed.

Exit codes: 0 success, 1 validation or domain error, 2 I/O error,
64 usage error.  Errors go to stderr, data to stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
from datetime import date
from pathlib import Path
from typing import Optional

from .api import EVENTS_NAME, MATRIX_NAME, load_matrix, save_matrix
from .dates import as_datetime, parse_date, parse_date_only
from .errors import SlaTrackError, ValidationError
from .metrics import compute_metrics, parse_events_csv
from .model import (
    DEFAULT_CALENDAR,
    CalendarMode,
    Priority,
    PriorityMatrix,
    Request,
    SlaDuration,
    Status,
)
from .reporting import (
    DETAILED_HEADER,
    SettingsFile,
    build_detailed,
    build_overview,
    detailed_cells,
    detailed_to_csv,
    emit_files,
    overview_cells,
    overview_header,
    overview_issue_types,
    overview_to_csv,
)
from .scheduling import compare, comparison_to_csv, parse_jobs_csv
from .store import RequestStore, import_requests_csv

USAGE_ERROR = 64


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for I/O.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def render_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _store_path(args) -> Path:
    return Path(args.store)


def _matrix_path(args) -> Path:
    if args.matrix:
        return Path(args.matrix)
    return _store_path(args).parent / MATRIX_NAME


def _out_dir(args) -> Path:
    if args.out_dir:
        return Path(args.out_dir)
    return _store_path(args).parent


def _as_of(args) -> date:
    return parse_date_only(args.as_of) if args.as_of else date.today()


def _load_store(args) -> RequestStore:
    return RequestStore.load(_store_path(args))


def _build_reports(args):
    store = _load_store(args)
    matrix = load_matrix(_matrix_path(args))
    snapshot = _as_of(args)
    detailed = build_detailed(store.list(), matrix, DEFAULT_CALENDAR, snapshot)
    return detailed, build_overview(detailed, snapshot)


# -- subcommands ---------------------------------------------------------

def cmd_import(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    requests, errors = import_requests_csv(text)
    store = _load_store(args)
    for req in requests:
        store.upsert(req)
    store.save()
    print(f"imported {len(requests)} requests into {store.path}")
    for err in errors:
        print(f"skipped {err}", file=sys.stderr)
    return 1 if errors else 0


def cmd_add(args) -> int:
    store = _load_store(args)
    req = Request(
        issue_id=store.allocate_id(),
        creation=parse_date(args.creation) if args.creation else date.today(),
        issue_type=args.type,
        priority=Priority.parse(args.priority),
        subject=args.subject,
        status=Status.parse(args.status),
        assignee=args.assignee,
    )
    store.upsert(req)
    store.save()
    print(req.issue_id)
    return 0


def cmd_set_matrix(args) -> int:
    matrix = PriorityMatrix(
        {
            Priority.CRITICAL: SlaDuration.parse(args.critical),
            Priority.HIGH: SlaDuration.parse(args.high),
            Priority.MEDIUM: SlaDuration.parse(args.medium),
            Priority.LOW: SlaDuration.parse(args.low),
        },
        calendar_mode=CalendarMode(args.mode),
    )
    save_matrix(_matrix_path(args), matrix)
    print(f"priority matrix written to {_matrix_path(args)}")
    return 0


def cmd_show_matrix(args) -> int:
    matrix = load_matrix(_matrix_path(args))
    rows = [
        [priority.value, str(duration)]
        for priority, duration in sorted(
            matrix.entries.items(), key=lambda kv: list(Priority).index(kv[0])
        )
    ]
    sys.stdout.write(render_table(["Priority", "Resolution Time"], rows))
    print(f"calendar mode: {matrix.calendar_mode.value}")
    return 0


def cmd_calc_sla(args) -> int:
    detailed, _ = _build_reports(args)
    sys.stdout.write(render_table(DETAILED_HEADER, [detailed_cells(r) for r in detailed]))
    return 0


def cmd_prepare_sla_file(args) -> int:
    detailed, overview = _build_reports(args)
    settings = SettingsFile(output_dir=_out_dir(args))
    for path in emit_files(overview, detailed, settings):
        print(path)
    return 0


def cmd_report(args) -> int:
    detailed, overview = _build_reports(args)
    if args.detailed:
        if args.format == "csv":
            sys.stdout.write(detailed_to_csv(detailed))
        else:
            sys.stdout.write(render_table(DETAILED_HEADER, [detailed_cells(r) for r in detailed]))
    else:
        if args.format == "csv":
            sys.stdout.write(overview_to_csv(overview))
        else:
            types = overview_issue_types(overview)
            rows = [overview_cells(r, types) for r in overview]
            sys.stdout.write(render_table(overview_header(types), rows))
    return 0


def cmd_metrics(args) -> int:
    path = Path(args.events) if args.events else _store_path(args).parent / EVENTS_NAME
    events = parse_events_csv(path.read_text(encoding="utf-8")) if path.exists() else []
    window = None
    if (args.window_from is None) != (args.window_to is None):
        raise ValidationError("--from and --to must be given together")
    if args.window_from:
        window = (as_datetime(parse_date(args.window_from)), as_datetime(parse_date(args.window_to)))
    report = compute_metrics(events, tsf_threshold_s=args.tsf_threshold, window=window)
    rows = [
        [name, "n/a" if value is None else f"{value:.2f}"]
        for name, value in report.to_dict().items()
    ]
    sys.stdout.write(render_table(["Metric", "Value"], rows))
    return 0


def cmd_simulate(args) -> int:
    jobs = parse_jobs_csv(Path(args.jobs).read_text(encoding="utf-8"))
    summary = compare(jobs)
    if args.format == "csv":
        sys.stdout.write(comparison_to_csv(summary, jobs))
        return 0
    rows = []
    for result in (summary.priority_only, summary.edf):
        for job_id in result.order:
            rows.append([
                result.policy.value,
                job_id,
                f"{result.finish_times[job_id]:g}",
                "yes" if job_id in result.missed else "no",
            ])
    sys.stdout.write(render_table(["Policy", "Job", "Finish (h)", "Missed?"], rows))
    counts = summary.missed_counts
    print(f"missed deadlines: PriorityOnly={counts['PriorityOnly']} EDF={counts['EDF']}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="slactl", description="SLA tracking from the command line.")
    parser.add_argument(
        "--store",
        default=os.environ.get("SLATRACK_STORE", "requests.csv"),
        help="request store CSV (default: %(default)s)",
    )
    parser.add_argument(
        "--matrix",
        default=os.environ.get("SLATRACK_MATRIX"),
        help="priority matrix JSON (default: sibling of the store)",
    )
    parser.add_argument(
        "--out-dir",
        default=os.environ.get("SLATRACK_OUT_DIR"),
        help="directory for prepared SLA files (default: store directory)",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("import", help="import a request sheet CSV")
    p.add_argument("file")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("add", help="register a new request")
    p.add_argument("--type", required=True, help="issue type")
    p.add_argument("--priority", required=True)
    p.add_argument("--subject", required=True)
    p.add_argument("--creation", help="creation date (default: today)")
    p.add_argument("--status", default="Open")
    p.add_argument("--assignee")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("set-matrix", help="replace the priority matrix")
    p.add_argument("--critical", required=True, help="e.g. 1d or 4h")
    p.add_argument("--high", required=True)
    p.add_argument("--medium", required=True)
    p.add_argument("--low", required=True)
    p.add_argument("--mode", default="CalendarDays", choices=["CalendarDays", "BusinessDays"])
    p.set_defaults(func=cmd_set_matrix)

    p = sub.add_parser("show-matrix", help="print the priority matrix")
    p.set_defaults(func=cmd_show_matrix)

    p = sub.add_parser("calc-sla", help="compute due dates and breach states")
    p.add_argument("--as-of", help="snapshot date (default: today)")
    p.set_defaults(func=cmd_calc_sla)

    p = sub.add_parser("prepare-sla-file", help="write the report files and settings")
    p.add_argument("--as-of")
    p.set_defaults(func=cmd_prepare_sla_file)

    p = sub.add_parser("report", help="render the overview or detailed report")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--overview", action="store_true")
    which.add_argument("--detailed", action="store_true")
    p.add_argument("--format", default="table", choices=["table", "csv"])
    p.add_argument("--as-of")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("metrics", help="compute desk metrics from an event log")
    p.add_argument("--events", help="event log CSV (default: desk_events.csv beside the store)")
    p.add_argument("--tsf-threshold", type=float, default=20.0)
    p.add_argument("--from", dest="window_from", help="window start (ISO)")
    p.add_argument("--to", dest="window_to", help="window end (ISO)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("simulate", help="compare priority-only vs deadline-aware scheduling")
    p.add_argument("--jobs", required=True, help="jobs CSV: id,duration_h,deadline_h,priority")
    p.add_argument("--format", default="table", choices=["table", "csv"])
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SlaTrackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
