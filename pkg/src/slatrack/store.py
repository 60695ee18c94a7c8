"""File-backed request repository.

Requests persist as a CSV sheet (same dialect as the detailed report,
without the computed columns, plus the assignee) with a `#next_seq=`
metadata line right after the header.  Writes go through a temp file and
atomic rename under an advisory `<store>.lock`, so a reader never sees a
torn file and concurrent writers serialize.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .dates import format_date, parse_date
from .errors import NotFoundError, ValidationError
from .fileio import atomic_write_text, write_lock
from .model import Priority, Request, Status

STORE_HEADER = [
    "Issue ID", "Creation Date", "Issue Type", "Priority",
    "Subject", "Status", "Completion Date", "Assignee",
]
# External sheets come without the assignee column.
SHEET_HEADER = STORE_HEADER[:-1]

_SEQ_LINE_RE = re.compile(r"^#next_seq=(\d+)$")


@dataclass(frozen=True)
class RowError:
    line: int
    message: str

    def __str__(self) -> str:
        return f"row {self.line}: {self.message}"


def _id_suffix(issue_id: str) -> int:
    return int(issue_id.lstrip("R"))


def _normalize_header(row: list[str]) -> list[str]:
    return [cell.strip().lower() for cell in row]


def import_requests_csv(text: str) -> tuple[list[Request], list[RowError]]:
    """Parse a request sheet; bad rows are reported, good rows returned.

    Accepts ISO dates plus the `1-May-14` and `5/12/2014` spreadsheet forms,
    and tolerates a trailing Assignee column.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError("request sheet is empty") from None
    normalized = _normalize_header(header)
    if normalized == _normalize_header(STORE_HEADER):
        has_assignee = True
    elif normalized == _normalize_header(SHEET_HEADER):
        has_assignee = False
    else:
        raise ValidationError(f"unreadable request sheet header: {header!r}")

    requests: list[Request] = []
    errors: list[RowError] = []
    seen: set[str] = set()
    for lineno, record in enumerate(reader, start=2):
        if not record or _SEQ_LINE_RE.match(record[0]):
            continue
        expected = len(STORE_HEADER) if has_assignee else len(SHEET_HEADER)
        if len(record) != expected:
            errors.append(RowError(lineno, f"expected {expected} columns, got {len(record)}"))
            continue
        try:
            requests.append(_parse_row(record, has_assignee, seen))
        except ValidationError as exc:
            errors.append(RowError(lineno, str(exc)))
    return requests, errors


def _parse_row(record: list[str], has_assignee: bool, seen: set[str]) -> Request:
    issue_id = record[0].strip()
    if issue_id in seen:
        raise ValidationError(f"duplicate issue id {issue_id!r}")
    completion_s = record[6].strip()
    request = Request(
        issue_id=issue_id,
        creation=parse_date(record[1]),
        issue_type=record[2].strip(),
        priority=Priority.parse(record[3]),
        subject=record[4].strip(),
        status=Status.parse(record[5]),
        completion=parse_date(completion_s) if completion_s else None,
        assignee=(record[7].strip() or None) if has_assignee else None,
    )
    seen.add(issue_id)
    return request


def _row_cells(req: Request) -> list[str]:
    return [
        req.issue_id,
        format_date(req.creation),
        req.issue_type,
        req.priority.value,
        req.subject,
        req.status.label,
        format_date(req.completion) if req.completion else "",
        req.assignee or "",
    ]


def export_requests_csv(requests: list[Request]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STORE_HEADER)
    for req in requests:
        writer.writerow(_row_cells(req))
    return buf.getvalue()


class RequestStore:
    """In-memory view of one store file; call save() to persist."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._requests: dict[str, Request] = {}
        self.next_seq = 1

    # -- persistence ---------------------------------------------------

    @classmethod
    def load(cls, path: Path) -> "RequestStore":
        store = cls(path)
        if not store.path.exists():
            return store
        text = store.path.read_text(encoding="utf-8")
        stored_seq = 1
        for line in text.splitlines():
            m = _SEQ_LINE_RE.match(line)
            if m:
                stored_seq = int(m.group(1))
                break
        requests, errors = import_requests_csv(text)
        if errors:
            details = "; ".join(str(e) for e in errors)
            raise ValidationError(f"corrupt store file {store.path}: {details}")
        for req in requests:
            store._requests[req.issue_id] = req
        store.next_seq = max(stored_seq, store._max_suffix() + 1)
        return store

    def save(self) -> None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(STORE_HEADER)
        buf.write(f"#next_seq={self.next_seq}\n")
        for req in self._requests.values():
            writer.writerow(_row_cells(req))
        with write_lock(self.path):
            atomic_write_text(self.path, buf.getvalue())

    # -- repository ----------------------------------------------------

    def _max_suffix(self) -> int:
        return max((_id_suffix(i) for i in self._requests), default=0)

    def allocate_id(self) -> str:
        """Next unique id: 'R' plus the sequence number, at least four digits."""
        issue_id = f"R{self.next_seq:04d}"
        self.next_seq += 1
        return issue_id

    def upsert(self, request: Request) -> None:
        self._requests[request.issue_id] = request
        self.next_seq = max(self.next_seq, _id_suffix(request.issue_id) + 1)

    def get(self, issue_id: str) -> Request:
        try:
            return self._requests[issue_id]
        except KeyError:
            raise NotFoundError(f"no request with id {issue_id!r}") from None

    def delete(self, issue_id: str) -> None:
        if issue_id not in self._requests:
            raise NotFoundError(f"no request with id {issue_id!r}")
        del self._requests[issue_id]

    def list(
        self,
        status: Optional[Status] = None,
        priority: Optional[Priority] = None,
        issue_type: Optional[str] = None,
    ) -> list[Request]:
        out = []
        for req in self._requests.values():
            if status is not None and req.status is not status:
                continue
            if priority is not None and req.priority is not priority:
                continue
            if issue_type is not None and req.issue_type != issue_type:
                continue
            out.append(req)
        return out

    def __len__(self) -> int:
        return len(self._requests)
