"""Date parsing and formatting.

Canonical textual form everywhere is ISO 8601 (YYYY-MM-DD, optionally
THH:MM).  Imports additionally accept the two legacy spreadsheet forms
seen in exported request sheets: `1-May-14` and `5/12/2014`.
"""

from __future__ import annotations

import re
from datetime import date, datetime
from typing import Union

from .errors import ValidationError

DateLike = Union[date, datetime]

_MONTHS = {
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "may": 5, "jun": 6,
    "jul": 7, "aug": 8, "sep": 9, "oct": 10, "nov": 11, "dec": 12,
}

_DMY_RE = re.compile(r"^(\d{1,2})-([A-Za-z]{3})-(\d{2})$")
_MDY_RE = re.compile(r"^(\d{1,2})/(\d{1,2})/(\d{4})$")


def parse_date(text: str) -> DateLike:
    """Parse a date or date-time; returns datetime only when a time is present."""
    token = text.strip()
    if not token:
        raise ValidationError("empty date")
    if "T" in token:
        try:
            return datetime.fromisoformat(token)
        except ValueError:
            raise ValidationError(f"invalid date-time: {text!r}") from None
    m = _DMY_RE.match(token)
    if m:
        day, mon, yy = m.groups()
        month = _MONTHS.get(mon.lower())
        if month is None:
            raise ValidationError(f"unknown month in date: {text!r}")
        return _checked_date(2000 + int(yy), month, int(day), text)
    m = _MDY_RE.match(token)
    if m:
        month, day, year = m.groups()
        return _checked_date(int(year), int(month), int(day), text)
    try:
        return date.fromisoformat(token)
    except ValueError:
        raise ValidationError(f"invalid date: {text!r}") from None


def _checked_date(year: int, month: int, day: int, original: str) -> date:
    try:
        return date(year, month, day)
    except ValueError:
        raise ValidationError(f"invalid date: {original!r}") from None


def parse_date_only(text: str) -> date:
    """Parse a date; a time component is rejected."""
    value = parse_date(text)
    if isinstance(value, datetime):
        raise ValidationError(f"expected a plain date, got date-time: {text!r}")
    return value


def format_date(value: DateLike) -> str:
    """ISO form; date-times keep minutes only (seconds are never tracked)."""
    if isinstance(value, datetime):
        return value.strftime("%Y-%m-%dT%H:%M")
    return value.isoformat()


def date_part(value: DateLike) -> date:
    if isinstance(value, datetime):
        return value.date()
    return value


def as_datetime(value: DateLike) -> datetime:
    """Coerce to a datetime; plain dates become midnight."""
    if isinstance(value, datetime):
        return value
    return datetime(value.year, value.month, value.day)
