"""Append-only JSON-lines store for search records."""

import datetime
import json
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .config import format_validation_error
from .errors import RecordCorrupt
from .models import SearchRecord


class RecordStore:
    """One SearchRecord per line; lines are never rewritten."""

    def __init__(self, path: str):
        self.path = Path(path)

    def append(self, record: SearchRecord) -> SearchRecord:
        """
        Append a record, stamping it with the current UTC time if unstamped.

        Returns:
            The record as written
        """
        if record.timestamp is None:
            record = record.model_copy(
                update={"timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat()}
            )

        with open(self.path, "a", encoding="utf-8") as f:
            f.write(record.model_dump_json() + "\n")
        return record

    def load(self) -> List[SearchRecord]:
        """
        Read every record in file order.

        Raises:
            RecordCorrupt: On the first line that is not a valid record
        """
        records = []
        if not self.path.exists():
            return records

        with open(self.path, "rb") as f:
            for line_number, raw in enumerate(f, start=1):
                try:
                    line = raw.decode("utf-8").strip()
                except UnicodeDecodeError:
                    raise RecordCorrupt(str(self.path), line_number, "not UTF-8 text")
                if not line:
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError as e:
                    raise RecordCorrupt(str(self.path), line_number, f"invalid JSON ({e.msg})")
                try:
                    records.append(SearchRecord.model_validate(data))
                except ValidationError as e:
                    raise RecordCorrupt(
                        str(self.path), line_number, "\n" + format_validation_error(e)
                    )
        return records

    def best(self, n: int) -> Optional[SearchRecord]:
        """
        Smallest best_size recorded for n; complete records win ties, then
        the earliest line.
        """
        candidates = [record for record in self.load() if record.n == n]
        if not candidates:
            return None
        return min(candidates, key=lambda record: (record.best_size, not record.complete))


def record_store_append(record: SearchRecord, path: str) -> SearchRecord:
    """Append a record to the store at path."""
    return RecordStore(path).append(record)


def record_store_best(n: int, path: str) -> Optional[SearchRecord]:
    """Best record for n in the store at path, or None."""
    return RecordStore(path).best(n)
