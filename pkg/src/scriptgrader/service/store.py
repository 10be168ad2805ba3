"""Append-only journal persistence for the grading workflow.

Each entity type gets one JSON-lines journal under the data directory.
Records are never rewritten: updates append a new version and the
in-memory index (rebuilt on startup) keeps the latest version per id,
listed in first-appearance order. The journals double as an audit trail.
"""
from __future__ import annotations

import json
import os
import threading
from typing import Iterator


class NotFound(KeyError):
    pass


class Journal:
    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()
        self._records: dict[str, dict] = {}
        self._order: list[str] = []
        if os.path.exists(path):
            with open(path, encoding="utf-8") as f:
                for line in f:
                    line = line.strip()
                    if line:
                        self._index(json.loads(line))

    def _index(self, record: dict) -> None:
        rid = record["id"]
        if rid not in self._records:
            self._order.append(rid)
        self._records[rid] = record

    def put(self, record: dict) -> dict:
        if "id" not in record:
            raise ValueError("record must carry an 'id'")
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record, sort_keys=True) + "\n")
            self._index(record)
        return record

    def get(self, rid: str) -> dict:
        try:
            return self._records[rid]
        except KeyError:
            raise NotFound(rid) from None

    def __contains__(self, rid: str) -> bool:
        return rid in self._records

    def __iter__(self) -> Iterator[dict]:
        return (self._records[rid] for rid in self._order)


class Store:
    """One journal per entity type under a shared data directory."""

    def __init__(self, data_dir: str):
        os.makedirs(data_dir, exist_ok=True)
        self.data_dir = data_dir
        self.exams = Journal(os.path.join(data_dir, "exams.jsonl"))
        self.submissions = Journal(os.path.join(data_dir, "submissions.jsonl"))
        self.reports = Journal(os.path.join(data_dir, "reports.jsonl"))
        self.discrepancies = Journal(os.path.join(data_dir, "discrepancies.jsonl"))
