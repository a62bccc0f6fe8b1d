import json

import pytest
from pydantic import ValidationError

from dcdiff.errors import RecordCorrupt
from dcdiff.models import SearchRecord
from dcdiff.records import RecordStore, record_store_append, record_store_best


def make_record(n=4, best_size=9, diffs=(1, 2, 3), **extra):
    return SearchRecord(n=n, best_size=best_size, witness_diffs=list(diffs), mode="exhaustive", **extra)


class TestSearchRecord:
    def test_witness_length_checked(self):
        with pytest.raises(ValidationError):
            make_record(diffs=(1, 2))

    def test_witness_must_increase(self):
        with pytest.raises(ValidationError):
            make_record(diffs=(1, 3, 2))

    def test_schema_version(self):
        assert make_record().model_dump()["v"] == 1
        with pytest.raises(ValidationError):
            SearchRecord.model_validate({**make_record().model_dump(), "v": 2})

    def test_witness_set(self):
        assert make_record().witness_set() == [0, 1, 3, 6]


class TestRecordStore:
    def test_missing_store_is_empty(self, tmp_path):
        store = RecordStore(str(tmp_path / "runs.jsonl"))
        assert store.load() == []
        assert store.best(4) is None

    def test_append_stamps_timestamp(self, tmp_path):
        path = str(tmp_path / "runs.jsonl")
        written = record_store_append(make_record(), path)
        assert written.timestamp is not None
        assert RecordStore(path).load() == [written]

    def test_append_keeps_existing_timestamp(self, tmp_path):
        path = str(tmp_path / "runs.jsonl")
        written = record_store_append(make_record(timestamp="2020-01-01T00:00:00+00:00"), path)
        assert written.timestamp == "2020-01-01T00:00:00+00:00"

    def test_best_prefers_smaller_then_complete(self, tmp_path):
        path = str(tmp_path / "runs.jsonl")
        record_store_append(make_record(best_size=10, diffs=(1, 2, 4)), path)
        record_store_append(make_record(best_size=9, complete=False), path)
        complete = record_store_append(make_record(best_size=9, complete=True), path)
        record_store_append(make_record(n=5, best_size=12, diffs=(1, 2, 3, 4)), path)
        assert record_store_best(4, path) == complete
        assert record_store_best(6, path) is None

    def test_best_earliest_on_full_tie(self, tmp_path):
        path = str(tmp_path / "runs.jsonl")
        first = record_store_append(make_record(timestamp="a"), path)
        record_store_append(make_record(timestamp="b"), path)
        assert record_store_best(4, path) == first

    def test_corrupt_line_reports_number(self, tmp_path):
        path = tmp_path / "runs.jsonl"
        good = make_record().model_dump_json()
        path.write_text(good + "\n\n" + good + "\n{not json\n")
        with pytest.raises(RecordCorrupt) as excinfo:
            RecordStore(str(path)).load()
        assert excinfo.value.line_number == 4
        assert "line 4 of" in str(excinfo.value)

    def test_undecodable_line_reports_number(self, tmp_path):
        path = tmp_path / "runs.jsonl"
        path.write_bytes(make_record().model_dump_json().encode() + b"\n\xff\xfe\n")
        with pytest.raises(RecordCorrupt) as excinfo:
            RecordStore(str(path)).load()
        assert excinfo.value.line_number == 2
        assert "not UTF-8" in str(excinfo.value)

    def test_invalid_record_reports_number(self, tmp_path):
        path = tmp_path / "runs.jsonl"
        bad = json.dumps({"v": 1, "n": 3, "best_size": 6, "witness_diffs": [1], "mode": "exhaustive"})
        path.write_text(bad + "\n")
        with pytest.raises(RecordCorrupt) as excinfo:
            RecordStore(str(path)).load()
        assert excinfo.value.line_number == 1
