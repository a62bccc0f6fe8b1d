import json

import pytest
import yaml

from dcdiff.config import (
    generate_starter_suite,
    load_suite,
    resolve_job,
    resolve_suite,
    validate_suite_file,
)
from dcdiff.errors import ConfigError, SetFileError
from dcdiff.set_files import read_set_file, write_set_file
from dcdiff.sets import make_set


def write_suite(tmp_path, data, name="suite.yaml"):
    path = tmp_path / name
    path.write_text(yaml.dump(data))
    return str(path)


class TestSetFiles:
    def test_round_trip(self, tmp_path):
        S = make_set(["0", "1/8", "3/8", "-5"])
        path = tmp_path / "s.json"
        write_set_file(S, path)
        assert read_set_file(path) == S

    def test_unsorted_input(self, write_set):
        assert list(read_set_file(write_set("a.json", [3, 0, 1]))) == [0, 1, 3]

    def test_missing_file(self, tmp_path):
        with pytest.raises(SetFileError) as excinfo:
            read_set_file(tmp_path / "nope.json")
        assert "nope.json" in str(excinfo.value)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("[1, 2")
        with pytest.raises(SetFileError):
            read_set_file(path)

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "latin1.json"
        path.write_bytes(b'["\xff"]')
        with pytest.raises(SetFileError) as excinfo:
            read_set_file(path)
        assert "not UTF-8" in str(excinfo.value)

    def test_not_an_array(self, tmp_path):
        path = tmp_path / "obj.json"
        path.write_text(json.dumps({"a": 1}))
        with pytest.raises(SetFileError):
            read_set_file(path)

    def test_duplicate_named(self, write_set):
        with pytest.raises(SetFileError) as excinfo:
            read_set_file(write_set("dup.json", ["1/2", "2/4"]))
        assert "dup.json" in str(excinfo.value)


class TestLoadSuite:
    def test_inline_and_file_sets(self, tmp_path, write_set):
        write_set("b.json", [0, 5, 11])
        path = write_suite(
            tmp_path,
            {"name": "smoke", "jobs": [{"theorem": 1, "A": ["0", "1", "3"], "B": "b.json"}]},
        )
        suite = load_suite(path)
        kwargs = resolve_suite(suite, path)[0]
        assert kwargs["theorem"] == 1
        assert list(kwargs["B"]) == [0, 5, 11]

    def test_image_means_mapped_a(self, tmp_path):
        path = write_suite(
            tmp_path,
            {
                "name": "t4",
                "jobs": [
                    {
                        "theorem": 4,
                        "A": [1, 2, 3],
                        "map": {"kind": "power", "exponent": 2},
                        "B": "image",
                        "C": [1, 2, 3],
                    }
                ],
            },
        )
        suite = load_suite(path)
        kwargs = resolve_job(suite.jobs[0], tmp_path)
        assert list(kwargs["B"]) == [1, 4, 9]
        assert kwargs["F"].exponent == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_suite(str(tmp_path / "missing.yaml"))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        with pytest.raises(ConfigError):
            load_suite(str(path))

    def test_bad_yaml(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("name: [unclosed\n")
        with pytest.raises(ConfigError):
            load_suite(str(path))

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "suite.yaml"
        path.write_bytes(b"name: \xff\n")
        with pytest.raises(ConfigError):
            load_suite(str(path))

    def test_missing_required_set(self, tmp_path):
        path = write_suite(tmp_path, {"name": "x", "jobs": [{"theorem": 3, "A": [0, 1], "B": [0]}]})
        with pytest.raises(ConfigError) as excinfo:
            load_suite(path)
        assert "A2" in str(excinfo.value)

    def test_image_only_for_theorem4(self, tmp_path):
        path = write_suite(tmp_path, {"name": "x", "jobs": [{"theorem": 1, "A": [0, 1], "B": "image"}]})
        with pytest.raises(ConfigError):
            load_suite(path)

    def test_resolve_names_job(self, tmp_path):
        path = write_suite(
            tmp_path, {"name": "x", "jobs": [{"theorem": 1, "name": "broken", "A": [0, 1], "B": "gone.json"}]}
        )
        with pytest.raises(ConfigError) as excinfo:
            resolve_suite(load_suite(path), path)
        assert "broken" in str(excinfo.value)


class TestValidate:
    def test_valid(self, tmp_path):
        path = write_suite(tmp_path, {"name": "ok", "jobs": [{"theorem": 2, "A": [0, 1, 3], "B": [0, 2]}]})
        is_valid, message = validate_suite_file(path)
        assert is_valid
        assert "Theorem 2" in message

    def test_invalid(self, tmp_path):
        path = write_suite(tmp_path, {"name": "bad", "jobs": []})
        is_valid, message = validate_suite_file(path)
        assert not is_valid
        assert "Validation failed" in message


def test_starter_suite(tmp_path, write_set):
    a = write_set("a.json", [0, 1, 3])
    b = write_set("b.json", [0, 5, 11])
    output = str(tmp_path / "suite.yaml")
    suite = generate_starter_suite([a, b], output)
    assert len(suite.jobs) == 8
    reloaded = load_suite(output)
    assert [job.theorem for job in reloaded.jobs[:2]] == [1, 2]
    assert len(resolve_suite(reloaded, output)) == 8
