import json

import pytest

from dcdiff.sets import make_set


@pytest.fixture
def write_set(tmp_path):
    """Write a JSON set file under tmp_path and return its path as a string."""

    def _write(name, values):
        path = tmp_path / name
        path.write_text(json.dumps([str(v) for v in values]))
        return str(path)

    return _write


@pytest.fixture
def small_pair():
    return make_set([0, 1, 3]), make_set([0, 5, 11])
