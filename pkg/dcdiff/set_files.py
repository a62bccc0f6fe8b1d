"""Set files: a JSON array of "p/q" or "n" strings, e.g. ["0", "1/8", "3/8"]."""

import json
from pathlib import Path
from typing import Any, Union

from .errors import DcdiffError, SetFileError
from .sets import SortedSet, make_set


def parse_set_data(data: Any, source: str) -> SortedSet:
    """
    Build a SortedSet from decoded JSON.

    Args:
        data: Decoded JSON (must be a nonempty array)
        source: Name used in error messages (file path or "inline")

    Raises:
        SetFileError: If the data is not a valid set
    """
    if not isinstance(data, list):
        raise SetFileError(source, "expected a JSON array of \"p/q\" strings")
    try:
        return make_set(data)
    except DcdiffError as e:
        raise SetFileError(source, str(e))


def read_set_file(path: Union[str, Path]) -> SortedSet:
    """
    Read a set file.

    Raises:
        SetFileError: If the file is missing, unreadable, or malformed
    """
    set_file = Path(path)
    if not set_file.exists():
        raise SetFileError(str(path), "file not found")

    try:
        with open(set_file, "r", encoding="utf-8") as f:
            data = json.load(f)
    except UnicodeDecodeError:
        raise SetFileError(str(path), "not UTF-8 text")
    except json.JSONDecodeError as e:
        raise SetFileError(str(path), f"invalid JSON ({e.msg}, line {e.lineno})")
    except OSError as e:
        raise SetFileError(str(path), f"cannot read ({e.strerror})")

    return parse_set_data(data, str(path))


def write_set_file(S: SortedSet, path: Union[str, Path]):
    """Write a set file that read_set_file parses back to an equal set."""
    with open(path, "w") as f:
        json.dump(S.to_strings(), f)
        f.write("\n")