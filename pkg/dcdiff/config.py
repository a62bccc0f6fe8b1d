"""Suite file loading and validation."""

import yaml
from pathlib import Path
from typing import Any, Dict, List, Tuple
from pydantic import ValidationError

from .errors import ConfigError, DcdiffError
from .models import Job, Suite
from .set_files import parse_set_data, read_set_file
from .sets import SortedSet, apply_map


def load_suite(suite_path: str) -> Suite:
    """
    Load and validate a verification suite from a YAML file.

    Args:
        suite_path: Path to YAML suite file

    Returns:
        Validated Suite object

    Raises:
        ConfigError: If the file is missing, not valid YAML, or fails validation
    """
    suite_file = Path(suite_path)

    if not suite_file.exists():
        raise ConfigError(f"Suite file not found: {suite_path}")

    with open(suite_file, "r", encoding="utf-8") as f:
        try:
            suite_data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML syntax in {suite_path}:\n{e}")
        except UnicodeDecodeError:
            raise ConfigError(f"Suite file is not UTF-8 text: {suite_path}")

    if suite_data is None:
        raise ConfigError(f"Suite file is empty: {suite_path}")

    try:
        suite = Suite(**suite_data)
    except ValidationError as e:
        raise ConfigError(
            f"Suite validation failed for {suite_path}:\n{format_validation_error(e)}"
        )
    except TypeError:
        raise ConfigError(f"Suite file must contain a mapping at the top level: {suite_path}")

    return suite


def format_validation_error(error: ValidationError) -> str:
    """
    Format Pydantic validation error for human-readable output.

    Args:
        error: Pydantic ValidationError

    Returns:
        Formatted error message
    """
    lines = []
    for err in error.errors():
        location = " -> ".join(str(loc) for loc in err["loc"])
        message = err["msg"]
        lines.append(f"  {location}: {message}")

    return "\n".join(lines)


def _resolve_set(source: Any, base_dir: Path, label: str) -> SortedSet:
    if isinstance(source, list):
        return parse_set_data(source, f"{label} (inline)")
    return read_set_file(base_dir / source)


def resolve_job(job: Job, base_dir: Path) -> Dict[str, Any]:
    """
    Turn a suite job into keyword arguments for bounds.verify.

    Set files are resolved relative to base_dir. For Theorem 4, the value
    "image" for B or C stands for F(A).
    """
    kwargs: Dict[str, Any] = {"theorem": job.theorem}
    A = _resolve_set(job.A, base_dir, "A")
    kwargs["A"] = A

    image = apply_map(A, job.map) if job.map is not None else None
    for name in ("B", "A2", "B2", "C"):
        source = getattr(job, name)
        if source is None:
            continue
        if source == "image":
            kwargs[name] = image
        else:
            kwargs[name] = _resolve_set(source, base_dir, name)

    if job.map is not None:
        kwargs["F"] = job.map
    return kwargs


def resolve_suite(suite: Suite, suite_path: str) -> List[Dict[str, Any]]:
    """Resolve every job of a suite; errors name the job."""
    base_dir = Path(suite_path).parent
    resolved = []
    for number, job in enumerate(suite.jobs, start=1):
        label = job.name or f"job {number}"
        try:
            resolved.append(resolve_job(job, base_dir))
        except DcdiffError as e:
            raise ConfigError(f"{label}: {e}")
    return resolved


def validate_suite_file(suite_path: str) -> Tuple[bool, str]:
    """
    Validate suite file and return success status with message.

    Args:
        suite_path: Path to YAML suite file

    Returns:
        Tuple of (is_valid, message)
    """
    try:
        suite = load_suite(suite_path)
        resolve_suite(suite, suite_path)

        messages = [
            "✓ Suite syntax valid",
            f"✓ Name: {suite.name}",
            f"✓ {len(suite.jobs)} job(s)",
        ]

        for number, job in enumerate(suite.jobs, start=1):
            label = job.name or f"job {number}"
            detail = f"  ✓ [{number}] {label}: Theorem {job.theorem}"
            if job.map is not None:
                detail += f", F = {job.map.describe()}"
            messages.append(detail)

        messages.append("\n✅ Suite is valid!")

        return True, "\n".join(messages)

    except DcdiffError as e:
        return False, f"❌ Validation failed:\n{str(e)}"


def generate_starter_suite(set_paths: List[str], output_path: str) -> Suite:
    """
    Write a starter suite with Theorem 1 and Theorem 2 jobs for every
    ordered pair of the given set files.

    Args:
        set_paths: Set files (at least one)
        output_path: Path for the YAML suite

    Returns:
        The generated Suite
    """
    base_dir = Path(output_path).resolve().parent
    for path in set_paths:
        read_set_file(path)

    def relative(path: str) -> str:
        try:
            return str(Path(path).resolve().relative_to(base_dir))
        except ValueError:
            return str(Path(path).resolve())

    jobs = []
    for first in set_paths:
        for second in set_paths:
            for theorem in (1, 2):
                jobs.append(
                    {
                        "theorem": theorem,
                        "name": f"T{theorem} {Path(first).stem} + {Path(second).stem}",
                        "A": relative(first),
                        "B": relative(second),
                    }
                )

    suite_data = {
        "name": f"Suite over {len(set_paths)} set file(s)",
        "description": "Auto-generated starter suite - edit as needed",
        "jobs": jobs,
    }
    suite = Suite(**suite_data)

    with open(output_path, "w") as f:
        yaml.dump(suite_data, f, default_flow_style=False, sort_keys=False)

    return suite
