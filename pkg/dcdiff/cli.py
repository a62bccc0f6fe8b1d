"""Command-line interface for dcdiff."""

import functools
import json
import sys
from pathlib import Path

import click
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape

from . import __version__
from .bounds import verify, verify_batch
from .config import (
    format_validation_error,
    generate_starter_suite,
    load_suite,
    resolve_suite,
    validate_suite_file,
)
from .errors import DcdiffError, HypothesisError, InvalidMap, SetFileError
from .models import SearchRecord
from .records import RecordStore
from .report import (
    print_bound_report,
    print_censuses,
    print_predicates,
    print_quad_census,
    print_records,
    print_tightness,
)
from .ruzsa import build_ruzsa_set, greedy_sidon, modular_sidon, tightness_report
from .search import anneal_batch, anneal_min_sumset, exhaustive_min_sumset
from .set_files import read_set_file
from .sets import (
    apply_map,
    consecutive_differences,
    delta_ratio,
    has_distinct_consecutive_differences,
    is_convex,
    is_sidon,
    polynomial_map,
    power_map,
    table_map,
)
from .sigma import SigmaMap, find_sigma, verify_sigma
from .sumset import block_pair_census, decode_pair, enumerate_pairs, quadruple_block_census, sumset
from .utils import format_rational, parse_range_string, parse_rational


console = Console(stderr=True)


def emit(data):
    """Write one JSON document to standard output."""
    click.echo(json.dumps(data, indent=2))


def output_options(func):
    """Add --verbose/--quiet and turn input errors into exit code 2."""

    @click.option("--verbose", "-v", is_flag=True, help="Show progress on standard error")
    @click.option("--quiet", "-q", is_flag=True, help="Suppress the human-readable summary")
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (DcdiffError, ValidationError, UnicodeError, OSError) as e:
            console.print(f"[red]Error:[/red] {escape(str(e))}", soft_wrap=True)
            sys.exit(2)

    return wrapper


def finish(ok: bool):
    """Exit 1 when a bound or hypothesis failed."""
    if not ok:
        sys.exit(1)


def _load_set(path, label, verbose):
    """Read a set file if a path was given; with verbose, say what was read."""
    if not path:
        return None
    S = read_set_file(path)
    if verbose:
        width = format_rational(S[-1] - S[0])
        console.print(
            f"[cyan]{label}[/cyan] from {escape(str(path))}: {len(S)} element(s), width {width}",
            soft_wrap=True,
        )
    return S


def _read_map(power, poly, table):
    """Build the point map from the mutually exclusive map options."""
    given = [option for option in (power, poly, table) if option is not None]
    if len(given) > 1:
        raise InvalidMap("Give only one of --power, --poly, --table")
    if power is not None:
        return power_map(power)
    if poly is not None:
        return polynomial_map([parse_rational(token) for token in poly.split(",")])
    if table is not None:
        try:
            with open(table, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            raise SetFileError(table, f"cannot read value table ({e})")
        if not isinstance(data, dict):
            raise SetFileError(table, "expected a JSON object mapping points to values")
        return table_map(data)
    return None


set_option = functools.partial(click.option, type=click.Path(dir_okay=False))


@click.group()
@click.version_option(version=__version__)
def cli():
    """
    dcdiff - exact sumset bounds for sets with distinct consecutive differences.

    Every command prints JSON on standard output and a human-readable
    summary on standard error. Exit code 0 means every check passed, 1 that
    a bound or hypothesis failed, 2 that the input was unusable.
    """
    pass


@cli.command()
@set_option("--A", "a_path", required=True, help="Set file for A")
@output_options
def check(a_path, verbose, quiet):
    """
    Report the structural predicates of a set.

    Examples:

        dcdiff check --A a.json
    """
    A = _load_set(a_path, "A", verbose)
    results = {
        "size": len(A),
        "is_convex": is_convex(A),
        "distinct_consecutive_differences": has_distinct_consecutive_differences(A),
        "is_sidon": is_sidon(A),
    }
    if len(A) >= 2:
        results["differences"] = consecutive_differences(A).to_strings()
        results["delta"] = format_rational(delta_ratio(A))

    if not quiet:
        print_predicates({key: value for key, value in results.items() if key != "differences"})
    emit(results)


@cli.command(name="sumset")
@set_option("--A", "a_path", required=True, help="Set file for A")
@set_option("--B", "b_path", help="Set file for B (default: A)")
@output_options
def sumset_cmd(a_path, b_path, verbose, quiet):
    """
    Compute A + B.

    Examples:

        dcdiff sumset --A a.json --B b.json
    """
    A = _load_set(a_path, "A", verbose)
    B = _load_set(b_path, "B", verbose) if b_path else A
    C = sumset(A, B)
    if not quiet:
        console.print(f"|A| = {len(A)}, |B| = {len(B)}, |A+B| = {len(C)}")
    emit({"size": len(C), "sumset": C.to_strings()})


@cli.group()
def pairs():
    """Enumerate or decode the pairs {a_i + b_j, a_(i+1) + b_j}."""
    pass


@pairs.command(name="enumerate")
@set_option("--A", "a_path", required=True, help="Set file for A")
@set_option("--B", "b_path", required=True, help="Set file for B")
@output_options
def pairs_enumerate(a_path, b_path, verbose, quiet):
    """
    List the (k-1) * l pairs in j-major order.

    Examples:

        dcdiff pairs enumerate --A a.json --B b.json
    """
    A = _load_set(a_path, "A", verbose)
    B = _load_set(b_path, "B", verbose)
    witnesses = enumerate_pairs(A, B)
    if not quiet:
        console.print(f"{len(witnesses)} pairs from |A| = {len(A)}, |B| = {len(B)}")
    emit(
        [
            {"i": w.i, "j": w.j, "pair": [format_rational(w.low), format_rational(w.high)]}
            for w in witnesses
        ]
    )


@pairs.command(name="decode")
@set_option("--A", "a_path", required=True, help="Set file for A")
@set_option("--B", "b_path", required=True, help="Set file for B")
@click.option("--c", "c", required=True, help="Smaller element, e.g. 3/2")
@click.option("--c2", "c2", required=True, help="Larger element")
@output_options
def pairs_decode(a_path, b_path, c, c2, verbose, quiet):
    """
    Recover (i, j) from a pair of sumset elements; null if it is not a pair.

    Examples:

        dcdiff pairs decode --A a.json --B b.json --c 5 --c2 6
    """
    A = _load_set(a_path, "A", verbose)
    B = _load_set(b_path, "B", verbose)
    decoded = decode_pair(A, parse_rational(c), parse_rational(c2), B)
    if decoded is None:
        if not quiet:
            console.print(f"[yellow]{{{c}, {c2}}} is not a pair[/yellow]")
        emit({"i": None, "j": None})
        return

    i, j = decoded
    if not quiet:
        console.print(f"{{{c}, {c2}}} = {{a_{i} + b_{j}, a_{i + 1} + b_{j}}}")
    emit({"i": i, "j": j})


@cli.command()
@set_option("--A", "a_path", required=True, help="Set file for A")
@set_option("--B", "b_path", required=True, help="Set file for B")
@click.option("--t", "t_range", required=True, help='Block counts, e.g. "1,2,5-7"')
@click.option(
    "--method",
    type=click.Choice(["auto", "runlength", "subsets"]),
    default="auto",
    show_default=True,
    help="Census counting method",
)
@set_option("--A2", "a2_path", help="Set file for A' (quadruple census)")
@set_option("--B2", "b2_path", help="Set file for B' (quadruple census)")
@click.option("--t2", type=int, help="Block count for A'+B' (default: same as t)")
@output_options
def census(a_path, b_path, t_range, method, a2_path, b2_path, t2, verbose, quiet):
    """
    Replay the block-partition count for each t.

    With --A2 and --B2 the quadruple census runs instead, using a sigma
    found for (A, A').

    Examples:

        dcdiff census --A a.json --B b.json --t 1-4

        dcdiff census --A a.json --B b.json --A2 a2.json --B2 b2.json --t 2
    """
    A = _load_set(a_path, "A", verbose)
    B = _load_set(b_path, "B", verbose)
    block_counts = parse_range_string(t_range)
    if not block_counts:
        raise DcdiffError("--t must name at least one block count")

    if (a2_path is None) != (b2_path is None):
        raise DcdiffError("--A2 and --B2 must be given together")

    if a2_path is None:
        censuses = [block_pair_census(A, B, t, method=method, strict=False) for t in block_counts]
        if not quiet:
            print_censuses(censuses)
        emit([c.model_dump(mode="json") for c in censuses])
        finish(all(c.holds for c in censuses))
        return

    A2 = _load_set(a2_path, "A'", verbose)
    B2 = _load_set(b2_path, "B'", verbose)
    sigma = find_sigma(A, A2)
    if sigma is None:
        raise HypothesisError("No sigma makes the difference pairs distinct")

    censuses = []
    for t in block_counts:
        quad = quadruple_block_census(A, A2, sigma, B, B2, t, t2 or t, strict=False)
        if not quiet:
            print_quad_census(quad)
        censuses.append(quad)
    emit([c.model_dump(mode="json") for c in censuses])
    finish(all(c.holds for c in censuses))


def _run_sigma_find(A, A2, quiet):
    found = find_sigma(A, A2)
    if found is None:
        if not quiet:
            console.print("[yellow]No sigma exists[/yellow]")
        emit({"sigma": None})
        finish(False)
        return

    if not quiet:
        console.print(f"[green]✓[/green] sigma = {found.to_list()}")
    emit({"sigma": found.to_list()})


def _run_sigma_verify(A, A2, sigma_str, quiet):
    try:
        image = tuple(int(token) for token in sigma_str.split(","))
    except ValueError:
        raise DcdiffError(f"Invalid sigma: '{sigma_str}'")
    valid = verify_sigma(A, A2, SigmaMap(image))
    if not quiet:
        console.print(f"sigma {list(image)}: " + ("[green]valid[/green]" if valid else "[red]invalid[/red]"))
    emit({"sigma": list(image), "valid": valid})
    finish(valid)


@cli.group(invoke_without_command=True)
@set_option("--A", "a_path", help="Set file for A")
@set_option("--A2", "a2_path", help="Set file for A'")
@click.option("--sigma", "sigma_str", help='Verify this 1-based permutation instead of searching')
@output_options
@click.pass_context
def sigma(ctx, a_path, a2_path, sigma_str, verbose, quiet):
    """
    Find or verify a matching sigma between two difference sequences.

    Without a subcommand, --A and --A2 run find, or verify when --sigma
    is also given.

    Examples:

        dcdiff sigma --A a.json --A2 a2.json

        dcdiff sigma --A a.json --A2 a2.json --sigma 2,1
    """
    if ctx.invoked_subcommand is not None:
        if a_path or a2_path or sigma_str:
            raise click.UsageError("Give --A/--A2/--sigma after the subcommand, not before it")
        return
    if a_path is None or a2_path is None:
        raise click.UsageError("sigma needs --A and --A2, or a subcommand")

    A = _load_set(a_path, "A", verbose)
    A2 = _load_set(a2_path, "A'", verbose)
    if sigma_str is None:
        _run_sigma_find(A, A2, quiet)
    else:
        _run_sigma_verify(A, A2, sigma_str, quiet)


@sigma.command(name="find")
@set_option("--A", "a_path", required=True, help="Set file for A")
@set_option("--A2", "a2_path", required=True, help="Set file for A'")
@output_options
def sigma_find(a_path, a2_path, verbose, quiet):
    """
    Find sigma with the pairs (d_i, d'_sigma(i)) distinct; exit 1 if none exists.

    Examples:

        dcdiff sigma find --A a.json --A2 a2.json
    """
    A = _load_set(a_path, "A", verbose)
    A2 = _load_set(a2_path, "A'", verbose)
    _run_sigma_find(A, A2, quiet)


@sigma.command(name="verify")
@set_option("--A", "a_path", required=True, help="Set file for A")
@set_option("--A2", "a2_path", required=True, help="Set file for A'")
@click.option("--sigma", "sigma_str", required=True, help='1-based permutation, e.g. "2,1,3"')
@output_options
def sigma_verify(a_path, a2_path, sigma_str, verbose, quiet):
    """
    Check a given sigma; exit 1 if the pairs are not distinct.

    Examples:

        dcdiff sigma verify --A a.json --A2 a2.json --sigma 2,1
    """
    A = _load_set(a_path, "A", verbose)
    A2 = _load_set(a2_path, "A'", verbose)
    _run_sigma_verify(A, A2, sigma_str, quiet)


@cli.command()
@click.option(
    "--sidon",
    type=click.Choice(["greedy", "modular"]),
    default="greedy",
    show_default=True,
    help="Sidon set source",
)
@click.option("--size", type=int, help="Greedy Sidon set size (odd, at least 3)")
@click.option("--prime", type=int, help="Odd prime for the modular Sidon set")
@set_option("--S", "s_path", help="Use a Sidon set from a file instead")
@output_options
def construct(sidon, size, prime, s_path, verbose, quiet):
    """
    Build the tightness example A with |A+[k]| on the order of k^(3/2).

    Examples:

        dcdiff construct --sidon greedy --size 7

        dcdiff construct --sidon modular --prime 5
    """
    if s_path:
        S = _load_set(s_path, "S", verbose)
    elif sidon == "greedy":
        if size is None:
            raise DcdiffError("--sidon greedy needs --size")
        S = greedy_sidon(size)
    else:
        if prime is None:
            raise DcdiffError("--sidon modular needs --prime")
        S = modular_sidon(prime)

    artifacts = build_ruzsa_set(S, verbose=verbose)
    report = tightness_report(artifacts)
    if not quiet:
        print_tightness(report)

    result = artifacts.to_dict()
    result["report"] = report.to_json_dict()
    emit(result)
    finish(report.all_passed)


@cli.command(name="verify")
@click.option("--theorem", type=click.IntRange(1, 4), required=True, help="Theorem 1-4")
@set_option("--A", "a_path", required=True, help="Set file for A")
@set_option("--B", "b_path", help="Set file for B (Theorem 4 default: F(A))")
@set_option("--A2", "a2_path", help="Set file for A' (Theorem 3)")
@set_option("--B2", "b2_path", help="Set file for B' (Theorem 3)")
@set_option("--C", "c_path", help="Set file for C (Theorem 4 default: A)")
@click.option("--power", type=int, help="Point map x^N (Theorem 4)")
@click.option("--poly", help='Point map with coefficients, constant first, e.g. "0,1/2,1"')
@click.option("--table", type=click.Path(dir_okay=False), help="Point map as a JSON value table")
@output_options
def verify_cmd(theorem, a_path, b_path, a2_path, b2_path, c_path, power, poly, table, verbose, quiet):
    """
    Check one theorem on one instance.

    Examples:

        dcdiff verify --theorem 1 --A a.json --B b.json

        dcdiff verify --theorem 3 --A a.json --B b.json --A2 a2.json --B2 b2.json

        dcdiff verify --theorem 4 --A a.json --power 2
    """
    A = _load_set(a_path, "A", verbose)
    B = _load_set(b_path, "B", verbose)
    A2 = _load_set(a2_path, "A'", verbose)
    B2 = _load_set(b2_path, "B'", verbose)
    C = _load_set(c_path, "C", verbose)
    F = _read_map(power, poly, table)

    if theorem in (1, 2, 3) and B is None:
        raise DcdiffError(f"Theorem {theorem} needs --B")
    if theorem == 3 and (A2 is None or B2 is None):
        raise DcdiffError("Theorem 3 needs --A2 and --B2")
    if theorem == 4:
        if F is None:
            raise DcdiffError("Theorem 4 needs a point map (--power, --poly or --table)")
        if B is None:
            B = apply_map(A, F)
        if C is None:
            C = A

    report = verify(theorem, A, B=B, A2=A2, B2=B2, C=C, F=F)
    if not quiet:
        print_bound_report(report)
    emit(report.to_json_dict())
    finish(report.ok)


@cli.command()
@click.option(
    "--mode",
    type=click.Choice(["exhaustive", "anneal"]),
    default="exhaustive",
    show_default=True,
    help="Search strategy",
)
@click.option("--n", "n", type=int, required=True, help="Set size")
@click.option("--budget", type=int, help="Width budget a_n - a_1 (exhaustive)")
@click.option("--steps", type=int, default=10_000, show_default=True, help="Evaluations (anneal)")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), multiple=True, help="Seed (anneal; repeat for several runs)")
@click.option("--workers", type=int, default=1, show_default=True, help="Worker processes")
@click.option("--store", type=click.Path(dir_okay=False), help="Append the record(s) to a store")
@output_options
def search(mode, n, budget, steps, seed, workers, store, verbose, quiet):
    """
    Search for convex n-element integer sets with small |A+A|.

    Examples:

        dcdiff search --mode exhaustive --n 5 --budget 40

        dcdiff search --mode anneal --n 8 --steps 20000 --seed 1 --seed 2
    """
    if mode == "exhaustive":
        if budget is None:
            raise DcdiffError("--mode exhaustive needs --budget")
        records = [exhaustive_min_sumset(n, budget, workers=workers, verbose=verbose)]
    else:
        seeds = list(seed) or [0]
        if len(seeds) == 1:
            records = [anneal_min_sumset(n, steps, seeds[0], verbose=verbose)]
        else:
            records = anneal_batch(n, steps, seeds, workers=workers)

    if not quiet:
        print_records(records)

    if store:
        store_path = RecordStore(store)
        for record in records:
            store_path.append(record)
        if verbose:
            console.print(f"[green]✓[/green] Appended {len(records)} record(s) to {store}")

    payload = [record.model_dump(mode="json") for record in records]
    emit(payload[0] if len(payload) == 1 else payload)


@cli.command()
@click.option("--path", type=click.Path(dir_okay=False), required=True, help="Record store (JSON lines)")
@click.option("--best", is_flag=True, help="Only the best record for --n")
@click.option("--n", "n", type=int, help="Restrict to this set size")
@click.option(
    "--append",
    "append_path",
    type=click.Path(dir_okay=False),
    help="Append the record(s) in this JSON file (search output) to the store",
)
@output_options
def records(path, best, n, append_path, verbose, quiet):
    """
    Inspect or extend a search record store.

    Examples:

        dcdiff records --path runs.jsonl

        dcdiff records --path runs.jsonl --best --n 6

        dcdiff records --path runs.jsonl --append result.json
    """
    store = RecordStore(path)

    if append_path:
        try:
            with open(append_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            raise SetFileError(append_path, f"cannot read record ({e})")
        items = data if isinstance(data, list) else [data]
        if verbose:
            console.print(f"[cyan]Read[/cyan] {len(items)} record(s) from {escape(append_path)}", soft_wrap=True)
        try:
            incoming = [SearchRecord.model_validate(item) for item in items]
        except ValidationError as e:
            raise DcdiffError(f"Invalid record in {append_path}:\n{format_validation_error(e)}")
        written = [store.append(record) for record in incoming]
        if not quiet:
            console.print(f"[green]✓[/green] Appended {len(written)} record(s) to {path}")
        emit([record.model_dump(mode="json") for record in written])
        return

    if best:
        if n is None:
            raise DcdiffError("--best needs --n")
        record = store.best(n)
        if not quiet:
            if record is None:
                console.print(f"[yellow]No records for n={n}[/yellow]")
            else:
                print_records([record])
        emit(record.model_dump(mode="json") if record is not None else None)
        return

    loaded = store.load()
    if verbose:
        console.print(f"[cyan]Loaded[/cyan] {len(loaded)} record(s) from {escape(path)}", soft_wrap=True)
    if n is not None:
        loaded = [record for record in loaded if record.n == n]
    if not quiet:
        print_records(loaded)
    emit([record.model_dump(mode="json") for record in loaded])


@cli.command(name="suite")
@click.argument("suite_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--jobs", "workers", type=int, default=1, show_default=True, help="Worker processes")
@output_options
def suite_cmd(suite_file, workers, verbose, quiet):
    """
    Run every job of a YAML suite file.

    Examples:

        dcdiff suite smoke.yaml

        dcdiff suite smoke.yaml --jobs 4
    """
    suite = load_suite(suite_file)
    jobs = resolve_suite(suite, suite_file)
    if verbose:
        console.print(f"[cyan]Running suite:[/cyan] {suite.name} ({len(jobs)} job(s))")

    reports = verify_batch(jobs, workers=workers)

    results = []
    for number, (job, report) in enumerate(zip(suite.jobs, reports), start=1):
        label = job.name or f"job {number}"
        if not quiet:
            print_bound_report(report, label=label)
        result = report.to_json_dict()
        result["job"] = label
        results.append(result)

    passed = sum(1 for report in reports if report.ok)
    if not quiet:
        colour = "green" if passed == len(reports) else "red"
        console.print(f"\n[{colour}]{passed}/{len(reports)} job(s) passed[/{colour}]")

    emit({"suite": suite.name, "results": results})
    finish(passed == len(reports))


@cli.command()
@click.argument("suite_file", type=click.Path(dir_okay=False))
def validate(suite_file):
    """
    Validate a suite file without running it.

    Checks:
    - YAML syntax
    - Required sets per theorem
    - Set files exist and parse
    - Point maps are well formed

    Examples:

        dcdiff validate smoke.yaml
    """
    console.print(f"\n[cyan]Validating:[/cyan] {suite_file}\n")

    is_valid, message = validate_suite_file(suite_file)

    console.print(message)

    if not is_valid:
        sys.exit(2)


@cli.command()
@click.argument("set_files", nargs=-1, required=True, type=click.Path(dir_okay=False))
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Output suite path")
@output_options
def init(set_files, output, verbose, quiet):
    """
    Generate a starter suite from set files.

    Creates Theorem 1 and Theorem 2 jobs for every ordered pair of sets.

    Examples:

        dcdiff init a.json b.json -o suite.yaml
    """
    if output is None:
        output = f"{Path(set_files[0]).stem}_suite.yaml"
    suite = generate_starter_suite(list(set_files), output)
    if verbose:
        for job in suite.jobs:
            console.print(f"  - {escape(job.name or '')}: Theorem {job.theorem}")
    if not quiet:
        console.print(f"[green]✓[/green] Wrote {len(suite.jobs)} job(s) to {output}")


def run(argv=None) -> int:
    """Run the CLI on argv and return its exit code instead of exiting."""
    try:
        cli.main(args=argv, prog_name="dcdiff")
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
