"""Human-readable rendering of reports on standard error."""

from typing import Dict, List

from rich.console import Console
from rich.table import Table

from .models import BlockCensus, BoundReport, QuadCensus, SearchRecord, TightnessReport


console = Console(stderr=True)


def _mark(passed: bool) -> str:
    return "[green]✓[/green]" if passed else "[red]✗[/red]"


def _checks_table(checks, title: str = None) -> Table:
    table = Table(show_header=True, header_style="bold cyan", title=title)
    table.add_column("Check", style="dim")
    table.add_column("LHS", justify="right")
    table.add_column("Op", justify="center")
    table.add_column("RHS", justify="right")
    table.add_column("", justify="center")
    for check in checks:
        table.add_row(check.name, check.lhs, check.op, check.rhs, _mark(check.passed))
    return table


def print_bound_report(report: BoundReport, label: str = None):
    """
    Print one bound report as a summary line and a table of checks.

    Args:
        report: BoundReport to render
        label: Optional job label shown in the heading
    """
    heading = f"[bold cyan]{report.theorem}[/bold cyan]"
    if label:
        heading += f" {label}"
    console.print(f"\n{heading}")

    sizes = ", ".join(
        f"{name}={value}" for name, value in report.sizes.model_dump(exclude_none=True).items()
    )
    console.print(f"  Sizes: {sizes}")

    if report.hypothesis_ok:
        console.print("  Hypothesis: [green]holds[/green]")
    else:
        console.print("  Hypothesis: [yellow]fails[/yellow] (checks not guaranteed)")

    if report.delta is not None:
        console.print(f"  delta = {report.delta}")
    if report.sigma is not None:
        console.print(f"  sigma = {report.sigma}")
    if report.empirical is not None:
        console.print(f"  Ratio: {report.empirical.num} / {report.empirical.den}")

    if report.checks:
        console.print(_checks_table(report.checks))


def print_tightness(report: TightnessReport):
    """Print the tightness comparison for a constructed set."""
    console.print(
        f"\n[bold cyan]Construction:[/bold cyan] |S| = {report.sidon_size}, "
        f"k = {report.k}, |A+[k]| = {report.sumset_size}"
    )
    console.print(_checks_table(report.checks))


def print_censuses(censuses: List[BlockCensus]):
    """Print one row per block count."""
    table = Table(show_header=True, header_style="bold cyan", title="Block census")
    table.add_column("t", justify="right")
    table.add_column("Block sizes", style="dim")
    table.add_column("Lower l(k-t)", justify="right")
    table.add_column("Within", justify="right")
    table.add_column("Upper", justify="right")
    table.add_column("", justify="center")

    for census in censuses:
        sizes = census.block_sizes
        shown = ", ".join(str(s) for s in sizes[:6]) + (", ..." if len(sizes) > 6 else "")
        table.add_row(
            str(census.t),
            shown,
            str(census.lower_bound),
            str(census.within_block_pairs),
            str(census.upper_bound),
            _mark(census.holds),
        )
    console.print(table)


def print_quad_census(census: QuadCensus):
    console.print(
        f"\n[bold cyan]Quadruple census[/bold cyan] t={census.t}, t'={census.t2}: "
        f"{census.lower_bound} <= {census.within_block_quadruples} <= {census.upper_bound} "
        f"{_mark(census.holds)}"
    )


def print_records(records: List[SearchRecord]):
    """Print search records as a table."""
    table = Table(show_header=True, header_style="bold cyan", title="Search records")
    table.add_column("n", justify="right")
    table.add_column("|A+A|", justify="right")
    table.add_column("Witness diffs", style="dim")
    table.add_column("Mode")
    table.add_column("Budget / steps", justify="right")
    table.add_column("Complete", justify="center")

    for record in records:
        effort = (
            str(record.width_budget) if record.mode == "exhaustive" else f"{record.steps} (seed {record.seed})"
        )
        table.add_row(
            str(record.n),
            str(record.best_size),
            " ".join(str(d) for d in record.witness_diffs),
            record.mode,
            effort,
            "yes" if record.complete else "no",
        )
    console.print(table)


def print_predicates(results: Dict[str, object]):
    """Print predicate results from the check command."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Predicate", style="dim")
    table.add_column("Value", justify="right")
    for name, value in results.items():
        if isinstance(value, bool):
            table.add_row(name, _mark(value))
        else:
            table.add_row(name, str(value))
    console.print(table)
