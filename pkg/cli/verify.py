"""
Acceptance suite command for spherelab CLI.
"""

import click
from rich.console import Console
from rich.table import Table

from spherelab.harness.acceptance import AcceptanceSuite
from spherelab.storage.database import RunDatabase
from spherelab.utils.helpers import Timer, format_duration
from .exceptions import CriterionFailure, InputError


def results_table(results) -> Table:
    """Pass/fail matrix; no timing so the output is identical across runs."""
    table = Table(title="spherelab acceptance")
    table.add_column("#", justify="right")
    table.add_column("criterion")
    table.add_column("result")
    table.add_column("detail")
    for result in results:
        status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(str(result.number), result.name, status, result.detail)
    return table


@click.command()
@click.option('--scale', type=float, default=1.0, help='Multiplier on every Monte Carlo budget')
@click.option('--only', type=int, multiple=True, help='Run only these criteria (repeatable)')
@click.option('--workers', '-w', type=int, help='Worker threads (default from config)')
@click.pass_context
def verify_cmd(ctx, scale, only, workers):
    """Run the acceptance suite with pinned seeds."""
    config = ctx.obj['config']
    logger = ctx.obj['logger']

    try:
        suite = AcceptanceSuite(config, scale=scale, workers=workers)
        with Timer() as timer:
            results = suite.run(only or None)
    except ValueError as e:
        raise InputError(str(e))
    logger.info(f"Acceptance suite finished in {format_duration(timer.elapsed)}")

    Console(width=120).print(results_table(results))
    passed = sum(1 for r in results if r.passed)
    click.echo(f"{passed}/{len(results)} criteria passed")

    failed = [r for r in results if not r.passed]
    RunDatabase(config).log_run({
        'command': 'verify',
        'workers': workers or config.workers,
        'runtime_s': timer.elapsed,
        'status': 'failed' if failed else 'completed',
        'parameters': {'scale': scale, 'only': list(only)},
    })

    if failed:
        raise CriterionFailure(f"Failed criteria: {', '.join(str(r.number) for r in failed)}")
