"""
Estimate and replay commands for spherelab CLI.
"""

import tempfile
from pathlib import Path

import click
import pandas as pd

from spherelab import __version__
from spherelab.constants.derived import InvalidConfigurationError
from spherelab.harness.experiments import PartitionError, run_experiment
from spherelab.harness.models import ExperimentSpec
from spherelab.storage.database import RunDatabase
from spherelab.storage.manifest import ManifestError, RunManifest
from spherelab.utils.helpers import Timer
from .exceptions import CriterionFailure, InputError, InvalidConfigurationExit
from .output import emit, load_json_argument, to_csv, write_text

REPORT_JSON = "report.json"
REPORT_CSV = "report.csv"


def build_spec(data, samples=None, seed=None, n=None, r=None) -> ExperimentSpec:
    """ExperimentSpec from JSON data with flag overrides applied."""
    if not isinstance(data, dict):
        raise InputError("Experiment spec must be a JSON object")
    data = dict(data)
    for key, value in (("samples", samples), ("seed", seed), ("n", n), ("r", r)):
        if value is not None:
            data[key] = value
    try:
        return ExperimentSpec.from_dict(data)
    except (ValueError, TypeError) as e:
        raise InputError(f"Invalid experiment spec: {e}")


def execute(config, spec: ExperimentSpec, workers: int, out_dir: Path):
    """Run a spec and write report.json, report.csv and the manifest."""
    try:
        with Timer() as timer:
            report = run_experiment(spec, config, workers=workers)
    except InvalidConfigurationError as e:
        raise InvalidConfigurationExit(str(e))
    except PartitionError as e:
        raise InputError(f"Coloring is not a partition: {e}")
    except ValueError as e:
        raise InputError(str(e))
    report.runtime = timer.elapsed

    json_path = write_text(out_dir, REPORT_JSON, report.to_json() + "\n")
    csv_path = write_text(out_dir, REPORT_CSV, to_csv(pd.DataFrame(report.csv_rows())))
    manifest = RunManifest(
        command="estimate",
        parameters={"spec": spec.to_dict()},
        seed=spec.seed,
        version=__version__,
        runtime=timer.elapsed,
        workers=workers,
    )
    manifest.record_outputs([json_path, csv_path])
    manifest.write(out_dir)
    return report, manifest


@click.command()
@click.argument('spec_json')
@click.option('--samples', type=int, help='Override the sample count')
@click.option('--seed', type=int, help='Override the seed')
@click.option('--n', 'n', type=int, help='Override the dimension')
@click.option('--r', 'r', type=float, help='Override the inner product r')
@click.option('--workers', '-w', type=int, help='Worker threads (default from config)')
@click.option('--out', '-o', type=click.Path(file_okay=False), help='Output directory')
@click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default='json', help='Format echoed to stdout')
@click.pass_context
def estimate_cmd(ctx, spec_json, samples, seed, n, r, workers, out, fmt):
    """Run the experiment described by SPEC_JSON (inline JSON or a file)."""
    config = ctx.obj['config']
    logger = ctx.obj['logger']

    spec = build_spec(load_json_argument(spec_json), samples, seed, n, r)
    workers = workers or config.workers
    if workers < 1:
        raise InputError("--workers must be at least 1")
    out_dir = Path(out) if out else config.ensure_runs_dir() / f"{spec.experiment}_seed{spec.seed}"

    report, manifest = execute(config, spec, workers, out_dir)
    logger.info(f"{spec.experiment} finished in {manifest.runtime:.2f}s with {workers} worker(s); "
                f"outputs in {out_dir}")

    failures = report.assertable_failures()
    RunDatabase(config).log_run({
        'command': 'estimate',
        'experiment': spec.experiment,
        'seed': spec.seed,
        'workers': workers,
        'runtime_s': manifest.runtime,
        'status': 'failed' if failures else 'completed',
        'out_dir': str(out_dir),
        'parameters': spec.to_dict(),
    })

    if fmt == 'json':
        emit(report.to_json())
    else:
        emit(to_csv(pd.DataFrame(report.csv_rows())))

    if failures:
        names = ", ".join(c.name for c in failures)
        raise CriterionFailure(f"Assertable criteria failed: {names}")


@click.command()
@click.argument('manifest_path', type=click.Path(exists=True))
@click.option('--workers', '-w', type=int, help='Worker threads (default: as recorded)')
@click.option('--out', '-o', type=click.Path(file_okay=False), help='Directory for the replayed outputs')
@click.pass_context
def replay_cmd(ctx, manifest_path, workers, out):
    """Re-run an estimate from its manifest and compare output digests."""
    config = ctx.obj['config']
    logger = ctx.obj['logger']

    try:
        manifest = RunManifest.load(manifest_path)
    except ManifestError as e:
        raise InputError(str(e))
    if manifest.command != "estimate":
        raise InputError(f"Only estimate runs can be replayed, got '{manifest.command}'")

    spec = build_spec(manifest.parameters.get("spec"))
    workers = workers or manifest.workers

    with tempfile.TemporaryDirectory() as tmp:
        out_dir = Path(out) if out else Path(tmp)
        _, replayed = execute(config, spec, workers, out_dir)
        logger.info(f"Replayed {spec.experiment} in {replayed.runtime:.2f}s")

    mismatched = []
    for name in sorted(manifest.outputs):
        same = replayed.outputs.get(name) == manifest.outputs[name]
        click.echo(f"  {name}: {'identical' if same else 'DIFFERENT'}")
        if not same:
            mismatched.append(name)

    if mismatched:
        raise CriterionFailure(f"Replay differs in {', '.join(mismatched)}")
    click.echo("Replay reproduced all outputs")
