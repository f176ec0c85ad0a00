"""
Main CLI entry point for spherelab.
"""

import click
import sys
from pathlib import Path

# Add the parent directory to the path so we can import spherelab
sys.path.insert(0, str(Path(__file__).parent.parent))

from spherelab.config.settings import Config
from spherelab.storage.database import RunDatabase
from spherelab.utils.logging import get_logger, setup_logging
from .exceptions import InputError
from .constants import constants_cmd
from .spectral import spectral_cmd
from .estimate import estimate_cmd, replay_cmd
from .verify import verify_cmd


class SphereLabGroup(click.Group):
   """Click group that reports usage errors with the input-error exit code."""

   def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
       if not standalone_mode:
           return super().main(args=args, prog_name=prog_name, complete_var=complete_var,
                               standalone_mode=False, **extra)
       try:
           rv = super().main(args=args, prog_name=prog_name, complete_var=complete_var,
                             standalone_mode=False, **extra)
       except click.UsageError as e:
           # click would exit 2, which is reserved for invalid configurations
           e.show()
           sys.exit(InputError.exit_code)
       except click.ClickException as e:
           e.show()
           sys.exit(e.exit_code)
       except click.Abort:
           click.echo("Aborted!", err=True)
           sys.exit(1)
       # --help and ctx.exit() come back as an int exit code
       sys.exit(rv if isinstance(rv, int) else 0)


@click.group(cls=SphereLabGroup)
@click.option('--data-dir', '-d', help='Data directory path')
@click.option('--log-level', '-l', help='Logging level (default from config)')
@click.option('--log-file', help='Log file path')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose output')
@click.pass_context
def cli(ctx, data_dir, log_level, log_file, verbose):
   """spherelab - numerical lab for density theorems on the sphere"""

   # Initialize config
   config = Config(data_dir=data_dir)

   # Setup logging; log lines go to stderr
   if verbose:
       log_level = 'DEBUG'

   setup_logging(log_level=log_level or config.log_level, log_file=log_file)

   # Store config in context for subcommands
   ctx.ensure_object(dict)
   ctx.obj['config'] = config
   ctx.obj['logger'] = get_logger('cli')


@cli.command()
@click.pass_context
def version(ctx):
   """Show version information."""
   from spherelab import __version__

   click.echo(f"spherelab version {__version__}")


@cli.command()
@click.option('--history', is_flag=True, help='Show recent runs')
@click.option('--limit', type=int, default=10, help='Number of recent runs to show (with --history)')
@click.pass_context
def status(ctx, history, limit):
   """Show spherelab configuration and run history."""
   config = ctx.obj['config']

   click.echo("spherelab Status:")
   click.echo(f"  Data directory: {config.data_dir}")
   click.echo(f"  Runs: {config.runs_dir}")
   click.echo(f"  Default seed: {config.default_seed}")
   click.echo(f"  Workers: {config.workers}")
   click.echo(f"  Chunk size: {config.chunk_size}")
   click.echo(f"  Max degree K: {config.max_degree}")
   click.echo(f"  Confidence: {config.confidence}")
   click.echo(f"  Subsphere samples: {config.subsphere_samples} (min {config.min_subsphere_samples})")
   click.echo()

   stats = RunDatabase(config).get_run_stats()
   click.echo("Run History:")
   click.echo(f"  Total runs: {stats['total_runs']}")
   click.echo(f"  Failed runs: {stats['failed_runs']}")
   click.echo(f"  Last run: {stats['last_run']}")

   if history:
       for run in RunDatabase(config).get_recent_runs(limit):
           label = run['experiment'] or run['command']
           click.echo(f"  {run['timestamp']}  {label}  seed={run['seed']}  {run['status']}")


# Add subcommands
cli.add_command(constants_cmd, name='constants')
cli.add_command(spectral_cmd, name='spectral')
cli.add_command(estimate_cmd, name='estimate')
cli.add_command(replay_cmd, name='replay')
cli.add_command(verify_cmd, name='verify')


def main():
   """Main entry point for the CLI."""
   cli()


if __name__ == '__main__':
   main()
