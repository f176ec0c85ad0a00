"""
Constants command for spherelab CLI.
"""

import click

from spherelab import __version__
from spherelab.constants.derived import derive_constants
from spherelab.geometry.models import InductiveConfiguration
from spherelab.storage.manifest import RunManifest
from spherelab.utils.helpers import Timer
from .exceptions import InputError, InvalidConfigurationExit
from .output import emit, load_json_argument, to_json, write_text


@click.command()
@click.argument('config_json', required=False)
@click.option('--k', 'k', type=int, help='Simplex size (with --r instead of CONFIG_JSON)')
@click.option('--r', 'r', type=float, help='Simplex inner product')
@click.option('--out', '-o', type=click.Path(file_okay=False), help='Directory for constants.json and manifest')
@click.pass_context
def constants_cmd(ctx, config_json, k, r, out):
    """Derive c_i, C_R and eps_R for an inductive configuration.

    CONFIG_JSON is inline JSON or a file, e.g. '{"r_values": [0.5, 0.5]}'.
    """
    logger = ctx.obj['logger']

    if config_json is None:
        if k is None or r is None:
            raise InputError("Give CONFIG_JSON or both --k and --r")
        data = {"r_values": [r] * (k - 1)}
    else:
        data = load_json_argument(config_json)
        if not isinstance(data, dict):
            raise InputError("Configuration JSON must be an object with 'r_values'")

    try:
        config = InductiveConfiguration.from_dict(data)
    except (ValueError, TypeError) as e:
        raise InputError(f"Invalid configuration: {e}")

    with Timer() as timer:
        constants = derive_constants(config)
    logger.info(f"Derived constants for k={constants.k} in {timer.elapsed:.4f}s")

    text = to_json(constants.to_dict())
    emit(text)

    if out:
        path = write_text(out, "constants.json", text + "\n")
        manifest = RunManifest(
            command="constants",
            parameters={"config": config.to_dict()},
            seed=None,
            version=__version__,
            runtime=timer.elapsed,
        )
        manifest.record_outputs([path])
        manifest.write(out)

    if not constants.valid:
        raise InvalidConfigurationExit(constants.reason)
