"""
Spectral table command for spherelab CLI.
"""

import click

from spherelab import __version__
from spherelab.spectral.gegenbauer import eigenvalue_table
from spherelab.storage.manifest import RunManifest
from spherelab.utils.helpers import Timer
from .exceptions import InputError
from .output import emit, to_csv, to_json, write_text


@click.command()
@click.option('--n', 'n', type=int, required=True, help='Ambient dimension (sphere S^{n-1})')
@click.option('--r', 'r', type=float, required=True, help='Inner product r in (-1, 1)')
@click.option('--K', 'max_degree', type=int, help='Largest degree (default from config)')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv', help='Output format')
@click.option('--out', '-o', type=click.Path(file_okay=False), help='Directory for the table and manifest')
@click.pass_context
def spectral_cmd(ctx, n, r, max_degree, fmt, out):
    """Table of mu_{k,r}, r^k and |mu_{k,r} - r^k| for k = 0..K.

    CSV columns: k, mu, r_power_k, deviation.
    """
    config = ctx.obj['config']
    logger = ctx.obj['logger']

    if max_degree is None:
        max_degree = config.max_degree

    try:
        with Timer() as timer:
            table = eigenvalue_table(n, r, max_degree)
    except ValueError as e:
        raise InputError(str(e))
    logger.info(f"Eigenvalue table n={n} r={r} K={max_degree} in {timer.elapsed:.4f}s, "
                f"max deviation {table.max_deviation():.3e}")

    frame = table.to_frame()
    if fmt == 'csv':
        text = to_csv(frame)
    else:
        text = to_json({"n": table.n, "r": table.r, "rows": frame.to_dict(orient="records")})
    emit(text)

    if out:
        path = write_text(out, f"spectral.{fmt}", text)
        manifest = RunManifest(
            command="spectral",
            parameters={"n": n, "r": r, "K": max_degree, "format": fmt},
            seed=None,
            version=__version__,
            runtime=timer.elapsed,
        )
        manifest.record_outputs([path])
        manifest.write(out)
