"""
Exit-code contract for spherelab commands.

0 ok, 1 input error, 2 invalid configuration, 3 criterion failure.
"""

import click


class InputError(click.ClickException):
    """Malformed input or out-of-range parameters."""
    exit_code = 1


class InvalidConfigurationExit(click.ClickException):
    """Configuration violates the diameter condition."""
    exit_code = 2


class CriterionFailure(click.ClickException):
    """An assertable criterion or a reproducibility check failed."""
    exit_code = 3
