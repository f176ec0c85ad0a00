"""
Output helpers shared by spherelab commands.
"""

import json
from pathlib import Path
from typing import Any, Union

import click
import pandas as pd

from spherelab.utils.helpers import ensure_directory
from .exceptions import InputError

CSV_SCHEMA = "# schema=1"


def load_json_argument(value: str) -> Any:
    """Parse a JSON document given inline or as a file path."""
    try:
        if value.lstrip()[:1] in ("{", "["):
            return json.loads(value)
        path = Path(value)
        if not path.is_file():
            raise InputError(f"No such file and not inline JSON: {value!r}")
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"Malformed JSON in {value!r}: {e}")


def to_json(data: Any) -> str:
    """Stable JSON text; floats keep full round-trip precision."""
    return json.dumps(data, indent=2, sort_keys=True)


def to_csv(frame: pd.DataFrame) -> str:
    """CSV text with the versioned schema header."""
    return f"{CSV_SCHEMA}\n" + frame.to_csv(index=False, lineterminator="\n")


def write_text(out_dir: Union[str, Path], name: str, text: str) -> Path:
    path = ensure_directory(out_dir) / name
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    return path


def emit(text: str):
    click.echo(text.rstrip("\n"))
