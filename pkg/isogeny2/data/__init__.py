"""Packaged modular-equation files."""

from importlib import resources
from pathlib import Path


def data_path(name: str) -> Path:
    """Path of a packaged data file.

    Examples
    --------
    >>> data_path("identity_hilbert_q5.txt").name
    'identity_hilbert_q5.txt'

    """
    path = Path(str(resources.files(__name__).joinpath(name)))
    if not path.exists():
        msg = f"No packaged data file named {name}."
        raise FileNotFoundError(msg)
    return path
