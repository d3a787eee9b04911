"""Built-in worked example matrices, shipped as package data.

These small matrices anchor the golden tests and the ``verify`` command;
loading them exercises the same CSV path as user input.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .errors import DomainError
from .matrixio import Matrix, load_matrix

BUILTIN_NAMES = ("M0", "M1", "M2", "M3", "M4")


@lru_cache(maxsize=None)
def builtin(name: str) -> Matrix:
    """Return one of the bundled matrices M0..M4 by name."""
    key = name.upper()
    if key not in BUILTIN_NAMES:
        raise DomainError(f"unknown builtin matrix {name!r}; choose from {BUILTIN_NAMES}")
    path = resources.files("boolbic.data").joinpath(f"{key.lower()}.csv")
    with path.open("rb") as fh:
        return load_matrix(fh, format="csv", has_header=True, has_row_labels=True)
