"""Shipped scenario bundles."""
from __future__ import annotations

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent


def bundle_path(name: str) -> Path:
    """Path of a shipped bundle: ``corsica``, ``desk_reference`` or ``desk_tiny``."""
    path = DATA_DIR / name
    if not path.is_dir():
        raise FileNotFoundError(f"no shipped bundle named {name!r}")
    return path
