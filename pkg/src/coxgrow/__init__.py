"""Growth functions, growth rates and Perron certification for Coxeter groups."""

from __future__ import annotations

from pathlib import Path

__version__ = "0.1.0"

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    """Path of a bundled polyhedron document, e.g. ``fixture_path("octahedron")``."""
    return FIXTURE_DIR / f"{name}.json"


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))
