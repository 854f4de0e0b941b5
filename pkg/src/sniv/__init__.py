"""Outer approximations of robust IV confidence regions via moment relaxations."""

from importlib.metadata import PackageNotFoundError, version as _version

from .encode import SnivConfig, encode_ar, encode_custom, encode_sniv
from .hierarchy import BallPolicy, Layout, SemialgebraicSet, relax, run
from .poly import Polynomial
from .region import Envelope, direction_grid, interval, sweep
from .stats import ClassSpec, Sample, bootstrap_radius, cross_moments, radius, read_csv, write_csv

try:
    __version__ = _version("artifact")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.1.0"

__all__ = [
    "Polynomial",
    "Layout",
    "SemialgebraicSet",
    "BallPolicy",
    "relax",
    "run",
    "Sample",
    "ClassSpec",
    "cross_moments",
    "radius",
    "bootstrap_radius",
    "read_csv",
    "write_csv",
    "SnivConfig",
    "encode_sniv",
    "encode_ar",
    "encode_custom",
    "Envelope",
    "direction_grid",
    "sweep",
    "interval",
]
