"""Spectral diagnostics for feature-map upsampling."""

from ._core import (
    DimensionError,
    FormatError,
    IoError,
    UndefinedMetric,
    ValidationError,
    diagnose_pair,
    generate,
    pearson,
    read_fmap,
    spearman,
    upsample,
    write_fmap,
)

try:
    from ._core import __version__
except ImportError:  # built without a version define
    __version__ = "0.0.0"

__all__ = [
    "DimensionError",
    "FormatError",
    "IoError",
    "UndefinedMetric",
    "ValidationError",
    "diagnose_pair",
    "generate",
    "pearson",
    "read_fmap",
    "spearman",
    "upsample",
    "write_fmap",
]
