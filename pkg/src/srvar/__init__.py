"""Stochastic-rounding emulation, error bounds, and Monte Carlo verification."""

from .fp_core import (
    BINARY32,
    CarrierRangeError,
    EmulationError,
    FpFormat,
    InvalidInputError,
    RoundingContext,
    RoundingMode,
    fl,
    fl_op,
    neighbors,
    quantize,
)

__version__ = "0.1.0"

__all__ = [
    "BINARY32",
    "CarrierRangeError",
    "EmulationError",
    "FpFormat",
    "InvalidInputError",
    "RoundingContext",
    "RoundingMode",
    "fl",
    "fl_op",
    "neighbors",
    "quantize",
    "__version__",
]
