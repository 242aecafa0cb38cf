"""Inversion domain module."""

from app.inversion.schemas import (
    ExponentEstimate,
    ExponentQuadratureConfig,
    InversionConfig,
    InversionMethod,
    TailCurve,
)
from app.inversion.service import InversionService

__all__ = [
    "ExponentEstimate",
    "ExponentQuadratureConfig",
    "InversionConfig",
    "InversionMethod",
    "InversionService",
    "TailCurve",
]
