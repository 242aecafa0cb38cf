"""Risk analytics domain module."""

from app.risk_analytics.schemas import (
    AsymptoteReport,
    Regime,
    ResidualLaw,
    RuleOfThumbRow,
    TailRow,
)
from app.risk_analytics.service import RiskService

__all__ = [
    "AsymptoteReport",
    "Regime",
    "ResidualLaw",
    "RiskService",
    "RuleOfThumbRow",
    "TailRow",
]
