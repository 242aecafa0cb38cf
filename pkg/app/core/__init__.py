"""Core application module."""

from app.core.config import settings
from app.core.logging import configure_logging

__all__ = ["configure_logging", "settings"]
