"""Runs domain module."""

from app.runs.schemas import Command, Grids, RunConfig, RunOutcome, TransformTarget
from app.runs.service import RunService

__all__ = ["Command", "Grids", "RunConfig", "RunOutcome", "RunService", "TransformTarget"]
