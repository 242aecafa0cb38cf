"""Transforms domain module."""

from app.transforms.schemas import InspectionScheme, LstCurve
from app.transforms.service import TransformService

__all__ = ["InspectionScheme", "LstCurve", "TransformService"]
