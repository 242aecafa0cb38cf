"""Shared output utilities."""

from app.common.output import config_digest, format_value, header_line, write_csv, write_json

__all__ = [
    "config_digest",
    "format_value",
    "header_line",
    "write_csv",
    "write_json",
]
