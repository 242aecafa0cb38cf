"""Logging setup."""

import logging

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "inspected-levy"


def configure_logging(level: str | int = "INFO") -> None:
    """
    Install a rich handler on the root logger.

    Safe to call more than once; later calls only change the level.

    Args:
        level: Level name or number
    """
    root = logging.getLogger()
    if isinstance(level, str):
        level = level.upper()
    root.setLevel(level)

    if any(getattr(h, "name", None) == _HANDLER_NAME for h in root.handlers):
        return

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.name = _HANDLER_NAME
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root.addHandler(handler)
