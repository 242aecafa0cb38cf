"""Run exceptions."""

from pydantic import ValidationError

from app.core.exceptions import ConfigurationError
from app.runs import constants


class ConfigFileError(ConfigurationError):
    """Exception raised when the configuration document cannot be read."""


class ConfigValidationError(ConfigurationError):
    """Exception raised when the configuration violates the run schema."""

    def __init__(self, error: ValidationError):
        lines = [
            constants.CONFIG_FIELD_ERROR.format(
                location=".".join(str(part) for part in item["loc"]) or "<root>",
                message=item["msg"],
            )
            for item in error.errors()
        ]
        super().__init__("; ".join(lines))
        self.locations = [".".join(str(part) for part in item["loc"]) for item in error.errors()]
