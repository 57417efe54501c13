import os

from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigurationError


class Settings(BaseModel):
    seed: int = 0
    bound_vertices: int = Field(default=4, ge=0)
    bound_level: int = Field(default=3, ge=0)
    log_level: str = "INFO"

    @field_validator("log_level")
    @classmethod
    def known_level(cls, value):
        value = value.upper()
        if value not in ("DEBUG", "INFO", "WARNING", "ERROR"):
            raise ValueError(f"unknown log level {value}")
        return value


def get_settings(prefix="DENDRO_", environ=None):
    """Read ``DENDRO_*`` variables into a validated ``Settings`` object.

    ``.env`` files are loaded by the entry point before this runs, so the
    values found here already include them.
    """
    environ = os.environ if environ is None else environ
    values = {}
    for name in Settings.model_fields:
        raw = environ.get(f"{prefix}{name.upper()}")
        if raw is not None and raw != "":
            values[name] = raw

    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid {prefix}* configuration: {e}") from e
