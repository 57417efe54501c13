import logging

from .settings import get_settings

settings = None


def init_settings(logger=None, environ=None):
    global settings
    logger = logger or logging.getLogger("dendro")

    settings = get_settings(environ=environ)
    logger.debug(
        f"Settings initialised: seed={settings.seed} bound_vertices={settings.bound_vertices} "
        f"bound_level={settings.bound_level}"
    )
    return settings


def current_settings():
    """Settings of this process, initialising them on first use."""
    if settings is None:
        return init_settings()
    return settings
