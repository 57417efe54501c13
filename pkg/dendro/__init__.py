import logging
import sys

import click

from . import extensions
from .errors import ConfigurationError

logger = logging.getLogger("dendro")


def configure_logging(level="INFO"):
    logger.handlers.clear()
    logger.setLevel(level)
    stream_handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)


def _init():
    configure_logging()
    try:
        settings = extensions.init_settings(logger)
    except ConfigurationError as e:
        logger.error(e.message)
        click.get_current_context().exit(2)
    logger.setLevel(settings.log_level)


def create_cli():
    from .bv import bv_cli
    from .dendroidal import dendroidal_cli
    from .operads import operads_cli
    from .preoperads import preoperads_cli
    from .simplicial import simplicial_cli
    from .trees import trees_cli

    return click.CommandCollection(
        "dendro",
        sources=[trees_cli, simplicial_cli, operads_cli, dendroidal_cli, bv_cli, preoperads_cli],
        callback=_init,
        help="Trees, dendroidal sets and simplicial operads on bounded corpora.",
    )
