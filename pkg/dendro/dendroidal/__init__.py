import click

dendroidal_cli = click.Group("dendroidal")

from . import commands
