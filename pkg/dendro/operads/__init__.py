import click

operads_cli = click.Group("operads")

from . import commands
