import click

trees_cli = click.Group("trees")

from . import commands
