import click

simplicial_cli = click.Group("simplicial")

from . import commands
