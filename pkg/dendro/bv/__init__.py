import click

bv_cli = click.Group("bv")

from . import commands
