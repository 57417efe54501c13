import click

preoperads_cli = click.Group("preoperads")

from . import commands
