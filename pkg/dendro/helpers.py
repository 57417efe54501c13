import json
import logging
import sys
from functools import wraps
from typing import Any, Dict, List, Optional

import click
from pydantic import BaseModel

from . import extensions
from .errors import DendroError

logger = logging.getLogger(__name__)

EXIT_CODES = {"holds": 0, "emitted": 0, "fails": 1, "error": 2, "inconclusive": 3}


class Bound(BaseModel):
    vertices: int
    level: int


class Report(BaseModel):
    command: str = ""
    status: str
    bound: Optional[Bound] = None
    summary: str = ""
    witnesses: List[Any] = []
    data: Dict[str, Any] = {}
    dot: Optional[str] = None

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def to_json(self):
        return self.model_dump_json(indent=2, exclude={"dot"})

    def to_text(self):
        lines = [f"{self.command}: {self.status}"]
        if self.bound is not None:
            lines.append(f"bound: vertices <= {self.bound.vertices}, level <= {self.bound.level}")
        if self.summary:
            lines.append(self.summary)
        for w in self.witnesses:
            lines.append(f"witness: {json.dumps(w, sort_keys=True, default=str)}")
        return "\n".join(lines)


def verdict(holds):
    return "holds" if holds else "fails"


def common_options(f):
    """Bounds and output options shared by every subcommand."""
    f = click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Write the report here")(f)
    f = click.option(
        "--format", "fmt", type=click.Choice(["json", "dot", "text"]), default="json", show_default=True
    )(f)
    f = click.option("--bound-level", "bound_level", type=int, default=None, help="Simplicial level bound")(f)
    f = click.option(
        "--bound-vertices", "--bound", "bound_vertices", type=int, default=None, help="Tree size bound"
    )(f)
    return f


def write_report(report, fmt, out):
    if fmt == "dot":
        if report.dot is None:
            logger.warning(f"{report.command} has no graph output, writing JSON instead")
            text = report.to_json()
        else:
            text = report.dot
    elif fmt == "text":
        text = report.to_text()
    else:
        text = report.to_json()

    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def emits_report(f):
    """Run a subcommand, turn its outcome into a report and an exit code.

    Bounds left unset on the command line fall back to the settings. A report
    is written on every path, errors included.
    """

    @wraps(f)
    def decorated_function(*args, fmt="json", out=None, bound_vertices=None, bound_level=None, **kwargs):
        ctx = click.get_current_context()
        command = ctx.info_name or f.__name__
        try:
            settings = extensions.current_settings()
            bound = Bound(
                vertices=settings.bound_vertices if bound_vertices is None else bound_vertices,
                level=settings.bound_level if bound_level is None else bound_level,
            )
            if bound.vertices < 0 or bound.level < 0:
                raise click.BadParameter("bounds must be non-negative")
            report = f(*args, bound=bound, **kwargs)
            report.command = command
            report.bound = bound
        except DendroError as e:
            logger.warning(f"{command} stopped: {e.message}")
            report = Report(
                command=command,
                status="error",
                summary=e.message,
                witnesses=[e.witness] if e.witness is not None else [],
            )
        except click.BadParameter as e:
            report = Report(command=command, status="error", summary=str(e))
        except Exception as e:
            logger.error(f"Unexpected failure in {command}: {e}", exc_info=True)
            report = Report(command=command, status="error", summary=f"unexpected error: {e}")

        logger.info(f"{command} finished with status {report.status}")
        write_report(report, fmt, out)
        sys.exit(report.exit_code)

    return decorated_function
