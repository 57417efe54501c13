import json

import pytest
from click.testing import CliRunner

from dendro import create_cli, extensions
from dendro.trees.catalog import corolla, linear_tree, two_vertex_tree


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    for name in ("SEED", "BOUND_VERTICES", "BOUND_LEVEL", "LOG_LEVEL"):
        monkeypatch.delenv(f"DENDRO_{name}", raising=False)
    monkeypatch.setattr(extensions, "settings", None)


@pytest.fixture
def t2():
    return two_vertex_tree()


@pytest.fixture
def small_trees():
    return [corolla(0), corolla(1), corolla(2), linear_tree(2), two_vertex_tree()]


@pytest.fixture
def cli(monkeypatch):
    monkeypatch.setenv("DENDRO_LOG_LEVEL", "ERROR")
    return create_cli()


@pytest.fixture
def invoke(cli):
    """Run the CLI and return (exit code, parsed JSON report)."""
    runner = CliRunner()

    def run(*args):
        result = runner.invoke(cli, list(args))
        report = json.loads(result.stdout) if result.stdout.strip() else None
        return result.exit_code, report

    return run
