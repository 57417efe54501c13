import json

from click.testing import CliRunner

from dendro import create_cli


def test_list_trees(invoke):
    code, report = invoke("trees", "--max-vertices", "2", "--max-arity", "2")
    assert code == 0
    assert report["status"] == "emitted"
    assert report["data"]["count"] == len(report["data"]["trees"]) > 0
    assert report["bound"] == {"vertices": 4, "level": 3}


def test_negative_sizes_are_rejected(invoke):
    code, report = invoke("trees", "--max-vertices", "-1", "--max-arity", "2")
    assert code == 2
    assert report["status"] == "error"


def test_unknown_tree_is_an_error(invoke):
    code, report = invoke("hom", "--source", "nope", "--target", "T2")
    assert code == 2
    assert report["status"] == "error"
    assert report["command"] == "hom"


def test_horn_is_connected(invoke):
    code, report = invoke("sset", "--space", "horn:2:1")
    assert code == 0
    assert report["data"]["pi0"] == 1


def test_terminal_is_not_normal(invoke):
    code, report = invoke("check-normal", "--dset", "terminal", "--bound", "2")
    assert code == 1
    assert report["status"] == "fails"
    assert report["witnesses"]


def test_segal_check_of_omega(invoke):
    code, report = invoke("check-segal", "--preoperad", "omega(T2;delta:1)", "--bound", "2", "--bound-level", "1")
    assert code == 1
    assert report["bound"] == {"vertices": 2, "level": 1}


def test_generator_c2(invoke):
    code, report = invoke("generators", "--family", "C2", "--n", "2", "--m", "1")
    assert code == 0
    assert report["data"]["parameters"]


def test_validate_com(invoke):
    code, report = invoke("validate", "--operad", "com3")
    assert code == 0
    assert report["data"]["violations"] == 0


def test_validate_needs_one_operad(invoke):
    code, report = invoke("validate")
    assert code == 2
    assert "exactly one" in report["summary"]


def test_text_report_to_file(cli, tmp_path):
    out = tmp_path / "report.txt"
    result = CliRunner().invoke(cli, ["sset", "--space", "delta:1", "--format", "text", "--out", str(out)])
    assert result.exit_code == 0
    assert out.read_text().startswith("sset: emitted")


def test_bounds_come_from_the_environment(monkeypatch, invoke):
    monkeypatch.setenv("DENDRO_BOUND_VERTICES", "1")
    code, report = invoke("sset", "--space", "delta:0")
    assert code == 0
    assert report["bound"]["vertices"] == 1


def test_bad_log_level_stops_the_cli(monkeypatch):
    monkeypatch.setenv("DENDRO_LOG_LEVEL", "LOUD")
    result = CliRunner().invoke(create_cli(), ["sset", "--space", "delta:0"])
    assert result.exit_code == 2
    assert result.stdout.strip() == ""


def dot_output(cli, *args):
    result = CliRunner().invoke(cli, [*args, "--format", "dot"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph")
    return result.stdout


def test_nerve_draws_its_tree(cli):
    source = dot_output(cli, "nerve", "--operad", "com2", "--tree", "T2")
    assert source.count("->") == 5
    assert "label=t" in source


def test_w_space_draws_its_cube(cli):
    # one inner edge, so W(T2) at the full profile is an interval
    assert dot_output(cli, "w-space", "--tree", "T2").count("->") == 1


def test_trees_draw_one_graph_each(cli):
    source = dot_output(cli, "trees", "--max-vertices", "1", "--max-arity", "2")
    assert source.count("digraph") == 4


def test_reports_without_a_graph_fall_back_to_json(cli):
    result = CliRunner().invoke(cli, ["validate", "--operad", "com2", "--format", "dot"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["status"] == "holds"
