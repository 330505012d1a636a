import json

import pytest

from conftest import FIXTURES
from fusionnet import cli


def fx(name):
    return str(FIXTURES / name)


def test_every_command_is_registered():
    assert sorted(cli.COMMANDS) == sorted(
        [
            "check-net", "check-defect", "check-sector", "compose-defects", "fuse-sectors",
            "fiber-product", "mu-index", "rep-category", "dualize", "check-2algebra",
            "pentagon-rescale", "verify-l2-fusion", "verify-interchange", "separability",
        ]
    )


@pytest.mark.parametrize(
    "args, status",
    [
        (["separability", "matrix_algebra_3.json"], 0),
        (["separability", "dual_numbers.json"], 1),
        (["check-2algebra", "commutative_2algebra.json"], 0),
        (["check-2algebra", "bad_pentagon.json"], 1),
        (["check-2algebra", "bad_mu_shape.json"], 2),
        (["pentagon-rescale", "nonscalar_lambda.json"], 1),
        (["check-defect", "junction_nonfactor.json"], 1),
    ],
)
def test_exit_status(args, status):
    code, text, _, _ = cli.run([args[0], fx(args[1]), *args[2:]])
    assert code == status
    report = json.loads(text)
    assert report["command"] == args[0]
    assert report["inputs"] == [args[1]]


def test_envelope_fields():
    _, text, _, _ = cli.run(["separability", fx("diagonal_4.json")])
    report = json.loads(text)
    assert report["format_version"] == 1
    assert report["status"] == "pass" and report["passes"] is True
    assert report["tolerance"] == 1e-9 and report["seed"] == 0
    assert "conventions" in report


def test_refusal_carries_witness():
    _, text, _, _ = cli.run(["check-defect", fx("junction_nonfactor.json")])
    result = json.loads(text)["result"]
    assert "refused" in result and result["witness"]


def test_text_format_is_flat():
    code, text, _, _ = cli.run(["separability", fx("diagonal_4.json"), "--format", "text"])
    assert code == 0
    lines = text.splitlines()
    assert "status: \"pass\"" in lines
    assert all(": " in line for line in lines)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("FUSIONNET_SEED", "17")
    _, text, _, _ = cli.run(["separability", fx("diagonal_4.json")])
    assert json.loads(text)["seed"] == 17
    _, text, _, _ = cli.run(["separability", fx("diagonal_4.json"), "--seed", "3"])
    assert json.loads(text)["seed"] == 3


@pytest.mark.parametrize("value", ["abc", "-4"])
def test_bad_environment_seed(monkeypatch, value):
    monkeypatch.setenv("FUSIONNET_SEED", value)
    code, text, _, err = cli.run(["separability", fx("diagonal_4.json")])
    assert code == 2
    assert err.startswith("$env.FUSIONNET_SEED")
    assert json.loads(text)["status"] == "input error"


@pytest.mark.parametrize(
    "name, path",
    [("missing_file.json", "$"), ("bad_json.json", "$"), ("bad_version.json", "$.format_version")],
)
def test_input_errors_report_a_path(name, path):
    code, text, _, err = cli.run(["mu-index", fx(name)])
    assert code == 2
    assert json.loads(text)["error"]["path"].startswith(path)
    assert err


def test_main_writes_output_and_stderr(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["check-2algebra", fx("bad_mu_shape.json"), "--output", str(out)]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("fusionnet: error: $.mu")
    assert json.loads(out.read_text())["status"] == "input error"


def test_main_prints_to_stdout(capsys):
    assert cli.main(["separability", fx("matrix_algebra_3.json")]) == 0
    assert json.loads(capsys.readouterr().out)["passes"] is True


@pytest.mark.parametrize("argv", [[], ["no-such-command"], ["separability"], ["separability", "x.json", "--format", "xml"]])
def test_argument_errors_exit_two(argv):
    with pytest.raises(SystemExit) as exc:
        cli.run(argv)
    assert exc.value.code == 2


def test_reports_are_deterministic():
    a = cli.run(["pentagon-rescale", fx("scaled_2algebra.json")])[1]
    b = cli.run(["pentagon-rescale", fx("scaled_2algebra.json")])[1]
    assert a == b


def test_every_command_has_a_format_page():
    docs = FIXTURES.parents[2] / "docs" / "formats"
    for name in cli.COMMANDS:
        page = (docs / f"{name}.md").read_text(encoding="utf-8")
        assert f"$ fusionnet {name}" in page
