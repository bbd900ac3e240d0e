import json
import subprocess
import sys

import pytest

from schubert_blowup.cli import CONFIG_ENV, UsageError, build_config, main, read_config_file


def run_cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_scan_n4_is_empty(capsys):
    status, out, _ = run_cli(capsys, "scan", "--n", "4")
    assert status == 0 and json.loads(out) == []


def test_scan_by_subword_criterion_sees_the_degenerate_complexes(capsys):
    # the initial complexes of X^2431 and X^3241 fail while the varieties pass
    _, out, _ = run_cli(capsys, "scan", "--n", "4", "--method", "subword")
    assert json.loads(out) == ["2431", "3241"]


def test_gorenstein_witness(capsys):
    status, out, _ = run_cli(capsys, "gorenstein", "--q", "1,2,1,3,2,1,4,3,2,1",
                             "--pi", "31524", "--witness")
    assert status == 0 and json.loads(out) == "-21-2143--"


def test_gorenstein_report_has_all_verdicts(capsys):
    _, out, _ = run_cli(capsys, "gorenstein", "--q", "1,2,1,3,2,1", "--pi", "1432")
    doc = json.loads(out)
    assert doc["principal"] == doc["link_homology"] == doc["gorenstein"]


def test_subword_json_and_off(capsys):
    _, out, _ = run_cli(capsys, "subword", "--q", "2,1,3,2,4,3", "--pi", "13425")
    doc = json.loads(out)
    assert len(doc["facets"]) == 3 and doc["type"] == "ball"
    _, off, _ = run_cli(capsys, "subword", "--q", "2,1,3,2,4,3", "--pi", "13425", "--format", "off")
    assert off.startswith("OFF")


def test_degenerate_53241(capsys):
    _, out, _ = run_cli(capsys, "degenerate", "--w", "53241", "--v", "12345")
    doc = json.loads(out)
    assert doc["groebner_basis"]
    assert doc["initial_ideal"] == ["z11*z22", "z11*z23", "z12*z23"]


def test_blowup_reports_stability(capsys):
    _, out, _ = run_cli(capsys, "blowup", "--q", "1,2,1,3,2,1", "--pi", "1432", "--steps", "2")
    doc = json.loads(out)
    assert doc["steps"] == 2 and doc["boundary_is_cartier"][1:] == [True, True]


def test_frobenius_command(capsys):
    _, out, _ = run_cli(capsys, "frobenius", "--q", "1,2,1,3,2,1", "--pi", "1432", "--p", "3")
    assert [s["split"] for s in json.loads(out)] == [True, True]


def test_rees_commute_defaults(capsys):
    _, out, _ = run_cli(capsys, "rees-commute")
    doc = json.loads(out)
    assert doc["commutes"]
    assert "z11*e4 - z21*e5" in doc["after_killing_I_epsilons"]


@pytest.mark.parametrize("argv", [
    ["subword", "--q", "1,2,1,3,2,1", "--pi", "1432"],
    ["blowup", "--q", "1,2,1,3,2,1", "--pi", "2143"],
    ["rees-commute"],
])
def test_output_is_byte_identical_across_runs(capsys, argv):
    first = run_cli(capsys, *argv)[1]
    second = run_cli(capsys, *argv)[1]
    assert first == second
    assert json.dumps(json.loads(first), sort_keys=True, ensure_ascii=False) + "\n" == first


@pytest.mark.parametrize("argv, message", [
    (["gorenstein", "--q", "1,x", "--pi", "12"], "bad word"),
    (["subword", "--q", "1,2,1", "--pi", "12"], "--pi"),
    (["frobenius", "--q", "1", "--pi", "21", "--p", "4"], "--p"),
    (["degenerate", "--w", "123", "--v", "1234"], "same"),
    (["rees-commute", "--extra", "q9"], "unknown variable"),
])
def test_bad_arguments_exit_nonzero(capsys, argv, message):
    try:
        status, _, err = run_cli(capsys, *argv)
    except SystemExit as exc:  # argparse rejects at parse time
        status, err = exc.code, capsys.readouterr().err
    assert status in (1, 2) and message in err


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_config_file_sets_defaults_and_flags_win(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# local settings\nworkers = 3\ndegree_cap = 5\n")
    cfg = build_config(["scan", "--n", "3"], {CONFIG_ENV: str(path)})
    assert (cfg.workers, cfg.degree_cap) == (3, 5)
    cfg = build_config(["scan", "--n", "3", "--workers", "2"], {CONFIG_ENV: str(path)})
    assert cfg.workers == 2


def test_config_from_environment_reaches_main(tmp_path, monkeypatch, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("workers = 0\n")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    status, _, err = run_cli(capsys, "scan", "--n", "3")
    assert status == 2 and "positive" in err


@pytest.mark.parametrize("text", ["workers\n", "colour = 3\n", "workers = many\n"])
def test_bad_config_lines(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text)
    with pytest.raises(UsageError):
        read_config_file(str(path))


def test_module_entry_point_runs():
    done = subprocess.run([sys.executable, "-m", "schubert_blowup", "scan", "--n", "3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(done.stdout) == []
