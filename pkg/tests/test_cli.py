import json
import os
import subprocess
import sys

import pytest

from spacelab.cli import main


M2 = '{"type":"multiples","k":2}'
CO3 = '{"type":"complement","of":{"type":"multiples","k":3}}'
SQUARES = '{"type":"squares"}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lang_count_bare_number(capsys):
    code, out, err = run_cli(capsys, "lang", "count", "--spec", M2,
                             "--n", "4", "--mode", "naive")
    assert code == 0
    assert out == "7\n"
    assert err == ""


def test_lang_count_modes_agree(capsys):
    _, naive, _ = run_cli(capsys, "lang", "count", "--spec", CO3,
                          "--n", "10", "--mode", "naive")
    _, opt, _ = run_cli(capsys, "lang", "count", "--spec", CO3,
                        "--n", "10", "--mode", "optimized")
    assert naive == opt


def test_detect_delta_witness_shape(capsys):
    code, out, _ = run_cli(capsys, "detect", "delta", "--spec", SQUARES,
                           "--depth", "3", "--bound", "100")
    assert code == 0
    assert json.loads(out) == {"kind": "delta_chain", "S": [1, 10, 26],
                               "verified": True, "depth": 3, "bound": 100}


def test_detect_verify_flag(capsys):
    code, out, _ = run_cli(capsys, "detect", "ip", "--spec", M2,
                           "--depth", "2", "--bound", "10", "--verify")
    assert code == 0
    body, tail = out.rsplit("\n", 2)[0], out.strip().splitlines()[-1]
    assert json.loads(body)["A"] == [2, 4]
    assert tail == "verified"


def test_detect_none_result(capsys):
    code, out, _ = run_cli(capsys, "detect", "ip", "--spec",
                           '{"type":"explicit","elems":[3]}',
                           "--depth", "2", "--bound", "10")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "none"
    assert payload["kind"] == "ip_generator"


def test_budget_exit_code(capsys):
    code, out, err = run_cli(capsys, "detect", "delta", "--spec", SQUARES,
                             "--depth", "5", "--bound", "30000",
                             "--budget", "1000")
    assert code == 3
    assert out == ""
    payload = json.loads(err)
    assert payload["error"]["type"] == "budget"
    assert payload["error"]["nodes"] == 1001


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("SPACELAB_BUDGET", "900")
    code, _, err = run_cli(capsys, "detect", "delta", "--spec", SQUARES,
                           "--depth", "5", "--bound", "30000")
    assert code == 3
    assert json.loads(err)["error"]["nodes"] == 901


def test_flag_overrides_env(capsys, monkeypatch):
    monkeypatch.setenv("SPACELAB_BUDGET", "900")
    code, _, err = run_cli(capsys, "detect", "delta", "--spec", SQUARES,
                           "--depth", "5", "--bound", "30000",
                           "--budget", "500")
    assert code == 3
    assert json.loads(err)["error"]["nodes"] == 501


def test_validation_exit_code(capsys):
    code, out, err = run_cli(capsys, "lang", "count", "--spec",
                             "missing-file.json", "--n", "3")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "validation"


def test_spec_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "lang", "count", "--spec",
                           '{"type":"mystery"}', "--n", "3")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "spec"


def test_usage_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "bogus")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "usage"


def test_pset_density_files(capsys, tmp_path):
    out_dir = tmp_path / "dens"
    code, out, _ = run_cli(capsys, "pset", "density", "--spec", CO3,
                           "--horizon", "16", "--window-grid", "4,8",
                           "--out", str(out_dir), "--plot")
    assert code == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == ["banach.csv", "density.json", "density.svg",
                     "manifest.json", "prefix.csv"]
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert manifest["tool"]["name"] == "spacelab"
    assert "timestamp" in manifest
    assert manifest["parameters"]["horizon"] == 16
    assert len(manifest["spec_digests"]["spec"]) == 64
    assert json.loads(out)["prefix_final"] == "11/16"


def test_lang_entropy_csv(capsys):
    code, out, _ = run_cli(capsys, "lang", "entropy", "--spec", M2,
                           "--n-grid", "4,8,12")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,c_n,h_n,omega_n,omega_over_n"
    assert lines[1] == "4,7,0.70183873051440104,2,1/2"
    assert lines[2] == "8,31,0.61927453879835936,4,1/2"
    assert lines[3] == "12,127,0.58239039056434716,6,1/2"


def test_lang_maxones(capsys):
    code, out, _ = run_cli(capsys, "lang", "maxones", "--spec",
                           '{"type":"multiples","k":3}', "--n", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"n": 8, "omega": 3, "ones": [0, 3, 6],
                       "word": "10010010"}


def test_lang_transitive(capsys):
    spec = ('{"type":"union","of":[{"type":"multiples","k":3},'
            '{"type":"explicit","elems":[1,5]}]}')
    code, out, _ = run_cli(capsys, "lang", "transitive", "--spec", spec,
                           "--word-len", "3", "--gap-cap", "6")
    assert code == 0
    payload = json.loads(out)
    assert payload["total_pairs"] == 144
    assert payload["joinable_pairs"] == 135
    assert payload["least_failing"] == ["11", "11"]


def test_dyn_fstat_csv(capsys):
    code, out, _ = run_cli(capsys, "dyn", "fstat", "--spec", CO3,
                           "--horizon", "64", "--x", "greedy", "--y",
                           "zero", "--l", "0", "--n-grid", "16,32,64")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# l=0"
    assert lines[-1] == "64,61/64"


def test_dyn_periodic(capsys):
    code, out, _ = run_cli(capsys, "dyn", "periodic", "--spec",
                           '{"type":"multiples","k":3}', "--k", "3",
                           "--horizon", "24")
    assert code == 0
    assert json.loads(out)["admissible"] is True


def test_exp_run_param_override(capsys):
    code, out, _ = run_cli(capsys, "exp", "run", "delta-kills-density",
                           "--param", "k=4")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "consistent"
    assert payload["params"]["k"] == 4


def test_exp_run_rejects_unknown_id(capsys):
    code, _, err = run_cli(capsys, "exp", "run", "unknown-exp")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "usage"


def test_corpus_run_all_and_determinism(capsys, tmp_path):
    dir_a = tmp_path / "a"
    dir_b = tmp_path / "b"
    for out_dir in (dir_a, dir_b):
        code, out, _ = run_cli(capsys, "corpus", "run-all",
                               "--out", str(out_dir))
        assert code == 0
        index = json.loads(out)
        assert all(v == "consistent" for v in index["verdicts"].values())
        assert len(index["verdicts"]) == 9
    names_a = sorted(p.name for p in dir_a.iterdir())
    names_b = sorted(p.name for p in dir_b.iterdir())
    assert names_a == names_b
    for name in names_a:
        text_a = (dir_a / name).read_text()
        text_b = (dir_b / name).read_text()
        if name == "manifest.json":
            obj_a = json.loads(text_a)
            obj_b = json.loads(text_b)
            obj_a.pop("timestamp")
            obj_b.pop("timestamp")
            assert obj_a == obj_b
        else:
            assert text_a == text_b


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "spacelab.cli", "lang",
                           "count", "--spec", M2, "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "7\n"
