import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from cobarkit import cli
from cobarkit.cache import cache_get_or_compute, cache_key, entry_path

from cli_cases import CASES


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_every_subcommand_has_a_case():
    assert set(CASES) == set(cli.COMMANDS)


@pytest.mark.parametrize("name", sorted(CASES))
def test_deterministic_with_and_without_cache(name, capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("COBARKIT_CACHE", raising=False)
    argv = CASES[name]
    code1, out1, err1 = run(argv, capsys)
    assert code1 == 0, err1
    code2, out2, _ = run(argv, capsys)
    cache = str(tmp_path / "cache")
    code3, out3, _ = run(argv + ["--cache-dir", cache], capsys)
    code4, out4, _ = run(argv + ["--cache-dir", cache], capsys)
    assert code2 == code3 == code4 == 0
    assert out1 == out2 == out3 == out4
    json.loads(out1)
    assert any(Path(cache).rglob("*.json"))


def test_known_outputs(capsys):
    assert run(CASES["adem"], capsys)[1] == '{"terms":[{"coeff":1,"sq":[3,1]}]}\n'
    assert json.loads(run(CASES["lambda"], capsys)[1]) == {"lambda": 3, "n": 26}
    assert json.loads(run(CASES["pi-rank"], capsys)[1])["rank"] == 7
    assert json.loads(run(CASES["member-msu"], capsys)[1])["member"] is True
    assert json.loads(run(CASES["verify-g"], capsys)[1])["ok"] is True
    assert json.loads(run(CASES["e2"], capsys)[1])["equal"] is True


def test_env_cache_and_no_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("COBARKIT_CACHE", str(tmp_path))
    run(CASES["basis"], capsys)
    assert any(tmp_path.rglob("*.json"))
    other = tmp_path / "other"
    monkeypatch.setenv("COBARKIT_CACHE", str(other))
    run(CASES["basis"] + ["--no-cache"], capsys)
    assert not other.exists()


def test_corrupt_cache_is_recomputed(capsys, tmp_path):
    argv = CASES["antipode"] + ["--cache-dir", str(tmp_path)]
    _, good, _ = run(argv, capsys)
    files = list(tmp_path.rglob("*.json"))
    assert len(files) == 1
    for junk in ("{not json", '{"key":"wrong","payload":{}}', '{"payload":7}', ""):
        files[0].write_text(junk)
        code, out, _ = run(argv, capsys)
        assert code == 0 and out == good
    entry = json.loads(files[0].read_text())
    assert entry["payload"] == json.loads(good)


def test_cache_helper_round_trip(tmp_path):
    key = cache_key("v", "sub", 3, {"tmax": 4}, {"x": 1})
    calls = []

    def producer():
        calls.append(1)
        return {"a": (1, 2)}

    assert cache_get_or_compute(key, producer, tmp_path) == {"a": [1, 2]}
    assert cache_get_or_compute(key, producer, tmp_path) == {"a": [1, 2]}
    assert len(calls) == 1
    assert entry_path(tmp_path, key).exists()
    assert cache_key("v2", "sub", 3, {"tmax": 4}, {"x": 1}) != key


@pytest.mark.parametrize("argv", [
    ["adem", "--prime", "4", "--word", "Sq2"],
    ["adem", "--prime", "2", "--word", "P1"],
    ["basis", "--prime", "3"],
    ["cotor", "--prime", "3", "--smax", "-1", "--tmax", "4"],
    ["coaction", "--prime", "2", "--gen", "2"],
    ["nonsense"],
    [],
    ["cobar-d", "--prime", "3", "--element", "{broken"],
    ["split-g", "--prime", "3", "--gen", "1"],
])
def test_validation_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "validation"


def test_resource_limit_exit_3(capsys):
    code, _, err = run(["cotor", "--prime", "3", "--comodule", "MSU", "--smax", "3",
                        "--tmax", "30", "--size-limit", "10"], capsys)
    assert code == 3
    assert json.loads(err)["error"] == "resource_limit"


def test_internal_error_exit_1(capsys, monkeypatch):
    def boom(args, p):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.COMMANDS, "lambda", (boom, "broken"))
    code, _, err = run(["lambda", "--n", "3"], capsys)
    assert code == 1 and json.loads(err)["error"] == "internal"


def test_input_output_files_and_table(capsys, tmp_path):
    src = tmp_path / "x.json"
    src.write_text(json.dumps({"p": 3, "terms": [{"coeff": 1, "xi": [0, 1], "tau": []}]}))
    dst = tmp_path / "out.json"
    code, out, _ = run(["antipode", "--prime", "3", "--input", str(src), "--output", str(dst)], capsys)
    assert code == 0 and out == ""
    same = run(["antipode", "--prime", "3", "--xi", "2"], capsys)[1]
    assert dst.read_text() == same
    table = run(["cotor", "--prime", "3", "--coalgebra", "lambda-tau0", "--smax", "2",
                 "--tmax", "3", "--format", "table"], capsys)[1]
    assert table.splitlines()[0].startswith("s\\t")


def test_console_script_entry_point(tmp_path):
    env = dict(os.environ)
    env.pop("COBARKIT_CACHE", None)
    proc = subprocess.run([sys.executable, "-m", "cobarkit.cli", *CASES["adem"]],
                          capture_output=True, text=True, env=env, check=False)
    assert proc.returncode == 0
    assert proc.stdout == '{"terms":[{"coeff":1,"sq":[3,1]}]}\n'
