import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from charp.cli import main

GOLDEN = Path(__file__).parent / "golden"
EX = ["--p", "2", "--base", "v", "--vars", "x,y"]

# name -> argv; outputs are compared byte-for-byte with tests/golden/<name>.json
SCENARIOS = {
    "sing_locus_p2": EX + ["sing-locus", "x^2+v*y^2", "--r", "1"],
    "sing_locus_p3": ["--p", "3", "--base", "v", "--vars", "x,y", "sing-locus", "x^3+v*y^3", "--r", "1"],
    "sing_locus_p5": ["--p", "5", "--base", "v", "--vars", "x,y", "sing-locus", "x^5+v*y^5", "--r", "1"],
    "regular_origin": EX + ["regular", "x^2+v*y^2", "--r", "1", "--point", "x=0,y=0"],
    "regular_generic": EX + ["regular", "x^2+v*y^2", "--r", "1",
                             "--prime-gens", "x^2+v*y^2", "--assert-prime"],
    "order_origin": EX + ["order", "x^2+v*y^2", "--point", "x=0,y=0"],
    "order_ideal": EX + ["order", "x", "y^2", "--point", "x=0,y=0"],
    "order_zero": EX + ["order", "0", "--point", "x=0,y=0"],
    "hasse_v": EX + ["hasse", "x^2+v*y^2", "--beta", "v:1"],
    "saturate_n1": EX + ["saturate", "x^2+v*y^2", "--n", "1"],
    "stratify_3": EX + ["stratify", "x^2+v*y^2", "--nmax", "3"],
    "groebner_equal": EX + ["groebner", "x^2+v*y^2; y^2"],
    "refit_v_plus_x": ["--p", "3", "--base", "v", "--vars", "x", "refit", "v+x", "--point", "x=0"],
    "refit_quotient": ["--p", "3", "--base", "v", "--vars", "x,y", "refit", "x+v", "y", "--r", "1",
                       "--point", "x=0,y=0"],
    "refit_deficient": EX + ["refit", "x^2", "--point", "x=0,y=0"],
    "decompose_p3": ["--p", "3", "--base", "v", "--vars", "x", "decompose-p", "x^3+v*x"],
    "unknown_identifier": EX + ["hasse", "x + z", "--beta", "v:1"],
}

EXIT_CODES = {"refit_deficient": 1, "unknown_identifier": 2}


def _run(argv, capsys, env_format="json"):
    code = main(["--format", env_format] + argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_golden(name, capsys):
    code, out, _ = _run(SCENARIOS[name], capsys)
    assert code == EXIT_CODES.get(name, 0)
    path = GOLDEN / f"{name}.json"
    if os.environ.get("CHARP_REGEN_GOLDEN"):
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")
    record = json.loads(out)
    assert record["command"] == SCENARIOS[name][SCENARIOS[name].index("--vars") + 2]
    if code == 0:
        assert set(record) == {"command", "inputs_echo", "result", "provenance"}
    else:
        assert set(record) == {"command", "error"}


def test_outputs_deterministic(capsys):
    first = _run(SCENARIOS["stratify_3"], capsys)
    assert _run(SCENARIOS["stratify_3"], capsys) == first


def test_text_examples(capsys):
    assert _run(SCENARIOS["sing_locus_p2"], capsys, "text")[1] == "x^2+v*y^2\ny^2\n"
    assert _run(SCENARIOS["order_origin"], capsys, "text")[1] == "2\n"
    assert _run(SCENARIOS["hasse_v"], capsys, "text")[1] == "y^2\n"
    assert _run(SCENARIOS["order_zero"], capsys, "text")[1] == "inf\n"


def test_sing_locus_json_fields(capsys):
    record = json.loads(_run(SCENARIOS["sing_locus_p2"], capsys)[1])
    assert record["result"]["generators"] == ["x^2+v*y^2", "y^2"]
    assert record["result"]["jacobian"] == {"columns": ["v"], "rows": [["y^2"]]}
    assert record["inputs_echo"]["p"] == 2


def test_regular_records(capsys):
    rec = json.loads(_run(SCENARIOS["regular_generic"], capsys)[1])["result"]
    assert rec == {"rank": 1, "r": 1, "regular": True, "witness_rows": [0], "witness_cols": ["v"]}
    rec = json.loads(_run(SCENARIOS["regular_origin"], capsys)[1])["result"]
    assert rec["regular"] is False and rec["witness_rows"] is None


def test_parse_error_location(capsys):
    code, _, err = _run(SCENARIOS["unknown_identifier"], capsys, "text")
    assert code == 2
    assert "line 1, column 5" in err


@pytest.mark.parametrize("argv, code", [
    (EX + ["order", "x^2+v*y^2"], 2),                                   # no prime
    (EX + ["order", "x", "--point", "x=0"], 2),                           # incomplete point
    (EX + ["order", "x", "--prime-gens", "x"], 2),                        # unasserted prime
    (EX + ["regular", "x+1", "--r", "1", "--point", "x=0,y=0"], 2),       # J not in P
    (EX + ["sing-locus", "x", "--r", "2"], 2),                            # bad height
    (["--p", "4", "--vars", "x", "hasse", "x", "--beta", "x:1"], 2),      # composite p
    (EX + ["stratify", "x", "--nmax", "0"], 2),
    (EX + ["groebner", "x+y+"], 2),
    (EX + ["refit", "x^2", "--point", "x=0,y=0"], 1),                     # rank deficient
    (EX + ["refit", "x", "y", "--r", "3", "--point", "x=0,y=0"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert _run(argv, capsys, "text")[0] == code


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--vars", "x", "hasse", "x", "--beta", "x:1"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(EX + ["no-such-command"])
    assert info.value.code == 2


def test_at_path_expansion(tmp_path, capsys):
    src = tmp_path / "ideal.txt"
    src.write_text("x^2+v*y^2\ny^2\n", encoding="utf-8")
    code, out, _ = _run(EX + ["groebner", f"@{src}"], capsys, "text")
    assert code == 0 and out == "x^2\ny^2\n"
    code, _, err = _run(EX + ["groebner", f"@{tmp_path / 'missing.txt'}"], capsys, "text")
    assert code == 2 and "cannot read" in err


def test_env_default_format(monkeypatch, capsys):
    monkeypatch.setenv("CHARP_OUTPUT", "json")
    assert main(SCENARIOS["hasse_v"]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == {"value": "y^2"}
    monkeypatch.setenv("CHARP_OUTPUT", "text")
    assert main(SCENARIOS["hasse_v"]) == 0
    assert capsys.readouterr().out == "y^2\n"
    monkeypatch.setenv("CHARP_OUTPUT", "yaml")
    assert main(SCENARIOS["hasse_v"]) == 2


def test_threads_same_output(capsys):
    argv = ["--p", "3", "--base", "v", "--vars", "x,y"]
    tail = ["stratify", "x^4+v*y^3", "x*y^2+v", "--nmax", "3"]
    single = _run(argv + tail, capsys)
    assert _run(argv + ["--threads", "3"] + tail, capsys) == single


def test_print_parse_round_trip(capsys):
    # the CLI echo of an input is its canonical form; feeding it back is a fixed point
    code, out, _ = _run(["--p", "5", "--base", "v", "--vars", "x,y",
                         "groebner", "3*x*y - v^2*x + 7", "y^3 + (x+v)^2"], capsys)
    echo = json.loads(out)["inputs_echo"]["gens"]
    code2, out2, _ = _run(["--p", "5", "--base", "v", "--vars", "x,y", "groebner"] + echo, capsys)
    assert code == code2 == 0
    assert json.loads(out2)["inputs_echo"]["gens"] == echo
    assert json.loads(out2)["result"] == json.loads(out)["result"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "charp"] + EX + ["hasse", "x^2+v*y^2", "--beta", "v:1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "y^2\n"
