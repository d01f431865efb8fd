import json
import subprocess
import sys

import pytest

from morita.cli import RunConfig, main, parse_cw_file, run
from morita.cw import CWError, cellular_model

CP2_DOC = json.dumps({"name": "CP2", "field": "q", "cells": [
    {"id": "e0", "dim": 0},
    {"id": "alpha1", "dim": 2},
    {"id": "alpha3", "dim": 4, "attach_cycle": "alpha1*alpha1"},
]}, indent=1)


def rows(text):
    return [tuple(int(x) for x in line.split("\t")[:2])
            for line in text.splitlines() if line and not line.startswith("#")]


def test_homology_of_cp2():
    out = run(RunConfig("homology", space="cp:2", max_degree=5, field="q"))
    assert rows(out) == [(0, 1), (1, 1), (2, 0), (3, 0), (4, 1), (5, 1)]


def test_s1_hom():
    assert rows(run(RunConfig("s1-hom", lam="1", field="q"))) == [(0, 1), (1, 1)]
    assert rows(run(RunConfig("s1-hom", lam="2/3"))) == [(0, 0), (1, 0)]


def test_ext_of_rp2_mod_2():
    out = run(RunConfig("ext", space="rp:2", field="fp:2", max_degree=2))
    assert rows(out) == [(0, 1), (1, 1), (2, 1)]
    assert "cohomological" in out


def test_json_output():
    doc = json.loads(run(RunConfig("hh", space="cp:2", max_degree=2, format="json", oracle=True)))
    assert doc["dims"] == {"0": 1, "1": 1, "2": 1}
    assert doc["stability_flag"] == "exact"
    assert doc["notes"]["oracle_agrees"] is True


def test_output_is_deterministic():
    cfg = RunConfig("hh", space="cp:2", max_degree=3, cohomology=True, oracle=True)
    assert run(cfg) == run(cfg)


def test_parse_cw_file():
    X = parse_cw_file(CP2_DOC)
    A = cellular_model(X)
    assert A.diff["alpha3"] == A.poly("alpha1*alpha1")


def test_parse_errors_carry_context():
    with pytest.raises(CWError, match="reduced CW structure required"):
        parse_cw_file('{"cells": [{"id": "p", "dim": 0}, {"id": "q", "dim": 0}]}')
    with pytest.raises(CWError, match="line 3"):
        parse_cw_file('{\n"cells": [\n  {"id": "e0" "dim": 0}]}')
    with pytest.raises(CWError, match="'b'.*unknown cell 'zz'"):
        parse_cw_file('{"cells": [{"id": "e0", "dim": 0}, {"id": "a", "dim": 2},'
                      ' {"id": "b", "dim": 4, "attach_cycle": "a*zz"}]}')


def test_sphere_builtin_via_name(capsys):
    assert main(["build", "--space", "sphere:3"]) == 0
    assert "x2\t2\td = 0" in capsys.readouterr().out


def test_file_input(tmp_path, capsys):
    path = tmp_path / "cp2.json"
    path.write_text(CP2_DOC)
    assert main(["homology", "--file", str(path), "--max-degree", "4"]) == 0
    assert rows(capsys.readouterr().out) == [(0, 1), (1, 1), (2, 0), (3, 0), (4, 1)]


@pytest.mark.parametrize("argv,needle", [
    (["homology", "--space", "torus"], "--word-bound"),
    (["homology", "--space", "nowhere:2"], "unknown space"),
    (["homology"], "exactly one of"),
    (["s1-hom", "--lambda", "0"], "not invertible"),
    (["ext", "--space", "cp:2", "--field", "fp:4"], "prime"),
])
def test_errors_are_single_line_with_nonzero_exit(argv, needle, capsys):
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert needle in err and err.count("\n") == 1


def test_check_command(capsys):
    assert main(["check", "--space", "cp:2", "--max-degree", "3", "--oracle"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "ext_oracle\tok" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "morita.cli", "spaces"],
                          capture_output=True, text=True, check=True)
    assert "cp\tn" in proc.stdout
