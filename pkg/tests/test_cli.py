import io
import json
import subprocess
import sys

import pytest

from tqft2d.cli import run
from tqft2d.exact import parse_poly
from tqft2d.symfun import Partition


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_graded_rank_example():
    code, rep = call_json("graded-rank", "--theory", "const beta", "--k", "4")
    assert code == 0 and rep["status"] == "ok"
    assert rep["result"] == {"rank": 14, "graded": "1+6q^2+6q^4+q^6"}


def test_superschur_example():
    code, rep = call_json("superschur", "--lambda", "2,1", "--M", "1", "--N", "1")
    assert code == 0
    assert rep["result"]["polynomial"] == "x1^2*y1+x1*y1^2"


def test_detect_rational_example():
    code, rep = call_json("detect-rational", "--seq", "1,0,0,0,0,0")
    assert code == 0
    assert rep["result"]["P"] == "1" and rep["result"]["Q"] == "1"
    code, rep = call_json("detect-rational", "--seq", "1,1,2,5,14,42,132,429,1430,4862")
    assert rep["result"] == {"rational": False}


def test_invalid_input_exit_one_with_token():
    code, rep = call_json("graded-rank", "--theory", "const beta", "--k", "four")
    assert code == 1 and rep["status"] == "error" and rep["token"] == "four"
    code, rep = call_json("superschur", "--lambda", "2,x", "--M", "1", "--N", "1")
    assert code == 1 and rep["token"] == "2,x"
    code, rep = call_json("nonsense")
    assert code == 1 and rep["token"] == "nonsense"
    code, rep = call_json("day-verify", "--roots", "1,1", "--n", "2")
    assert code == 1


def test_internal_failure_exit_two(monkeypatch):
    import tqft2d.cli as cli

    def boom(args):
        raise AssertionError("broken invariant")

    monkeypatch.setattr(cli, "cmd_schur", boom)
    code, rep = call_json("schur", "--lambda", "1", "--M", "1")
    assert code == 2 and "broken invariant" in rep["message"]


SUBCOMMANDS = [
    ["state-space", "--theory", "poly b0,b1", "--k", "2", "--cap", "1"],
    ["relations", "--theory", "const beta", "--k", "4", "--labels"],
    ["graded-rank", "--theory", "const beta", "--k", "3"],
    ["gram", "--theory", "const beta", "--k", "2", "--det"],
    ["detect-rational", "--seq", "1,2,4,8,16,32"],
    ["schur", "--lambda", "2,1", "--M", "3"],
    ["superschur", "--lambda", "2,1", "--M", "2", "--N", "1"],
    ["sp-verify", "--lambda", "3,2,1", "--M", "2", "--N", "2"],
    ["foam-theta", "--mu", "2,1", "--M", "3"],
    ["foam-overlap", "--lambda", "2,2,1", "--M", "2", "--N", "1"],
    ["resultant-check", "--M", "2", "--N", "2"],
    ["day-verify", "--delta", "1/2", "--rho", "3", "--roots", "1,2", "--n", "4"],
    ["frobenius2", "--upto", "5"],
]


@pytest.mark.parametrize("argv", SUBCOMMANDS, ids=lambda a: a[0])
def test_every_subcommand_is_deterministic(argv):
    first = call(*argv)
    second = call(*argv)
    assert first[0] == 0
    assert first == second
    rep = json.loads(first[1])
    assert rep["status"] == "ok" and rep["command"] == argv[0]
    assert list(rep) == sorted(rep)


def test_checks_report_success():
    assert call_json(*SUBCOMMANDS[7])[1]["result"]["equal"]
    assert call_json(*SUBCOMMANDS[8])[1]["result"]["equals_schur"]
    assert call_json(*SUBCOMMANDS[9])[1]["result"]["equals_superschur"]
    assert call_json(*SUBCOMMANDS[10])[1]["result"]["equal"]
    assert call_json(*SUBCOMMANDS[11])[1]["result"]["equal"]
    assert call_json(*SUBCOMMANDS[12])[1]["result"]["matches_closed_form"]


def test_results_round_trip_through_text_formats():
    from tqft2d.cobord import Cobordism

    rep = call_json(*SUBCOMMANDS[0])[1]["result"]
    for text in rep["pivots"]:
        assert str(Cobordism.from_text(text, 2)) == text
    poly = call_json(*SUBCOMMANDS[6])[1]["result"]["polynomial"]
    assert str(parse_poly(poly)) == poly
    assert str(Partition.from_text(SUBCOMMANDS[6][2])) == "2,1"


def test_plain_mode():
    code, text = call("graded-rank", "--theory", "const beta", "--k", "4", "--plain")
    assert code == 0
    assert text.splitlines() == ["graded: 1+6q^2+6q^4+q^6", "rank: 14"]
    code, text = call("graded-rank", "--theory", "nope", "--k", "4", "--plain")
    assert code == 1 and text.startswith("error:")


def test_verbose_goes_to_stderr():
    proc = subprocess.run(
        [sys.executable, "-m", "tqft2d.cli", "graded-rank", "--theory", "const beta", "--k", "3", "--verbose"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["rank"] == 5
    assert "state space" in proc.stderr
