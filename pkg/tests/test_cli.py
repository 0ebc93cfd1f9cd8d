import io
import re

import pytest

from knotstates.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_poly_output_format():
    assert run("poly", "--family", "hitch", "--n", "1") == (0, "x^3 + 4x^2 + 3x\n")
    for method in ("brute", "closed", "recurrence"):
        code, text = run("poly", "--family", "twist-knot", "--n", "3", "--method", method)
        assert code == 0
        assert re.fullmatch(r"(\d*x(\^\d+)?)( \+ \d*x(\^\d+)?)*\n", text)
        assert text == "2x^4 + 9x^3 + 14x^2 + 7x\n"


def test_eval():
    assert run("eval", "--expr", "U") == (0, "x\n")
    assert run("eval", "--expr", "closure(L(1) # T(1))", "--method", "brute") == (
        0, "x^3 + 4x^2 + 3x\n")


def test_check_chain_link():
    code, text = run("check", "--family", "chain-link", "--max-crossings", "12")
    assert code == 0
    assert "chain-link n=6 crossings=12 ok" in text
    assert "n=7" not in text


def test_check_all_small():
    code, text = run("check", "--family", "all", "--max-crossings", "6")
    assert code == 0
    assert text.rstrip().endswith("all passed")
    assert "alt-e n=2 crossings=6 ok" in text


def test_table_and_export(tmp_path):
    assert run("table", "--family", "twist-loop", "--rows", "2", "--format", "csv") == (
        0, "0,1\n0,1,1\n")
    code, text = run("export", "--family", "hitch", "--rows", "1", "--start", "1")
    assert (code, text) == (0, "0 0\n1 3\n2 4\n3 1\n")
    target = tmp_path / "h.b"
    assert run("export", "--family", "hitch", "--rows", "3", "--out", str(target))[0] == 0
    assert target.read_bytes().decode() == run("export", "--family", "hitch", "--rows", "3")[1]


def test_series():
    code, text = run("series", "--family", "foil", "--order", "2")
    assert text == "y^0: x^2\ny^1: x^2 + x\ny^2: 2x^2 + 2x\n"


def test_fixtures_verify():
    code, text = run("fixtures", "--verify")
    assert code == 0
    assert text.rstrip().endswith("fixtures verified")


def test_exit_codes(monkeypatch):
    assert run("eval", "--expr", "T(1) # # T(1)")[0] == 2
    assert run("poly", "--family", "nope", "--n", "1")[0] == 2
    assert run("table", "--family", "unknot", "--rows", "2")[0] == 2
    assert run()[0] == 2
    assert run("--guard", "40", "eval", "--expr", "U")[0] == 3
    assert run("poly", "--family", "link", "--n", "20", "--method", "brute")[0] == 3
    assert run("check", "--max-crossings", "31")[0] == 3
    monkeypatch.setenv("KNOTSTATES_MAX_CROSSINGS", "4")
    assert run("eval", "--expr", "H(2)", "--method", "brute")[0] == 3


def test_verification_failure_exit(monkeypatch):
    import knotstates.cli as cli

    monkeypatch.setattr(cli, "family_poly_recurrence", lambda spec: 0)
    assert run("check", "--family", "foil", "--max-crossings", "2")[0] == 1


def test_console_script_help(capsys):
    with pytest.raises(SystemExit):
        from knotstates.cli import build_parser
        build_parser().parse_args(["--help"])
    assert "KNOTSTATES_MAX_CROSSINGS" in capsys.readouterr().out
