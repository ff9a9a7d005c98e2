import json

import pytest

from linext import gallery
from linext.cli import (RunConfig, format_ideal, main, parse_ideal, read_ideal, run_pipeline,
                        write_ideal)
from linext.errors import ParseError, PipelineError


def test_parse_small_ideal():
    (q,) = parse_ideal("p 7\nvars x0 x1\nx0^2+x1^2\n")
    assert q.degree == 2 and q.ring.p == 7


def test_malformed_exponent_position():
    with pytest.raises(ParseError) as err:
        parse_ideal("p 7\nvars x0 x1\nx0^2 + x1^z\n")
    assert err.value.line == 3 and err.value.column == 11


def test_bad_header():
    with pytest.raises(ParseError):
        parse_ideal("p 8\nvars x0\nx0\n")
    with pytest.raises(ParseError):
        parse_ideal("vars x0\np 7\n")


def test_round_trip(tmp_path):
    gens = gallery.del_pezzo6()
    path = tmp_path / "dp6.txt"
    write_ideal(gens, path)
    assert read_ideal(path) == gens
    assert format_ideal(read_ideal(path)) == path.read_text()


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig("rnc4", p=3)
    with pytest.raises(ValueError):
        RunConfig("rnc4", budget=0)


def test_env_prime(monkeypatch):
    monkeypatch.setenv("LINEXT_PRIME", "10007")
    assert RunConfig("rnc4").p == 10007


def test_rnc4_report():
    r = run_pipeline(RunConfig("rnc4", census=True))
    js = r.to_json()
    assert js["schema"].startswith("linext-report/")
    assert js["W"]["dim"] == 9 and js["strata"] == {"7": 1, "5": 1}
    assert [x["status"] for x in js["extensions"]] == ["verified", "verified"]
    assert all(c["evidence"]["sound"] for c in js["components"])
    assert js["census"]["agrees"] and r.ok
    assert "timings" not in js and set(r.timings) >= {"resolve", "extend", "decompose"}


def test_unit_ideal_fails_in_resolve(tmp_path):
    path = tmp_path / "unit.txt"
    path.write_text("p 7\nvars x0 x1\n1\n")
    with pytest.raises(PipelineError) as err:
        run_pipeline(RunConfig(str(path), p=7))
    assert err.value.stage == "resolve"


def test_main_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["extend", "rnc4", "--out", str(out)]) == 0
    js = json.loads(out.read_text())
    assert js["config"]["input"] == "rnc4"
    assert "components by dimension" in capsys.readouterr().err


def test_main_construct(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["construct", "rnc4", "--prime", "101", "--out", str(out)]) == 0
    assert out.read_text().startswith("p 101\n")


def test_main_error_exit(tmp_path):
    assert main(["extend", str(tmp_path / "missing.txt")]) == 2
