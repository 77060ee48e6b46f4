"""Command-line interface: output formats, exit codes, configuration."""

from __future__ import annotations

import dataclasses
import json

import pytest

from fatpoints import cli
from fatpoints.cli import cli_main
from fatpoints.pipeline import RunConfig, run_counterexample


def test_no_arguments_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        cli_main([])
    assert info.value.code == 2


def test_vdim_and_edim(capsys):
    assert cli_main(["vdim", "L3(4,2^9)"]) == 0
    assert capsys.readouterr().out == "-2\n"
    assert cli_main(["edim", "L3(4,2^9)"]) == 0
    assert capsys.readouterr().out == "-1\n"
    assert cli_main(["vdim", "L2(12,3^2,4^8)"]) == 0
    assert capsys.readouterr().out == "-2\n"


def test_special_text_output(capsys):
    code = cli_main(["special", "L3(9,6,4^8)", "--seed", "3", "--trials", "2"])
    assert code == 0
    assert capsys.readouterr().out == "special: true (vdim 3, edim 4)\n"


def test_special_json_output(capsys):
    code = cli_main(["special", "L2(6,1^2,2^8)", "--seed", "3", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["special"] is False
    assert payload["h0"] == 2
    assert payload["seed"] == 3
    assert payload["command"] == "special"


def test_restrict_and_toplanar(capsys):
    assert cli_main(["restrict", "L3(9,6,4^8)"]) == 0
    assert capsys.readouterr().out == "(9,9;6;4^8)\n"
    assert cli_main(["toplanar", "(9,9;6;4^8)"]) == 0
    assert capsys.readouterr().out == "L2(12,3^2,4^8)\n"


def test_toplanar_flags_negative_multiplicities(capsys):
    assert cli_main(["toplanar", "(5,2;4;1,1)"]) == 0
    out = capsys.readouterr().out
    assert "negative multiplicity" in out
    assert cli_main(["toplanar", "(5,2;4;1,1)", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["effective_multiplicities"] is False


def test_chow_products(capsys):
    code = cli_main(["chow", "triple", "[9;6,4^8]", "[9;6,4^8]", "[9;6,4^8]"])
    assert code == 0
    assert capsys.readouterr().out == "1\n"
    code = cli_main(["chow", "pair", "[12;3^2,4^8]", "[12;3^2,4^8]"])
    assert code == 0
    assert capsys.readouterr().out == "-2\n"


def test_chow_arity_is_a_usage_error(capsys):
    code = cli_main(["chow", "pair", "[1;1]", "[1;1]", "[1;1]"])
    assert code == 2
    assert "exactly 2" in capsys.readouterr().err


def test_parse_errors_carry_byte_offsets(capsys):
    code = cli_main(["vdim", "L2(3,,1)"])
    assert code == 2
    err = capsys.readouterr().err
    assert "byte" in err
    assert "5" in err


def test_rr_and_defect(capsys):
    assert cli_main(["rr", "[7;5,3^8]"]) == 0
    assert capsys.readouterr().out == "chi: 5\nvdim: 4\n"
    assert cli_main(["defect", "[2;1^9]", "[7;5,3^8]"]) == 0
    assert capsys.readouterr().out == "-1\n"
    assert cli_main(["defect", "[4;2^9]", "[0;0^9]"]) == 0
    assert capsys.readouterr().out == "-2\n"


def test_negcurves(capsys):
    code = cli_main(
        ["negcurves", "--bounds", "6,1,2", "--against", "[12;3^2,4^8]"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "[1;1^2,0^8]" in out
    assert "pairing 6" in out
    assert "FLAGGED" not in out
    code = cli_main(["negcurves", "--bounds", "1,1,0", "--against", "[2;2^2]"])
    assert code == 0
    assert "FLAGGED" in capsys.readouterr().out


def test_negcurves_bounds_validation(capsys):
    assert cli_main(["negcurves", "--bounds", "6,1", "--against", "[2;1,1]"]) == 2
    assert "D,M12,TAIL" in capsys.readouterr().err
    assert cli_main(["negcurves", "--bounds", "a,b,c", "--against", "[2;1,1]"]) == 2


def test_genus_and_cremona(capsys):
    assert cli_main(["genus", "[9;2^2,3^8]"]) == 0
    assert capsys.readouterr().out == "2\n"
    assert cli_main(["cremona-reduce", "[3;1^9]"]) == 0
    assert capsys.readouterr().out == "standard: [3;1^9]\n"


def test_counterexample_passes(capsys):
    code = cli_main(["counterexample", "--seed", "11", "--trials", "2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out
    assert out.count("[PASS]") == 9


def test_counterexample_json(capsys):
    code = cli_main(["counterexample", "--seed", "11", "--trials", "2", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "pass"
    assert payload["config"]["seed"] == 11
    assert len(payload["checks"]) == 9


def test_counterexample_failure_exits_one(monkeypatch, capsys):
    real = run_counterexample(RunConfig(seed=1, trials=1))
    broken = dataclasses.replace(real.checks[0], passed=False)
    doctored = dataclasses.replace(real, checks=(broken,) + real.checks[1:])
    monkeypatch.setattr(cli, "run_counterexample", lambda cfg: doctored)
    code = cli_main(["counterexample", "--seed", "1"])
    assert code == 1
    assert "verdict: fail" in capsys.readouterr().out


def test_environment_seed_is_used(monkeypatch, capsys):
    monkeypatch.setenv("FATPOINTS_SEED", "31")
    code = cli_main(["special", "L2(2,1)", "--json", "--trials", "1"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 31


def test_config_file_flag(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("FATPOINTS_SEED", raising=False)
    path = tmp_path / "run.cfg"
    path.write_text("seed = 21\ntrials = 2\noutput = json\n")
    code = cli_main(["counterexample", "--config", str(path)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["config"]["seed"] == 21
    assert payload["config"]["trials"] == 2


def test_config_output_applies_to_special(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("output = json\nseed = 8\n")
    code = cli_main(["special", "L2(2,1)", "--config", str(path), "--trials", "1"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["command"] == "special"


def test_invalid_prime_is_a_usage_error(capsys):
    code = cli_main(["special", "L2(2,1)", "--prime", "91", "--seed", "1"])
    assert code == 2
    assert "prime" in capsys.readouterr().err


def test_missing_config_file_is_a_usage_error(capsys):
    code = cli_main(["counterexample", "--config", "/nonexistent/run.cfg"])
    assert code == 2


def test_module_entry_point():
    import fatpoints.__main__  # noqa: F401  (importable without running)

    from fatpoints.cli import main

    assert main(["vdim", "L2(1)"]) == 0
