"""Config round-trips, spec parsing errors, and CLI behavior / exit codes."""

import json
import math

import pytest

from varlp.cli import main
from varlp.config import (BUILTIN_EXPONENTS, BUILTIN_FUNCS, ConfigError,
                          ExperimentConfig, make_exponent, make_func)


def test_config_round_trip(tmp_path):
    cfg = ExperimentConfig(seed=11, tol=1e-8,
                           exponents={"mine": {"kind": "constant", "p": 2.5}},
                           grids={"radius_k": [-3, 3]})
    path = tmp_path / "c.json"
    path.write_text(cfg.to_json())
    back = ExperimentConfig.from_json_file(str(path))
    assert back.to_dict() == cfg.to_dict()


def test_config_rejects_unknown_fields():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"seed": 1, "bogus": 2})


def test_make_exponent_errors_name_the_field():
    with pytest.raises(ConfigError, match="kind"):
        make_exponent({"p": 2.0})
    with pytest.raises(ConfigError, match="nosuch"):
        make_exponent({"kind": "nosuch"})
    with pytest.raises(ConfigError):
        make_exponent({"kind": "piecewise", "breaks": [1.0], "values": [2.0]})


def test_make_func_errors():
    with pytest.raises(ConfigError, match="kind"):
        make_func({"a": 0.0})
    with pytest.raises(ConfigError):
        make_func({"kind": "chi_interval", "a": 2.0, "b": 1.0})


def test_builtins_all_parse():
    for name, spec in BUILTIN_EXPONENTS.items():
        assert make_exponent(spec).p_minus > 1.0, name
    for name, spec in BUILTIN_FUNCS.items():
        make_func(spec)


def test_nested_function_specs():
    f = make_func({"kind": "lincomb",
                   "terms": [{"kind": "chi_interval", "a": 0.0, "b": 1.0},
                             {"kind": "scaled_ball", "radius": 2.0}],
                   "coeffs": [1.0, -1.0]})
    assert f.support_radius == 2.0
    g = make_func({"kind": "abs_power",
                   "base": {"kind": "with_sign",
                            "base": {"kind": "chi_ball", "radius": 1.0}},
                   "power": 0.5})
    assert g.evaluate(0.5) == 1.0


def test_cli_norm_prints_unit_value(capsys):
    rc = main(["norm", "--f", "chi01", "--p", "const2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "1" in out.split(":")[-1]


def test_cli_norm_json_output(tmp_path, capsys):
    out = tmp_path / "norm.json"
    rc = main(["norm", "--f", "chi02", "--p", "pw23", "--json", str(out)])
    capsys.readouterr()
    assert rc == 0
    payload = json.loads(out.read_text())
    assert abs(payload["value"] - 1.3247179572447460) <= 1e-6
    assert payload["tol"] == 1e-9


def test_cli_op_table(tmp_path, capsys):
    csv_path = tmp_path / "op.csv"
    rc = main(["op", "--kind", "hardy", "--f", "chi_pm1",
               "--points", "0.5,4", "--csv", str(csv_path)])
    capsys.readouterr()
    assert rc == 0
    rows = csv_path.read_text().strip().splitlines()
    assert rows[0] == "x,value,abs_error_bound"
    assert float(rows[1].split(",")[1]) == pytest.approx(2.0, abs=1e-9)
    assert float(rows[2].split(",")[1]) == pytest.approx(0.5, abs=1e-9)


def test_cli_op_commutator_requires_symbol(capsys):
    rc = main(["op", "--kind", "commutator", "--f", "chi01", "--points", "1"])
    assert rc == 1


def test_cli_cbmo_breakdown_csv(tmp_path, capsys):
    csv_path = tmp_path / "cbmo.csv"
    rc = main(["cbmo", "--f", "sign", "--p", "const2", "--kmin", "-2",
               "--kmax", "4", "--csv", str(csv_path)])
    out = capsys.readouterr().out
    assert rc == 0 and "0.99999" in out
    rows = csv_path.read_text().strip().splitlines()
    assert len(rows) == 8  # header + 7 radii


def test_cli_herz(capsys):
    rc = main(["herz", "--f", "ring0", "--p", "const2", "--q", "1",
               "--kmin", "-4", "--kmax", "4"])
    out = capsys.readouterr().out
    assert rc == 0 and "0.99999" in out


def test_cli_herz_needs_function(capsys):
    rc = main(["herz", "--p", "const2"])
    assert rc == 1


def test_cli_verify_unknown_statement(capsys):
    rc = main(["verify", "--statement", "nosuch"])
    assert rc == 1


def test_cli_verify_single_statement(tmp_path, capsys):
    out = tmp_path / "rep.json"
    rc = main(["verify", "--statement", "lemma2.3", "--json", str(out)])
    capsys.readouterr()
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload[0]["statement_id"] == "lemma2.3" and payload[0]["pass"]


def test_cli_report_rendering(tmp_path, capsys):
    src = tmp_path / "rep.json"
    src.write_text(json.dumps([{
        "statement_id": "lemma5.1", "pass": True, "empirical_constant": 0.0,
        "fitted_exponent": None, "witnesses": [["gap", -1.0, 1e-8]],
        "notes": ""}]))
    rc = main(["report", "--json-in", str(src), "--witnesses"])
    out = capsys.readouterr().out
    assert rc == 0 and "lemma5.1" in out and "gap" in out


def test_cli_malformed_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc = main(["norm", "--f", "chi01", "--p", "const2", "--config", str(bad)])
    assert rc == 1


def test_cli_logholder(capsys):
    rc = main(["logholder", "--p", "const2"])
    assert rc == 0
    assert "pass" in capsys.readouterr().out
