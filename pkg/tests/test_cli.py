import json

import pytest

from opbracket.cli import build_parser, config_from_args, main, parse_coeffs
from opbracket.core import ConfigError
from opbracket.run import RunConfig, collect_reports, parse_sizes, render


@pytest.mark.parametrize("text, sizes", [("2..5", [2, 3, 4, 5]), ("3,7", [3, 7]), ("4", [4]), (" 2..2 ", [2])])
def test_parse_sizes(text, sizes):
    assert parse_sizes(text) == sizes


@pytest.mark.parametrize("text", ["5..2", "two", "1..x"])
def test_parse_sizes_rejects(text):
    with pytest.raises(ConfigError):
        parse_sizes(text)


def test_parse_coeffs():
    assert parse_coeffs("0, 2", "oprl") == {"coeffs": [0.0, 2.0]}
    assert parse_coeffs("0,1+0.5j", "opuc") == {"coeffs": [0.0, 1.0], "coeffs_imag": [0.0, 0.5]}
    with pytest.raises(ConfigError):
        parse_coeffs("1j", "oprl")
    with pytest.raises(ConfigError):
        parse_coeffs("a,b", "oprl")


def args_for(*argv):
    return build_parser().parse_args(list(argv))


def test_config_from_flags():
    config = config_from_args(args_for("flow", "--kind", "schur", "--n", "4", "--t", "0.2", "--dt", "0.01"))
    assert config.family == "opuc"
    assert config.flow.preset == "schur"
    assert config.flow_spec().t_final == 0.2 and config.flow_spec().dt == 0.01


def test_config_from_preset_with_overrides():
    config = config_from_args(args_for("verify", "--preset", "verify-oprl", "--n", "3", "--seed", "11"))
    assert config.command == "verify"
    assert config.sizes == [3] and config.seed == 11
    assert config.grid == 8


def test_custom_flow_needs_coefficients():
    with pytest.raises(ConfigError):
        config_from_args(args_for("flow", "--kind", "custom"))
    config = config_from_args(args_for("flow", "--family", "opuc", "--coeffs", "0,0.5-0.2j"))
    assert config.flow.coeffs_imag == [0.0, -0.2]


def test_kind_must_match_family():
    with pytest.raises(ConfigError):
        config_from_args(args_for("flow", "--kind", "toda", "--family", "opuc"))


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig.build(command="verify", sizes=[1])
    with pytest.raises(ConfigError):
        RunConfig.build(command="periodic", family="opuc", sizes=[3])
    with pytest.raises(ConfigError):
        RunConfig.build(command="verify", tolerance=0.0)
    assert RunConfig.build(command="periodic", family="opuc").sizes == [2, 4]
    assert RunConfig.build(command="verify").sizes == [2, 3, 4]


def test_reports_are_deterministic():
    config = RunConfig.build(command="jacobian", family="oprl", sizes=[2, 3], seed=5)
    assert render(config, collect_reports(config)) == render(config, collect_reports(config))


def test_worst_instance_is_reported():
    config = RunConfig.build(command="jacobian", family="opuc", sizes=[3], seed=2, instances=3)
    reports = collect_reports(config)
    assert [r.identity_id for r in reports] == ["opuc.jacobian.fixed_beta", "opuc.jacobian.free_beta"]
    assert all(r.notes.startswith("worst of 3 instances") for r in reports)


def test_jacobian_command(capsys):
    assert main(["jacobian", "--family", "oprl", "--n", "2..4", "--seed", "1"]) == 0
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["version"] == "0.1.0"
    assert payload["config_echo"]["sizes"] == [2, 3, 4]
    ids = {(r["identity_id"], r["size"]) for r in payload["reports"]}
    assert ("oprl.jacobian.fixed_trace", 4) in ids and ("oprl.jacobian.full", 2) in ids
    assert all(r["pass"] for r in payload["reports"])
    assert "oprl.jacobian.full N=3: numeric" in captured.err


def test_verify_command_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--family", "opuc", "--n", "2,3", "--grid", "5", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    payload = json.loads(out.read_text())
    ids = {r["identity_id"] for r in payload["reports"]}
    assert {"opuc.fundamental.theta_mu", "opuc.symplectic.block_diagonal", "opuc.symplectic.spectral",
            "opuc.p_q.bezout"} <= ids
    det_sign = [r for r in payload["reports"] if r["identity_id"] == "opuc.cmv.det_sign"]
    assert det_sign and all(r["pass"] is None for r in det_sign)


def test_flow_command(tmp_path, capsys):
    csv = tmp_path / "toda.csv"
    code = main(["flow", "--kind", "toda", "--n", "3", "--t", "0.1", "--dt", "0.01", "--csv", str(csv)])
    assert code == 0
    captured = capsys.readouterr()
    assert "max deviation N=3:" in captured.err
    ids = {r["identity_id"] for r in json.loads(captured.out)["reports"]}
    assert {"oprl.flow.exact_vs_rk4", "oprl.flow.conserved", "oprl.flow.isospectral",
            "oprl.flow.hamiltonian_vs_exact", "oprl.ode.monic"} <= ids
    assert csv.read_text().startswith("time,b1,b2,b3,a1,a2,")


def test_flow_without_comparison(capsys):
    assert main(["flow", "--kind", "schur", "--n", "4", "--t", "0.05", "--dt", "0.01", "--compare", "none"]) == 0
    ids = {r["identity_id"] for r in json.loads(capsys.readouterr().out)["reports"]}
    assert "opuc.flow.exact_vs_rk4" not in ids
    assert {"opuc.schur.rhs", "opuc.ode.ismail"} <= ids


def test_periodic_command(capsys):
    assert main(["periodic", "--family", "oprl", "--n", "2,3", "--seed", "3"]) == 0
    ids = {r["identity_id"] for r in json.loads(capsys.readouterr().out)["reports"]}
    assert {"oprl.periodic.dos_moments", "oprl.periodic.t_top_law"} <= ids


def test_failing_tolerance_exits_with_one(capsys):
    assert main(["jacobian", "--family", "oprl", "--n", "3", "--tol", "1e-300"]) == 1
    assert "FAILED oprl.jacobian" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "1"],
    ["verify", "--n", "x..y"],
    ["verify", "--log-level", "chatty"],
    ["verify", "--preset", "no-such-preset"],
    ["periodic", "--family", "opuc", "--n", "3"],
])
def test_configuration_errors_exit_with_two(argv, capsys):
    assert main(argv) == 2
    assert "configuration error" in capsys.readouterr().err


def test_unknown_subcommand_is_rejected():
    with pytest.raises(SystemExit):
        main(["sing"])
