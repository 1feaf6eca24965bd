import argparse
import json

import pytest

from isogeny2.cli import EXIT_ERROR, EXIT_OK, EXIT_REJECTED, build_parser, config_from_args, main, parse_tangent
from isogeny2.core.example_data import example_data
from isogeny2.core.random import random_curve


@pytest.fixture(scope="module")
def curve_flag() -> str:
    return ",".join(str(c[0]) for c in random_curve(10007, seed=1).coefficients())


def test_parse_tangent() -> None:
    assert parse_tangent("1,0;0,1") == [[1, 0], [0, 1]]
    assert parse_tangent(" 3:4 , 0 ; 0 , 5 ") == [[[3, 4], 0], [0, 5]]
    with pytest.raises(argparse.ArgumentTypeError, match="2x2"):
        parse_tangent("1,0,0;0,1")


def test_flags_override_config(tmp_path) -> None:
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"p": 10007, "path": "endo", "curve": [1, 2, 3, 4, 5, 6, 1], "m": 2}))
    args = build_parser().parse_args(["run", "--config", str(path), "--m", "3", "--seed", "4"])
    config = config_from_args(args)
    assert (config.m, config.seed, config.p) == (3, 4, 10007)


def test_missing_flags_without_config() -> None:
    args = build_parser().parse_args(["run", "--p", "10007"])
    with pytest.raises(ValueError, match="--path"):
        config_from_args(args)


def test_version(capsys) -> None:
    assert main(["version"]) == EXIT_OK
    assert "isogeny2 version" in json.loads(capsys.readouterr().out)


def test_invalid_input_exit_code() -> None:
    assert main(["run", "--p", "10007"]) == EXIT_ERROR
    assert main(["run", "--p", "10007", "--path", "endo", "--curve", "1,2,3"]) == EXIT_ERROR


def test_accepted_run_to_file(tmp_path, curve_flag) -> None:
    out = tmp_path / "out.json"
    status = main(["run", "--p", "10007", "--path", "endo", "--m", "1", "--curve", curve_flag, "--out", str(out)])
    assert status == EXIT_OK
    document = json.loads(out.read_text())
    assert document["candidates"][0]["status"] == "accepted"


def test_rejected_run_to_stdout(capsys, curve_flag) -> None:
    argv = ["run", "--p", "10007", "--path", "siegel", "--ell", "1", "--curve", curve_flag]
    argv += ["--curve-prime", curve_flag, "--tangent", "2,0;0,2"]
    assert main(argv) == EXIT_REJECTED
    captured = capsys.readouterr()
    assert json.loads(captured.out)["candidates"][0]["status"] == "rejected"
    assert "0 of 1 candidates accepted" in captured.err


def test_non_isogenous_invariants_exit_code(caplog) -> None:
    argv = ["run", "--p", "56311", "--path", "siegel", "--ell", "1", "--j", "14030,9041,56122"]
    argv += ["--j-prime", "13752,42980,12538", "--modeq", str(example_data.files["identity_siegel.txt"])]
    assert main(argv) == EXIT_ERROR
    assert "do not vanish" in caplog.text
