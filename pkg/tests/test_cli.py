import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from qcthermo.cli import run

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "docs" / "output.schema.json").read_text()
)

EVAL_ARGS = ["eval", "--system", "well", "--edges", "1,2", "--T", "1", "--h", "0.1"]
SWEEP_ARGS = [
    "sweep", "--system", "oscillator", "--omega", "1", "--direction", "h_to_0",
    "--start", "0.1", "--factor", "0.5", "--points", "6", "--T", "1", "--h", "1",
]
DRUM_ARGS = ["hear-drum", "--edges", "1,2,3", "--T", "1"]
GIBBS_ARGS = ["gibbs", "--levels", "0,1,2", "--T", "1", "--seed", "7"]
KW_ARGS = ["kw", "--omega", "1", "--T", "1", "--h", "0.1"]


def run_cli(args, capsys):
    code = run(args)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize(
    "args", [EVAL_ARGS, SWEEP_ARGS, DRUM_ARGS, GIBBS_ARGS, KW_ARGS]
)
def test_json_output_validates_against_schema(args, capsys):
    code, out = run_cli(args, capsys)
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)


def test_eval_values(capsys):
    code, out = run_cli(EVAL_ARGS, capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["ratios"]["Z_ratio"] == pytest.approx(0.81985686103665, rel=1e-12)
    assert payload["signs"]["sgn_dF"] == 1
    assert payload["signs"]["sgn_dS"] == -1


def test_sweep_csv_headers(capsys):
    code, out = run_cli(SWEEP_ARGS + ["--format", "csv"], capsys)
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert header[:9] == [
        "swept_value", "Z_ratio", "E_ratio", "dF", "dE", "dS",
        "sgn_dF", "sgn_dE", "sgn_dS",
    ]
    assert all(h.startswith("residual_") for h in header[9:])
    assert len(out.splitlines()) == 7  # header + 6 grid points


def test_pi_literals_accepted(capsys):
    code, out = run_cli(
        ["eval", "--system", "well", "--edges", "1", "--T", "2pi", "--h", "0.2"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["reduced"]["mu"][0] == pytest.approx(0.2, rel=1e-14)


def test_expression_potential(capsys):
    code, out = run_cli(
        ["kw", "--potential", "x1^2/2", "--dim", "1", "--T", "1", "--h", "0.1"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    # matches the built-in harmonic potential at omega = 1 (FD gradient noise aside)
    assert payload["z2_over_z0"] == pytest.approx(1.0 / 24.0, rel=1e-6)


def test_validation_exit_code(capsys):
    code = run(["eval", "--system", "well", "--T", "1", "--h", "0.1"])
    capsys.readouterr()
    assert code == 2
    code = run(["gibbs", "--levels", "0,1", "--T", "1", "--tol", "-1"])
    capsys.readouterr()
    assert code == 2


def test_computation_exit_code(capsys):
    # enormous h underflows the lattice sum
    code = run(["eval", "--system", "well", "--edges", "1", "--T", "1", "--h", "1e6"])
    capsys.readouterr()
    assert code == 3


def test_argparse_exit_code():
    with pytest.raises(SystemExit) as exc:
        run(["eval", "--system", "banana", "--T", "1", "--h", "1"])
    assert exc.value.code == 2


def cli_bytes(args, env_extra=None):
    import os

    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [sys.executable, "-m", "qcthermo.cli"] + args,
        capture_output=True,
        env=env,
    )
    return proc.returncode, proc.stdout


def test_determinism_byte_identical():
    for args in (GIBBS_ARGS, SWEEP_ARGS + ["--format", "csv"], DRUM_ARGS):
        code1, out1 = cli_bytes(args)
        code2, out2 = cli_bytes(args)
        assert code1 == code2 == 0
        assert out1 == out2


def test_env_var_default_format():
    code, out = cli_bytes(SWEEP_ARGS, env_extra={"QCTHERMO_FORMAT": "csv"})
    assert code == 0
    assert out.splitlines()[0].startswith(b"swept_value,")


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out = run_cli(EVAL_ARGS + ["--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    jsonschema.validate(json.loads(target.read_text()), SCHEMA)
