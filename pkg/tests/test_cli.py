import csv
import io
import json
import math
import subprocess
import sys

import pytest

from viscowave.cli import main


def write_model(tmp_path, name="model.json", **doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def maxwell_file(tmp_path):
    return write_model(tmp_path, family="maxwell", rho=1, a1=1, b1=1)


@pytest.fixture
def frac_3q_file(tmp_path):
    return write_model(tmp_path, "fm34.json", family="fractional_maxwell", alpha=0.75, rho=1, a1=1, b1=1)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_coeffs_examples(maxwell_file, frac_3q_file, capsys):
    code, out, _ = run(["coeffs", "--model", maxwell_file, "--kmax", "1"], capsys)
    assert code == 0
    assert out == "k,lambda_k,l,A_kl\n0,0,0,1\n1,1,0,0\n1,1,1,0.125\n"
    _, out, _ = run(["coeffs", "--model", maxwell_file, "--kmax", "0"], capsys)
    assert out == "k,lambda_k,l,A_kl\n0,0,0,1\n"
    _, out, _ = run(["coeffs", "--model", frac_3q_file, "--kmax", "3"], capsys)
    table = rows(out)
    assert [r["lambda_k"] for r in table if r["l"] == "0"] == ["0", "1/4", "1/2", "3/4"]
    assert all(float(r["A_kl"]) == 0 for r in table if r["k"] == "1")


def test_coeffs_full_precision(tmp_path, capsys):
    model = write_model(tmp_path, family="maxwell", rho=1.3, a1=0.7, b1=2.1)
    _, out, _ = run(["coeffs", "--model", model, "--kmax", "3"], capsys)
    value = rows(out)[-1]["A_kl"]
    assert len(value.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) >= 16


def test_wavefront_examples(maxwell_file, capsys):
    args = ["wavefront", "--model", maxwell_file, "--x", "1", "--tmin", "1", "--tmax", "1", "--steps", "0"]
    code, out, _ = run(args, capsys)
    assert code == 0
    (row,) = rows(out)
    assert float(row["r_wavefront"]) == pytest.approx(math.exp(-0.5), rel=1e-15)
    _, out, _ = run(["wavefront", "--model", maxwell_file, "--x", "0", "--tmin", "0.5", "--tmax", "3", "--steps", "5"], capsys)
    assert all(float(r["r_wavefront"]) == 1 for r in rows(out))


def test_wavefront_trusted_column(frac_3q_file, capsys):
    _, out, _ = run(["wavefront", "--model", frac_3q_file, "--x", "1", "--tmin", "1", "--tmax", "11", "--steps", "100"], capsys)
    table = rows(out)
    flags = [r["trusted"] for r in table]
    assert "0" in flags and "1" in flags
    first_untrusted = flags.index("0")
    assert set(flags[first_untrusted:]) == {"0"}
    values = [float(r["r_wavefront"]) for r in table[:first_untrusted]]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_longtime_examples(maxwell_file, capsys):
    _, out, _ = run(["longtime", "--model", maxwell_file, "--x", "0,1", "--tmin", "100", "--tmax", "400", "--steps", "3"], capsys)
    table = rows(out)
    assert [float(r["r_longtime"]) for r in table if r["x"] == "0.0"] == [1.0] * 4
    ones = [float(r["r_longtime"]) for r in table if r["x"] == "1.0"]
    assert ones[0] == pytest.approx(0.943628, abs=1e-6)
    assert all(b > a for a, b in zip(ones, ones[1:]))


def test_ilt_examples(maxwell_file, capsys):
    _, out, _ = run(["ilt", "--model", maxwell_file, "--x", "0", "1", "--tmin", "0.5", "--tmax", "1", "--steps", "1"], capsys)
    table = rows(out)
    assert list(table[0]) == ["t", "x", "r_ilt", "method", "nodes", "flag"]
    assert float(table[0]["r_ilt"]) == pytest.approx(1.0)
    assert abs(float(table[2]["r_ilt"])) <= 1e-6
    # the front itself cannot be inverted: empty value and a flag
    assert table[3]["r_ilt"] == "" and table[3]["flag"] == "NonPositiveTime"
    assert table[0]["method"] == "talbot" and table[0]["nodes"] == "64"


def test_ilt_matches_wavefront_near_front(maxwell_file, capsys):
    grid = ["--x", "1", "--tmin", "1.01", "--tmax", "1.3", "--steps", "6"]
    _, wf, _ = run(["wavefront", "--model", maxwell_file, *grid], capsys)
    _, il, _ = run(["ilt", "--model", maxwell_file, *grid, "--ilt-method", "stehfest", "--ilt-nodes", "32"], capsys)
    for a, b in zip(rows(wf), rows(il)):
        assert a["trusted"] == "1"
        assert float(a["r_wavefront"]) == pytest.approx(float(b["r_ilt"]), rel=1e-4)


def test_match_boundary_and_matching(maxwell_file, capsys):
    _, out, _ = run(["match", "--model", maxwell_file, "--x", "0", "--tmin", "0.5", "--tmax", "5", "--steps", "4"], capsys)
    for r in rows(out):
        assert float(r["r_wavefront"]) == float(r["r_longtime"]) == 1.0
        assert float(r["r_ilt"]) == pytest.approx(1.0)
    _, out, _ = run(["match", "--model", maxwell_file, "--x", "0.5", "1", "--tmin", "0.1", "--tmax", "10", "--steps", "60"], capsys)
    table = rows(out)
    assert list(table[0]) == ["t", "x", "r_wavefront", "r_longtime", "r_ilt", "trusted"]
    for x in ("0.5", "1.0"):
        assert any(
            r["x"] == x and r["trusted"] == "1" and abs(float(r["r_wavefront"]) - float(r["r_longtime"])) < 0.02
            for r in table
        )


def test_deterministic_output(maxwell_file, tmp_path):
    outputs = []
    for i in range(2):
        target = tmp_path / f"run{i}.csv"
        assert main(["match", "--model", maxwell_file, "--tmin", "0.5", "--tmax", "3", "--steps", "10", "--out", str(target)]) == 0
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]
    assert b"\r" not in outputs[0]


@pytest.mark.parametrize(
    "extra",
    [
        ["--tmin", "0"],
        ["--tmin", "2", "--tmax", "1"],
        ["--kmax", "-1"],
        ["--x", "-1"],
        ["--x", "a"],
        ["--ilt-method", "stehfest", "--ilt-nodes", "15"],
    ],
)
def test_config_errors_exit_2(maxwell_file, extra, capsys):
    code, out, err = run(["longtime", "--model", maxwell_file, *extra], capsys)
    assert code == 2 and out == "" and "error" in err


def test_bad_model_file_exit_2(tmp_path, capsys):
    bad = write_model(tmp_path, family="maxwell", rho=1, a1=1, b1=1, colour="red")
    code, _, err = run(["coeffs", "--model", bad], capsys)
    assert code == 2 and "unknown keys" in err
    code, _, _ = run(["coeffs", "--model", str(tmp_path / "nope.json")], capsys)
    assert code == 2


def test_numerical_failure_exit_3(maxwell_file, monkeypatch, capsys):
    from viscowave import cli
    from viscowave.errors import NumericalBreakdown

    def broken(cfg, out):
        out.write("partial\n")
        raise NumericalBreakdown("boom")

    monkeypatch.setitem(cli.COMMANDS, "longtime", broken)
    code, out, err = run(["longtime", "--model", maxwell_file], capsys)
    assert code == 3 and out == "" and "numerical failure: boom" in err


def test_wavefront_table_v_large_degree():
    # deep rows must not overflow through x**l / l!
    from viscowave import ModelSpec, WavefrontExpansion

    table = WavefrontExpansion.from_model(ModelSpec.maxwell(), K=200).table
    assert math.isfinite(table.v(200, 1.0))


def test_module_entry_point(maxwell_file):
    result = subprocess.run(
        [sys.executable, "-m", "viscowave", "coeffs", "--model", maxwell_file, "--kmax", "1"],
        capture_output=True, text=True, check=True,
    )
    assert result.stdout.splitlines()[-1] == "1,1,1,0.125"
