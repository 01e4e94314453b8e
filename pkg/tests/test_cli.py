"""Command-line interface: outputs, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from fracgreen import gamma_of_theta
from fracgreen.cli import main


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "fracgreen.cli", *argv],
                          capture_output=True, text=True, timeout=900)
    return proc.returncode, proc.stdout, proc.stderr


def parse_csv(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    cols = lines[0].split(",")
    rows = [dict(zip(cols, line.split(","))) for line in lines[1:]]
    return cols, rows


class TestConstants:
    def test_gamma_matches_library(self):
        code, out, _ = run_cli("constants", "--N", "3", "--s", "0.5",
                               "--theta", "0.31831")
        assert code == 0
        g_lib = gamma_of_theta(0.31831, 3, 0.5)
        assert any(f"gamma_of_theta = {g_lib:.17g}" in line
                   for line in out.splitlines())
        cols, rows = parse_csv(out)
        assert {"gamma", "gamma_err", "theta", "theta_err"} <= set(cols)
        match = [r for r in rows
                 if abs(float(r["theta"]) - 0.31831) < 1e-12]
        assert match and abs(float(match[0]["gamma"]) - g_lib) < 1e-10

    def test_missing_theta_prints_table_only(self):
        code, out, _ = run_cli("constants", "--N", "3", "--s", "0.5")
        assert code == 0
        assert "sharp_constant" in out
        assert "gamma_of_theta" not in out
        _, rows = parse_csv(out)
        assert len(rows) == 9

    def test_theta_above_sharp_constant_exits_2(self):
        code, _, err = run_cli("constants", "--N", "3", "--s", "0.5",
                               "--theta", "0.7")
        assert code == 2
        assert "Lambda" in err

    def test_invalid_order_exits_2(self):
        code, _, _ = run_cli("constants", "--N", "3", "--s", "1.2")
        assert code == 2


class TestKernel:
    def test_columns_and_identities(self):
        code, out, _ = run_cli("kernel", "--N", "3", "--s", "0.5",
                               "--theta", "0.31831", "--pairs", "3")
        assert code == 0
        cols, rows = parse_csv(out)
        assert all(f"{c}_err" in cols for c in
                   ("surrogate_product", "time_integral_closed",
                    "resolvent"))
        for r in rows:
            assert float(r["form_identity_diff"]) <= 1e-12
            assert float(r["closed_vs_quadrature_diff"]) <= 1e-6

    def test_swapped_pair_rows_equal(self):
        code, out, _ = run_cli("kernel", "--N", "3", "--s", "0.5",
                               "--theta", "0.31831", "--pairs", "2")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 4  # each pair emitted in both orders
        for a, b in zip(rows[0::2], rows[1::2]):
            for col in ("separation", "heat_profile", "surrogate_product",
                        "time_integral_closed", "riesz_kernel"):
                assert float(a[col]) == pytest.approx(float(b[col]),
                                                      rel=1e-12)


class TestVerify:
    def test_default_passes_and_deterministic(self, tmp_path):
        out1 = tmp_path / "a.json"
        out2 = tmp_path / "b.json"
        code1, _, _ = run_cli("verify", "--N", "3", "--s", "0.5",
                              "--format", "json", "--out", str(out1))
        code2, _, _ = run_cli("verify", "--N", "3", "--s", "0.5",
                              "--format", "json", "--out", str(out2))
        assert code1 == 0 and code2 == 0
        b1, b2 = out1.read_bytes(), out2.read_bytes()
        assert b1 == b2
        doc = json.loads(b1)
        assert doc["schema"] == 1
        assert all(row["passed"] for row in doc["rows"])

    def test_sabotaged_theta_exits_1(self):
        code, out, _ = run_cli("verify", "--N", "3", "--s", "0.5",
                               "--sabotage", "theta-half")
        assert code == 1
        line = [l for l in out.splitlines() if "fundamental-residual" in l]
        assert line and "FAIL" in line[0]

    def test_malformed_config_exits_2(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("[params]\nN ==== what\n")
        code, _, err = run_cli("verify", "--config", str(bad))
        assert code == 2 and "error" in err

    def test_config_file_block_roundtrip(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "[params]\nN = 3\ns = 0.5\ngamma = 0.8\n"
            "[quadrature]\nrel_tol = 1e-6\n"
            "[output]\nformat = \"json\"\nseed = 7\n")
        out = tmp_path / "r.json"
        code, _, _ = run_cli("verify", "--config", str(cfg),
                             "--out", str(out), "--delta")
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["seed"] == 7

    def test_delta_only_flag(self):
        code, out, _ = run_cli("verify", "--N", "3", "--s", "0.5",
                               "--gamma", "0.8", "--delta")
        assert code == 0
        assert "delta-identity" in out
        assert "bijection" not in out


class TestSolve:
    def test_zero_density_all_zero(self):
        code, out, _ = run_cli("solve", "--N", "3", "--s", "0.5",
                               "--gamma", "0.8", "--field", "none",
                               "--radii", "0.1:1:4")
        assert code == 0
        _, rows = parse_csv(out)
        assert all(float(r["psi"]) == 0.0 for r in rows)

    def test_surrogate_slope_column(self):
        code, out, _ = run_cli("solve", "--N", "3", "--s", "0.5",
                               "--gamma", "0.8", "--kernel", "surrogate",
                               "--field", "bump", "--field-radius", "0.35",
                               "--field-center", "1.0",
                               "--radii", "0.001:0.01:6")
        assert code == 0
        _, rows = parse_csv(out)
        slopes = [float(r["local_slope"]) for r in rows[1:]]
        assert all(abs(sl + 0.8) <= 0.05 * 0.8 for sl in slopes)

    def test_riesz_solve_then_delta_verify(self):
        # zero-coupling solve is validated by the delta identity
        code, out, _ = run_cli("solve", "--N", "3", "--s", "0.5",
                               "--gamma", "0.8", "--kernel", "riesz_exact",
                               "--field", "bump", "--radii", "0.3:1:3")
        assert code == 0
        _, rows = parse_csv(out)
        assert all(float(r["psi"]) > 0 for r in rows)
        code2, _, _ = run_cli("verify", "--N", "3", "--s", "0.5",
                              "--gamma", "0.8", "--delta")
        assert code2 == 0

    def test_bad_radii_exits_2(self):
        code, _, _ = run_cli("solve", "--N", "3", "--s", "0.5",
                             "--gamma", "0.8", "--radii", "5:1:3")
        assert code == 2


def test_main_entry_direct(tmp_path, capsys):
    # in-process invocation covers the console-script path
    rc = main(["constants", "--N", "3", "--s", "0.5"])
    assert rc == 0
    assert "sharp_constant" in capsys.readouterr().out
