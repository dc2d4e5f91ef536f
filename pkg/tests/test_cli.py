import csv
import io
import json
import subprocess
import sys

import pytest

from elliptic_irf.errors import ConfigError
from elliptic_irf.verify import SuiteConfig, run_suite
from elliptic_irf.verify.cli import main
from elliptic_irf.verify.config import parse_complex, parse_window
from elliptic_irf.verify.report import dumps, inputs_digest
from elliptic_irf.verify.rng import Draws


def _run(argv, tmp_path, name="r.json"):
    out = tmp_path / name
    code = main(list(argv) + ["--out", str(out)])
    return code, out.read_text() if out.exists() else None


def test_rng_stream_is_frozen():
    d = Draws(42)
    assert d.uniform() == 0.7739560485559633
    assert d.uniform() == 0.4388784397520523
    assert d.integer(0, 9) == 2


@pytest.mark.parametrize("text,value", [
    ("0.2+1.0i", 0.2 + 1j), ("-0.5", -0.5), ("1.5j", 1.5j), ("0.1-2e-1i", 0.1 - 0.2j), ([0.3, -1], 0.3 - 1j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("bad", ["abc", "1+", True, [1, 2, 3]])
def test_parse_complex_rejects(bad):
    with pytest.raises(ConfigError):
        parse_complex(bad)


def test_parse_window():
    assert parse_window("1,4") == (1, 4)
    with pytest.raises(ConfigError):
        parse_window("4,1")


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig(suite="nope").validate()
    with pytest.raises(ConfigError):
        SuiteConfig(tau="0.2-1i").validate()
    with pytest.raises(ConfigError):
        SuiteConfig(format="csv").validate()
    with pytest.raises(ConfigError):
        SuiteConfig(sweep="xi").validate()


def test_weyl_kac_k1(tmp_path):
    code, text = _run(["weyl-kac", "--k", "1"], tmp_path)
    rep = json.loads(text)
    assert code == 0 and rep["pass"] and rep["max_residual"] < 1e-12
    assert rep["schema"] == 1
    assert rep["params"]["tau"] == [0.2, 1.0]
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)


def test_rational_mu_star_triangle(tmp_path):
    code, text = _run(["irf-star-triangle", "--mu", "0.5", "--draws", "1"], tmp_path)
    assert code == 0 and json.loads(text)["pass"]


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"tau": [0.1, 1.2], "seed": 3, "draws": 2, "window": [0, 2]}))
    code, text = _run(["duality", "--config", str(cfg), "--seed", "9"], tmp_path)
    params = json.loads(text)["params"]
    assert code == 0
    assert params["seed"] == 9 and params["tau"] == [0.1, 1.2] and params["draws"] == 2


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"colour": 1}))
    assert main(["theta", "--config", str(cfg)]) == 2
    assert "unknown config field" in capsys.readouterr().err


def test_genericity_error_names_constraint(capsys):
    assert main(["vertex-irf", "--lambda", "0,0.5,1.0"]) == 2
    err = capsys.readouterr().err
    assert "lambda_2 - lambda_0" in err


def test_failure_exit_code(tmp_path):
    code, text = _run(["weyl-kac", "--k", "2", "--tol", "1e-30"], tmp_path)
    assert code == 1 and not json.loads(text)["pass"]


def test_explicit_xi_values(tmp_path):
    code, text = _run(["weyl-kac", "--k", "3", "--xi", "0.3+0.1i,0.2"], tmp_path)
    rep = json.loads(text)
    assert code == 0 and len(rep["checks"]) == 2


def test_numerical_error_becomes_failed_check(tmp_path):
    code, text = _run(["duality", "--k", "2", "--xi", "0"], tmp_path)
    rep = json.loads(text)
    assert code == 1
    assert all("GenericityError" in c["error"] for c in rep["checks"])


def test_sweep_csv_marks_lattice_points(tmp_path):
    code, text = _run(["ybe-matrix", "--k", "2", "--sweep", "xi", "--grid", "0,0.1+0.05i,1,0.33",
                       "--format", "csv"], tmp_path, "s.csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["param", "value", "max_residual", "pass"]
    assert [r[3] for r in rows[1:]] == ["skipped", "true", "skipped", "true"]
    assert code == 0


def test_sweep_json_has_matrix_norm(tmp_path):
    code, text = _run(["ybe-matrix", "--k", "2", "--sweep", "xi", "--grid", "0.2,0.3"], tmp_path)
    rep = json.loads(text)
    assert all(r["matrix_norm"] > 0 for r in rep["rows"])


def test_sweep_tau_imag(tmp_path):
    code, text = _run(["belavin-props", "--k", "2", "--draws", "1", "--sweep", "tau-imag",
                       "--grid", "0.8,1.0,1.5"], tmp_path)
    assert code == 0 and json.loads(text)["pass"]


def test_report_is_deterministic():
    cfg = SuiteConfig(suite="vertex-irf", draws=2).validate()
    a = run_suite(cfg)
    b = run_suite(SuiteConfig(suite="vertex-irf", draws=2).validate())
    a.pop("wall_time")
    b.pop("wall_time")
    assert dumps(a) == dumps(b)


def test_inputs_digest_stable():
    assert inputs_digest({"xi": 0.5 + 1j, "k": 2}) == inputs_digest({"k": 2, "xi": [0.5, 1.0]})


def test_console_script_runs(tmp_path):
    out = tmp_path / "t.json"
    proc = subprocess.run([sys.executable, "-m", "elliptic_irf.verify.cli", "theta", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["pass"]
