import csv
import json

import pytest

from quadromech.cli import load_config, main
from quadromech.errors import ConfigError


def write_config(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


MINI_SWEEP = {
    "scenario": "custom",
    "axes": [{"name": "J", "start": 0.3, "stop": 0.6, "count": 4}],
    "fixed": {"delta": 0, "delta_m": 0, "epsilon": 0.05, "gamma_m": 0.1,
              "n_th": 1e-4},
    "truncation": {"n_photon_max": 2, "n_phonon_max": 6},
}


class TestJopt:
    def test_prints_paper_value(self, capsys):
        assert main(["jopt", "--gamma-c", "1", "--gamma-m", "0.1"]) == 0
        assert capsys.readouterr().out.strip() == "0.40620"

    def test_invalid_rate_is_a_validation_error(self, capsys):
        assert main(["jopt", "--gamma-c", "0", "--gamma-m", "0.1"]) == 1
        assert "error[INVALID_RATE]" in capsys.readouterr().err


class TestSpectrum:
    def test_prints_manifold_tables(self, capsys):
        assert main(["spectrum", "--coupling", "2.0", "--manifold", "2"]) == 0
        out = capsys.readouterr().out
        assert "manifold N=2" in out
        assert "+2.8284271247" in out  # sqrt(2) * 2


class TestValidate:
    def test_oracle_suite_passes(self, capsys):
        assert main(["validate"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out


class TestRun:
    def test_scenario_and_config_are_exclusive(self, capsys):
        assert main(["run"]) == 1
        assert "error[CONFIG_INVALID]" in capsys.readouterr().err

    def test_missing_config(self, tmp_path, capsys):
        code = main(["run", "--config", str(tmp_path / "missing.json")])
        assert code == 1
        assert "error[CONFIG_NOT_FOUND]" in capsys.readouterr().err

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        path = write_config(tmp_path / "bad.json",
                            {**MINI_SWEEP, "grid_points": 4})
        assert main(["run", "--config", path]) == 1
        assert "error[CONFIG_INVALID]" in capsys.readouterr().err

    def test_custom_sweep_csv(self, tmp_path, capsys):
        path = write_config(tmp_path / "mini.json",
                            {**MINI_SWEEP, "out_dir": str(tmp_path)})
        assert main(["run", "--config", path]) == 0
        out_csv = tmp_path / "custom.csv"
        assert out_csv.exists()
        with open(out_csv, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["J_over_gc", "n_a", "n_b", "g2_aa_0", "g2_bb_0",
                           "g2_ab_0"]
        assert len(rows) == 1 + 4
        # 17-significant-digit floats must round-trip exactly
        value = float(rows[1][1])
        assert f"{value:.17g}" == rows[1][1]

    def test_csv_uses_lf_line_endings(self, tmp_path):
        path = write_config(tmp_path / "mini.json",
                            {**MINI_SWEEP, "out_dir": str(tmp_path)})
        main(["run", "--config", path])
        raw = (tmp_path / "custom.csv").read_bytes()
        assert b"\r" not in raw
        assert raw.endswith(b"\n")

    def test_json_output_sorted_and_provenanced(self, tmp_path):
        path = write_config(tmp_path / "mini.json",
                            {**MINI_SWEEP, "out_dir": str(tmp_path),
                             "formats": ["json"]})
        assert main(["run", "--config", path]) == 0
        doc = json.loads((tmp_path / "custom.json").read_text())
        assert "provenance" in doc
        assert doc["provenance"]["truncation"] == {"n_photon_max": 2,
                                                   "n_phonon_max": 6}
        keys = list(doc.keys())
        assert keys == sorted(keys)

    def test_builtin_scenario_with_overrides(self, tmp_path, capsys):
        code = main(["run", "--scenario", "fig2a", "--out-dir", str(tmp_path),
                     "--photon-max", "2", "--phonon-max", "6"])
        assert code == 0
        with open(tmp_path / "fig2a.csv", newline="") as fh:
            header = fh.readline().strip()
        assert header == "J_over_gc,n_a,n_b,g2_aa_0,g2_bb_0,g2_ab_0"

    def test_env_var_overrides_parallelism(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QUADROMECH_THREADS", "2")
        path = write_config(tmp_path / "mini.json",
                            {**MINI_SWEEP, "out_dir": str(tmp_path),
                             "parallelism": 1})
        assert main(["run", "--config", path]) == 0
        assert (tmp_path / "custom.csv").exists()


class TestLoadConfig:
    def test_round_trip(self, tmp_path):
        path = write_config(tmp_path / "ok.json", MINI_SWEEP)
        config = load_config(path)
        assert config.spec.axes[0].count == 4
        assert config.space.n_phonon_max == 6
        assert config.formats == ("csv",)

    def test_invalid_json(self, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(str(bad))

    def test_unknown_format(self, tmp_path):
        path = write_config(tmp_path / "fmt.json",
                            {**MINI_SWEEP, "formats": ["xml"]})
        with pytest.raises(ConfigError):
            load_config(path)

    def test_unknown_axis_key(self, tmp_path):
        doc = {**MINI_SWEEP,
               "axes": [{"name": "J", "start": 0.1, "stop": 1.0,
                         "count": 4, "step": 0.1}]}
        path = write_config(tmp_path / "axis.json", doc)
        with pytest.raises(ConfigError):
            load_config(path)
