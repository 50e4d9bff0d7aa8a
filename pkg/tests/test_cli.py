import json

import numpy as np
import pytest

from qdiscord import format_state, mixture_family, off_axis_x_state
from qdiscord.cli import main
from qdiscord.experiments import (ExperimentConfig,
                                  optimal_direction_clusters,
                                  optimal_direction_histogram, render_csv)


def write_state(tmp_path, rho, name="state.txt"):
    path = tmp_path / name
    path.write_text(format_state(rho))
    return str(path)


def bell_state():
    psi = np.zeros(4)
    psi[1] = psi[2] = 1.0 / np.sqrt(2.0)
    return np.outer(psi, psi).astype(complex)


class TestDiscordCommand:
    def test_bell_state_report(self, tmp_path, capsys):
        assert main(["discord", write_state(tmp_path, bell_state())]) == 0
        out = capsys.readouterr().out
        values = {}
        for line in out.strip().splitlines():
            key, _, rest = line.partition(":")
            values[key.strip()] = rest.split()
        assert float(values["mutual information"][0]) == pytest.approx(2.0, abs=1e-9)
        assert float(values["classical correlation"][0]) == pytest.approx(1.0, abs=1e-9)
        assert float(values["quantum discord"][0]) == pytest.approx(1.0, abs=1e-9)
        assert float(values["mcdm discord"][0]) == pytest.approx(1.0, abs=1e-9)

    def test_product_state_zeros(self, tmp_path, capsys):
        assert main(["discord", write_state(tmp_path, mixture_family(0.0))]) == 0
        out = capsys.readouterr().out
        for label in ("mutual information", "classical correlation",
                      "quantum discord", "mcdm discord"):
            line = next(l for l in out.splitlines() if l.startswith(label))
            assert abs(float(line.split(":")[1])) < 1e-9

    def test_off_axis_state_json(self, tmp_path, capsys):
        assert main(["discord", "--json", write_state(tmp_path, off_axis_x_state())]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["optimal_theta_over_pi"] - 0.155) < 0.01
        assert payload["mcdm_discord"] >= payload["discord"] - 1e-9
        assert payload["mcdm_direction"] == [1.0, 0.0, 0.0]

    def test_parse_failure_exit_2(self, tmp_path, capsys):
        path = tmp_path / "broken.txt"
        path.write_text("0 0 0 0\n0 what 0 0\n0 0 0 0\n0 0 0 0\n")
        assert main(["discord", str(path)]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err

    def test_missing_file_exit_2(self, tmp_path, capsys):
        assert main(["discord", str(tmp_path / "absent.txt")]) == 2

    def test_invalid_state_exit_3(self, tmp_path, capsys):
        bad = np.diag([0.75, 0.75, -0.25, -0.25]).astype(complex)
        assert main(["discord", write_state(tmp_path, bad)]) == 3

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["discord", "--bogus"])
        assert err.value.code == 2


class TestExperimentCommands:
    def test_table1_small(self, tmp_path):
        out = tmp_path / "t.csv"
        assert main(["table1", "--samples", "50", "--seed", "7",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "theta_over_pi,phi_over_pi,percentage"
        total = sum(float(l.split(",")[2]) for l in lines[1:])
        assert total == pytest.approx(100.0, abs=1e-9)
        # the dominant cluster is the maximal-correlation measurement
        first = lines[1].split(",")
        assert float(first[0]) == pytest.approx(0.5, abs=1e-9)
        assert float(first[1]) == pytest.approx(0.0, abs=1e-9)

    def test_table1_single_sample_is_one_row(self, tmp_path):
        out = tmp_path / "t1.csv"
        assert main(["table1", "--samples", "1", "--seed", "3",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 2
        assert float(lines[1].split(",")[2]) == 100.0

    def test_histogram_mass_and_mode(self, tmp_path):
        out = tmp_path / "h.csv"
        assert main(["histogram", "--samples", "80", "--seed", "5",
                     "--bins", "20x20", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "theta_bin_lower_over_pi,phi_bin_lower_over_pi,count"
        rows = [l.split(",") for l in lines[1:]]
        assert sum(int(r[2]) for r in rows) == 80
        mode = max(rows, key=lambda r: int(r[2]))
        # the mode bin touches the maximal-correlation measurement (pi/2, 0);
        # the optima straddle that corner, so containment is closed-interval
        eps = 1e-12
        assert float(mode[0]) - eps <= 0.5 <= float(mode[0]) + 1 / 20 + eps
        assert float(mode[1]) - eps <= 0.0 <= float(mode[1]) + 1 / 20 + eps

    def test_mixture_endpoints(self, tmp_path):
        out = tmp_path / "m.csv"
        assert main(["mixture", "--samples", "11", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "q,discord,mcdm_discord"
        first = [float(x) for x in lines[1].split(",")]
        last = [float(x) for x in lines[-1].split(",")]
        assert first[0] == 0.0 and abs(first[1]) < 1e-9 and abs(first[2]) < 1e-9
        assert last[0] == 1.0
        assert last[1] == pytest.approx(1.0, abs=1e-9)
        assert last[2] == pytest.approx(1.0, abs=1e-9)
        for line in lines[1:]:
            q, d, dt = (float(x) for x in line.split(","))
            assert dt >= d - 1e-12

    def test_scatter_summary(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["scatter", "--samples", "40", "--seed", "11",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "index,discord,mcdm_discord"
        assert lines[-1].startswith("# mean_squared_gap = ")
        mean_sq = float(lines[-1].split("=")[1])
        gaps = []
        for line in lines[1:-1]:
            _, d, dt = line.split(",")
            gaps.append(float(dt) - float(d))
            assert float(dt) >= float(d) - 1e-9
        assert mean_sq == pytest.approx(sum(g * g for g in gaps) / len(gaps), rel=1e-9)

    def test_stdout_output(self, capsys):
        assert main(["mixture", "--samples", "3"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("q,discord,mcdm_discord\n")
        assert out.endswith("\n")


class TestDeterminism:
    def test_workers_do_not_change_output(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["table1", "--samples", "60", "--seed", "7", "--workers", "1",
              "--out", str(a)])
        main(["table1", "--samples", "60", "--seed", "7", "--workers", "3",
              "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_rerun_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["scatter", "--samples", "25", "--seed", "9", "--out", str(a)])
        main(["scatter", "--samples", "25", "--seed", "9", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_no_partial_file_left_behind(self, tmp_path):
        out = tmp_path / "x.csv"
        main(["mixture", "--samples", "3", "--out", str(out)])
        assert out.exists()
        assert not (tmp_path / "x.csv.tmp").exists()


class TestPipelineHelpers:
    def test_cluster_tolerance_merges_nearby_directions(self):
        rows = optimal_direction_clusters(
            ExperimentConfig(samples=30, seed=7, cluster_tol=0.5))
        assert len(rows) == 1
        assert rows[0][2] == 100.0

    def test_render_csv_format(self):
        text = render_csv(("a", "b"), [(0.5, 1), (1 / 3, 2)])
        assert text == "a,b\n0.5,1\n0.333333333333,2\n"
        assert "\r" not in text

    def test_histogram_rows_sorted(self):
        rows = optimal_direction_histogram(ExperimentConfig(samples=40, seed=3, bins=(10, 10)))
        assert rows == sorted(rows)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(samples=0).validate()
        with pytest.raises(ValueError):
            ExperimentConfig(workers=0).validate()
