import json
import math

import pytest

from annulus.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestGen:
    def test_cycle1d_report_fields(self, capsys):
        data = run_json(capsys, "gen", "cycle1d", "--x", "2")
        assert data["tool"] == "annulus" and data["command"] == "gen cycle1d"
        assert data["mode"] == "float"
        assert [p[0] for p in data["points"]] == [0.0, 2.0, 4.0, 2.99, 1.01]
        assert "quantity" in data and "version" in data

    def test_lattice_exact_mode(self, capsys, tmp_path):
        out = tmp_path / "lat.json"
        code, _, _ = run(capsys, "gen", "lattice", "--dim", "1", "--x", "2",
                         "--eps", "1/2", "--n", "2", "-o", str(out))
        assert code == 0
        data = json.loads(out.read_text())
        assert data["mode"] == "exact" and data["scale"] == "1/2"
        assert all(isinstance(p[0], int) for p in data["points"])

    def test_sphere_seeded(self, capsys):
        a = run_json(capsys, "gen", "sphere", "--dim", "3", "--x", "2", "--seed", "3")
        b = run_json(capsys, "gen", "sphere", "--dim", "3", "--x", "2", "--seed", "3")
        assert a == b
        assert a["r1"] == 1.0 and a["r2"] == 2.0

    def test_easy_lemma(self, capsys):
        data = run_json(capsys, "gen", "easy-lemma", "--dim", "4")
        assert len(data["points"]) == 10


class TestPipelines:
    @pytest.fixture
    def inst_file(self, capsys, tmp_path):
        path = tmp_path / "inst.json"
        assert main(["gen", "cycle1d", "--x", "2", "-o", str(path)]) == 0
        capsys.readouterr()
        return str(path)

    def test_exact_chi_is_three(self, capsys, inst_file):
        data = run_json(capsys, "exact", "chi", inst_file)
        assert data["value"] == 3
        assert data["command"] == "exact chi"

    def test_exact_omega_witness(self, capsys, inst_file):
        data = run_json(capsys, "exact", "omega", inst_file)
        assert data["value"] == 2
        assert len(data["witness"]) == 2

    def test_exact_alpha(self, capsys, inst_file):
        data = run_json(capsys, "exact", "alpha", inst_file)
        assert data["value"] == 2

    def test_color_sweep_proper(self, capsys, inst_file):
        data = run_json(capsys, "color", "sweep", inst_file)
        assert data["proper"] is True
        assert data["n_colors"] == 3
        assert sorted(data["order"]) == list(range(5))

    def test_probe_embed_instance(self, capsys, inst_file):
        data = run_json(capsys, "probe", "embed", inst_file, "--restarts", "5")
        assert data["feasible"] is True and data["round_trip"] is True

    def test_strict_boundaries_exit_two(self, capsys, inst_file):
        code, _, err = run(capsys, "color", "sweep", inst_file, "--strict-boundaries")
        assert code == 2
        assert "within" in err


class TestBounds:
    def test_sweep(self, capsys):
        data = run_json(capsys, "bounds", "sweep", "--dim", "1", "--r1", "1", "--r2", "1")
        assert data["sweep_bound"] == 21 and data["T"] == 3.0
        assert any("asymptotic" in n for n in data["notes"])

    def test_kl(self, capsys):
        data = run_json(capsys, "bounds", "kl", "--phi", str(math.pi / 3))
        assert data["value"] == pytest.approx(0.278238667707892, abs=1e-12)

    def test_analysis_with_csv(self, capsys, tmp_path):
        grid = tmp_path / "grid.csv"
        data = run_json(capsys, "bounds", "analysis", "--step", "1e-3", "--csv", str(grid))
        assert data["argmax"] == pytest.approx(math.asin(1 / 1.2), abs=1e-15)
        assert 0.996 < data["max"] < 0.997
        lines = grid.read_text().splitlines()
        assert lines[0] == "theta,value"
        last_theta, last_value = lines[-1].split(",")
        assert float(last_theta) == pytest.approx(math.asin(1 / 1.2), abs=1e-15)
        assert float(last_value) == pytest.approx(data["max"], abs=1e-15)

    def test_ratio(self, capsys):
        data = run_json(capsys, "bounds", "ratio", "--x", "1.2", "--delta", "1e-4")
        assert data["value"] > data["ln_1003"]

    def test_clique_volume(self, capsys):
        data = run_json(capsys, "bounds", "clique-volume", "--dim", "2", "--r1", "1", "--r2", "2")
        assert data["value"] == 25


class TestProbeForbidden:
    def test_bipartite_floor(self, capsys):
        data = run_json(capsys, "probe", "forbidden", "--kind", "bipartite-sphericity",
                        "--dim", "1", "--restarts", "10")
        assert data["min_residual"] >= 0.09

    def test_relaxed_control(self, capsys):
        data = run_json(capsys, "probe", "forbidden", "--kind", "bipartite-sphericity",
                        "--dim", "1", "--restarts", "10", "--cross-bound", "2.0")
        assert data["residual"] < 1e-6


class TestExitCodes:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "nonsense")
        assert code == 1 and "error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "exact", "chi", "no-such-file.json")
        assert code == 1

    def test_malformed_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(capsys, "exact", "chi", str(bad))[0] == 1
        empty = tmp_path / "empty.json"
        empty.write_text("{}")
        assert run(capsys, "exact", "chi", str(empty))[0] == 1

    def test_budget_exit(self, capsys, tmp_path):
        path = tmp_path / "easy.json"
        assert main(["gen", "easy-lemma", "--dim", "3", "-o", str(path)]) == 0
        capsys.readouterr()
        code, _, err = run(capsys, "exact", "chi", str(path), "--budget", "2")
        assert code == 2 and "budget" in err.lower()

    def test_env_budget(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "easy.json"
        assert main(["gen", "easy-lemma", "--dim", "3", "-o", str(path)]) == 0
        capsys.readouterr()
        monkeypatch.setenv("ANNULUS_BUDGET", "2")
        assert run(capsys, "exact", "chi", str(path))[0] == 2
        monkeypatch.setenv("ANNULUS_BUDGET", "not-a-number")
        assert run(capsys, "exact", "chi", str(path))[0] == 1

    def test_missing_required_flag(self, capsys):
        code, _, _ = run(capsys, "gen", "lattice", "--dim", "1")
        assert code == 1

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0


class TestVerifySubcommand:
    def test_default_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "bounds")
        assert code == 0
        assert "[pass]" in out and "[FAIL]" not in out

    def test_fault_injection_fails(self, capsys):
        code, out, _ = run(capsys, "verify", "--tolerance", "1", "--only", "generators")
        assert code == 2
        assert "[FAIL]" in out

    def test_unknown_module(self, capsys):
        assert run(capsys, "verify", "--only", "nope")[0] == 2


class TestDeterminism:
    def test_byte_identical_reports(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["probe", "forbidden", "--kind", "three-points", "--dim", "2",
                "--restarts", "4", "--seed", "11"]
        assert main(argv + ["-o", str(a)]) == 0
        assert main(argv + ["-o", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
