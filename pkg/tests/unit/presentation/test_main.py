import json
import math
from pathlib import Path

import pytest

from app.main import main

RECORDS = "p,n,outcome\n" + "".join(
    f"{p},2,{1.0 + 0.1 * p + 0.3 * math.sin(p):.4f}\n" for p in range(1, 41)
)


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)
    for name in ("POSITIVITY_SEED", "POSITIVITY_LOG_LEVEL", "POSITIVITY_ALPHA"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def records_csv(tmp_path: Path) -> Path:
    path = tmp_path / "records.csv"
    path.write_text(RECORDS)
    return path


class TestForensicsCommand:
    def test_bundled_samples(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["forensics"]) == 0

        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "forensics"
        assert report["results"]["kind"] == "forensics"
        labels = [a["report"]["input"]["label"] for a in report["results"]["audits"]]
        assert labels == ["sample1", "sample2"]
        assert len(report["input_digest"]) == 64

    def test_inline_sample(self, capsys: pytest.CaptureFixture[str]) -> None:
        argv = ["forensics", "--n1", "30", "--n2", "30", "--mean1", "3.5", "--mean2", "1.0"]
        assert main([*argv, "--t-stat", "48.41"]) == 0

        audit = json.loads(capsys.readouterr().out)["results"]["audits"][0]["report"]
        assert audit["verdict"] == "consistent-with-tipping"

    def test_identical_runs_give_identical_bytes(self, tmp_path: Path) -> None:
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["forensics", "--output", str(first)]) == 0
        assert main(["forensics", "--output", str(second)]) == 0

        assert first.read_bytes() == second.read_bytes()

    def test_report_reproduces_itself_as_config(self, tmp_path: Path) -> None:
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["forensics", "--alpha", "0.01", "--output", str(first)]) == 0
        assert main(["forensics", "--config", str(first), "--output", str(second)]) == 0

        assert first.read_bytes() == second.read_bytes()
        assert json.loads(second.read_text())["parameters"]["alpha"] == 0.01

    def test_logs_go_to_stderr(self, capsys: pytest.CaptureFixture[str]) -> None:
        main(["forensics"])
        err_lines = capsys.readouterr().err.splitlines()
        access = json.loads(err_lines[-1])

        assert access["command"] == "forensics"
        assert access["exit_status"] == 0


class TestFitCommand:
    def test_report_and_curves(self, records_csv: Path, tmp_path: Path) -> None:
        curves = tmp_path / "curves.tsv"
        report_path = tmp_path / "fit.json"
        argv = ["fit", "--input", str(records_csv), "--curves", str(curves)]
        assert main([*argv, "--output", str(report_path)]) == 0

        report = json.loads(report_path.read_text())
        assert [f["x_kind"] for f in report["results"]["fits"]] == ["ratio", "fraction"]
        lines = curves.read_text().splitlines()
        assert lines[0] == "x_kind\tdegree\tx\ty_hat\textrapolated"
        assert len(lines) - 1 == 4 * 200

    def test_curves_default_beside_the_report(self, records_csv: Path, tmp_path: Path) -> None:
        report_path = tmp_path / "fit.json"
        assert main(["fit", "--input", str(records_csv), "--output", str(report_path)]) == 0

        lines = (tmp_path / "fit.curves.tsv").read_text().splitlines()
        assert lines[0] == "x_kind\tdegree\tx\ty_hat\textrapolated"
        assert len(lines) - 1 == 4 * 200

    def test_curves_default_beside_the_input(
        self, records_csv: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        assert main(["fit", "--input", str(records_csv)]) == 0

        assert json.loads(capsys.readouterr().out)["command"] == "fit"
        assert (tmp_path / "records.curves.tsv").is_file()

    def test_missing_input(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["fit"]) == 1
        assert "requires --input" in capsys.readouterr().err


class TestClaimsCommand:
    def test_ladder_report(self, records_csv: Path, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["claims", "--input", str(records_csv), "--seed", "5"]) == 0

        results = json.loads(capsys.readouterr().out)["results"]
        assert [v["claim_id"] for v in results["primary"]["verdicts"]] == list(range(1, 9))
        assert results["upper"]["threshold"] == 11.6346


class TestTransformCommand:
    def test_to_stdout(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        path = tmp_path / "r.csv"
        path.write_text("p,n,outcome\n3,1,4.2\n2,0,1.0\n")

        assert main(["transform", "--input", str(path)]) == 0
        assert capsys.readouterr().out == (
            "p,n,outcome,ratio,fraction\n3,1,4.2,3.0,0.75\n2,0,1.0,,1.0\n"
        )

    def test_to_file(self, records_csv: Path, tmp_path: Path) -> None:
        out = tmp_path / "out.csv"
        assert main(["transform", "--input", str(records_csv), "--output", str(out)]) == 0
        assert out.read_text().splitlines()[0] == "p,n,outcome,ratio,fraction"


class TestExitCodes:
    def test_unknown_subcommand(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["plot"]) == 1
        assert "usage:" in capsys.readouterr().err

    def test_invalid_rows(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        path = tmp_path / "bad.csv"
        path.write_text("p,n,outcome\n1,1,2\n0,0,4.2\n")

        assert main(["transform", "--input", str(path)]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_invalid_configuration(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["simulate", "--replications", "50"]) == 2
        assert "invalid configuration" in capsys.readouterr().err

    def test_simulate_rejects_input(self, records_csv: Path) -> None:
        assert main(["simulate", "--input", str(records_csv)]) == 1

    def test_analysis_failure(self, tmp_path: Path) -> None:
        path = tmp_path / "tiny.csv"
        path.write_text("x,y\n1,2\n2,3\n")

        assert main(["fit", "--input", str(path)]) == 2


@pytest.mark.slow
class TestSimulateCommand:
    def test_small_run(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        config = tmp_path / "sim.json"
        config.write_text(
            json.dumps({"simulation": {"n": 40, "replications": 100, "shapes": ["linear", "step"]}})
        )

        assert main(["simulate", "--config", str(config)]) == 0
        results = json.loads(capsys.readouterr().out)["results"]
        assert [row["label"] for row in results["rows"]] == ["linear", "step"]
        assert results["calibration"]["reference"] == "step"
