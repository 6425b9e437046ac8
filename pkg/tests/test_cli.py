import json

from easense.cli import main


def test_presets(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert "cmaes:" in out and "tournament_k" in out


def test_run_report_bins_stats(tmp_path, tiny_de, capsys):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(tiny_de))
    out_dir = str(tmp_path / "cli")
    assert main(["run", str(path), "--output", out_dir]) == 0
    assert "Consolidated ranking" in capsys.readouterr().out

    assert main(["report", out_dir, "--metric", "best"]) == 0
    assert "[consolidated]" in capsys.readouterr().out
    assert (tmp_path / "cli" / "ranking.csv").exists()

    assert main(["bins", out_dir, "--param", "beta_min", "--bins", "4", "--sigma", "0"]) == 0
    line = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert line["param"] == "beta_min" and len(line["smoothed"]) == 4

    assert main(["stats", out_dir]) == 0
    assert (tmp_path / "cli" / "ttests.csv").exists()


def test_errors_exit_with_one(tmp_path, capsys):
    assert main(["report", str(tmp_path / "empty")]) == 1
    assert "error:" in capsys.readouterr().err
    assert main(["bins", str(tmp_path / "missing"), "--param", "lambda"]) == 1
    assert main(["run", str(tmp_path / "none.json")]) == 1
