from __future__ import annotations

import json
from pathlib import Path

from addcomp.cli import main, run

DATA = Path(__file__).resolve().parent / "data"
SYNTH = ["synth-cooc", "--targets", "8", "--tokens", "100", "--contexts", "50"]


def _error(stderr: str) -> dict:
    line = stderr.strip().splitlines()[-1]
    assert line.startswith("error: ")
    return json.loads(line[len("error: ") :])


def _json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def test_unknown_command_is_a_usage_error(capsys) -> None:
    assert main(["translate"]) == 2
    assert _error(capsys.readouterr().err)["code"] == "usage"


def test_missing_input_file_exit_code(tmp_path: Path, capsys) -> None:
    assert run("chisq", ["--counts", str(tmp_path / "missing.tsv"), "--out", str(tmp_path)]) == 4
    error = _error(capsys.readouterr().err)
    assert error["code"] == "missing-file"
    assert error["stage"] == "chisq"


def test_bad_config_exit_code(tmp_path: Path, capsys) -> None:
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"vectors": {"offsets": "median"}}), encoding="utf-8")
    assert run("chisq", ["--counts", str(DATA / "table4.tsv"), "--config", str(config)]) == 3
    assert _error(capsys.readouterr().err)["exit"] == 3


def test_chisq_on_category_counts(tmp_path: Path, capsys) -> None:
    assert run("chisq", ["--counts", str(DATA / "table4.tsv"), "--out", str(tmp_path)]) == 0
    assert f"Wrote chi-square tests to {tmp_path / 'chisq.tsv'}" in capsys.readouterr().out
    lines = (tmp_path / "chisq.tsv").read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# config_hash=")
    assert lines[1].split("\t")[:2] == ["word", "c1"]
    assert len(lines) == 7
    summary = _json(tmp_path / "chisq.json")
    assert summary["tested"] == 5
    assert summary["passed"] == 4
    assert summary["seed"] == 0


def test_reruns_are_byte_identical(tmp_path: Path) -> None:
    assert run(SYNTH[0], SYNTH[1:] + ["--out", str(tmp_path), "--seed", "3"]) == 0
    first = (tmp_path / "table.tsv").read_bytes()
    assert run(SYNTH[0], SYNTH[1:] + ["--out", str(tmp_path), "--seed", "3"]) == 0
    assert (tmp_path / "table.tsv").read_bytes() == first
    assert run(SYNTH[0], SYNTH[1:] + ["--out", str(tmp_path), "--seed", "4"]) == 0
    assert (tmp_path / "table.tsv").read_bytes() != first


def test_vectors_for_several_lambdas(tmp_path: Path) -> None:
    assert run(SYNTH[0], SYNTH[1:] + ["--out", str(tmp_path)]) == 0
    table = tmp_path / "table.tsv"
    assert run("vectors", ["--table", str(table), "--lambda", "0,1", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "vectors_l0.tsv").is_file()
    assert (tmp_path / "vectors_l1.tsv").is_file()


def test_pipeline_from_synthetic_table_to_bias(tmp_path: Path, capsys) -> None:
    argv = ["pipeline", "--out", str(tmp_path), "=", *SYNTH, "=", "vectors", "=", "bias"]
    assert main(argv) == 0
    captured = capsys.readouterr()
    assert "Conducting synth-cooc (tool) [stage 1]" in captured.err
    assert "Conducting bias (tool) [stage 3]: bias" in captured.err
    assert "Pipeline finished: 3 stage(s)" in captured.out
    for name in ("table.tsv", "table.tsv.vocab.tsv", "vectors_l0.tsv", "bias_l0.tsv"):
        assert (tmp_path / name).is_file(), name
    summary = _json(tmp_path / "bias_l0.json")
    assert summary["count"] == 4
    assert summary["mode"] == "ordinary"
    assert summary["lambda"] == 0.0


def test_pipeline_rejects_clashing_outputs(tmp_path: Path, capsys) -> None:
    assert main(["pipeline", "--out", str(tmp_path), "=", *SYNTH, "=", *SYNTH]) == 1
    assert "would overwrite" in _error(capsys.readouterr().err)["message"]
    assert not (tmp_path / "table.tsv").exists()


def test_pipeline_rejects_stage_inputs(tmp_path: Path, capsys) -> None:
    assert main(["pipeline", "=", "vectors", "--table", str(tmp_path / "table.tsv")]) == 1
    error = _error(capsys.readouterr().err)
    assert error["code"] == "pipeline"
    assert "-i <table>" in error["message"]


def test_pipeline_seeded_from_a_table(tmp_path: Path) -> None:
    assert run(SYNTH[0], SYNTH[1:] + ["--out", str(tmp_path)]) == 0
    out = tmp_path / "reports"
    argv = ["pipeline", "-i", str(tmp_path / "table.tsv"), "--out", str(out), "=", "norms", "--lambda", "0,0.5"]
    assert main(argv) == 0
    assert (out / "norms.tsv").is_file()
    assert (out / "norms_hist_l0.5.tsv").is_file()


def test_man_page(capsys) -> None:
    assert main(["man"]) == 0
    assert "ADDCOMP" in capsys.readouterr().out


def test_empty_stage_between_separators(capsys) -> None:
    assert main(["pipeline", "=", *SYNTH, "=", "=", "vectors"]) == 1
    assert "Empty stage" in _error(capsys.readouterr().err)["message"]


def test_pipeline_without_stages(capsys) -> None:
    assert main(["pipeline"]) == 1
    assert _error(capsys.readouterr().err)["code"] == "pipeline"


def test_nearfar_bias_prefers_the_planted_order(tmp_path: Path) -> None:
    phrases = tmp_path / "planted.tsv"
    phrases.write_text("".join(f"s{k}\tt{k}\n" for k in range(20)), encoding="utf-8")
    out = tmp_path / "reports"
    argv = ["pipeline", "--out", str(out), "=", "synth-corpus", "--pairs", "20", "--occurrences", "200"]
    argv += ["--reverse-fraction", "0.1", "=", "count", "--nearfar", "=", "nearfar-bias", "--phrases", str(phrases)]
    assert main(argv) == 0
    summary = _json(out / "nearfar_bias_l0.json")
    assert summary["mode"] == "nearfar"
    assert summary["count"] == 20
    assert summary["reversed_count"] == 20
    assert summary["order_preference"] >= 0.9
    assert summary["mean_bias_reversed"] > summary["mean_bias"]
    assert abs(summary["within_fraction"] + summary["violation_fraction"] - 1.0) < 1e-12
