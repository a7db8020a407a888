import json

import pytest

from tverberg_kit.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, build_parser, cli_main
from tverberg_kit.core.rational import PointConfig
from tverberg_kit.utils.documents import parse_pointset, serialize_pointset
from tverberg_kit.utils.generate import generate_instance

SQUARE_AND_AXIS = PointConfig.from_rows([[1, 1], [-1, -1], [-1, 1], [1, -1], [0, 0], [2, 0], [-2, 0]])


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("TVK_RETRIES", "TVK_JOBS", "TVK_GEN_ATTEMPTS", "TVK_SAVE_TRACES", "TVK_TRACE_DIR", "TVK_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def points_file(tmp_path):
    path = tmp_path / "square_and_axis.json"
    path.write_text(serialize_pointset(SQUARE_AND_AXIS), encoding="utf-8")
    return path


def test_gen_is_reproducible(capsys):
    assert cli_main(["gen", "--seed", "1", "--count", "7", "--dim", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert parse_pointset(out) == generate_instance(1, 7, 2, 100)


def test_gen_to_file(tmp_path):
    target = tmp_path / "pts.json"
    assert cli_main(["gen", "--seed", "4", "--count", "5", "--dim", "3", "--out", str(target)]) == EXIT_OK
    assert len(parse_pointset(target.read_text(encoding="utf-8"))) == 5


def test_tverberg_find_then_verify(points_file, tmp_path, capsys):
    assert cli_main(["tverberg", "find", str(points_file)]) == EXIT_OK
    witness = capsys.readouterr().out
    assert json.loads(witness)["kind"] == "tverberg"
    witness_file = tmp_path / "witness.json"
    witness_file.write_text(witness, encoding="utf-8")
    assert cli_main(["verify", str(witness_file), "--points", str(points_file)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["verified"] is True


def test_verify_tampered_witness(points_file, tmp_path, capsys):
    cli_main(["tverberg", "find", str(points_file)])
    doc = json.loads(capsys.readouterr().out)
    doc["coefficients"][0][0][1] = "-1"
    witness_file = tmp_path / "tampered.json"
    witness_file.write_text(json.dumps(doc), encoding="utf-8")
    assert cli_main(["verify", str(witness_file), "--points", str(points_file)]) == EXIT_NEGATIVE
    assert json.loads(capsys.readouterr().out)["verified"] is False


def test_oracle_lists_every_partition(points_file, capsys):
    assert cli_main(["tverberg", "oracle", str(points_file)]) == EXIT_OK
    found = json.loads(capsys.readouterr().out)
    assert [[0, 1], [2, 3], [4, 5, 6]] in [d["parts"] for d in found]


def test_gp_check(tmp_path, capsys):
    path = tmp_path / "line.json"
    path.write_text(serialize_pointset(PointConfig.from_rows([[0, 0], [1, 1], [2, 2]])), encoding="utf-8")
    assert cli_main(["gp-check", str(path)]) == EXIT_NEGATIVE
    report = json.loads(capsys.readouterr().out)
    assert report == {"general_position": False, "violator": [0, 1, 2]}


def test_no_witness_below_threshold(tmp_path, capsys):
    path = tmp_path / "triangle.json"
    path.write_text(serialize_pointset(PointConfig.from_rows([[0, 0], [1, 0], [0, 1]])), encoding="utf-8")
    assert cli_main(["tverberg", "find", str(path)]) == EXIT_NEGATIVE
    assert "error:" in capsys.readouterr().err


def test_usage_and_io_errors(points_file, tmp_path, capsys):
    assert cli_main(["tverberg", "find", "--bogus", str(points_file)]) == EXIT_USAGE
    assert cli_main(["tverberg", "find", str(tmp_path / "missing.json")]) == EXIT_USAGE
    broken = tmp_path / "broken.json"
    broken.write_text('{"dim": 2, "points": [["1", "1/0"]]}', encoding="utf-8")
    assert cli_main(["gp-check", str(broken)]) == EXIT_USAGE
    assert "points[0][1]" in capsys.readouterr().err
    assert cli_main(["vkf", "find", "--k", "1", str(points_file)]) == EXIT_USAGE


def test_bad_environment_is_a_usage_error(points_file, monkeypatch):
    monkeypatch.setenv("TVK_JOBS", "zero")
    assert cli_main(["gp-check", str(points_file)]) == EXIT_USAGE


def test_render_svg(points_file, tmp_path, capsys):
    cli_main(["tverberg", "find", str(points_file)])
    witness_file = tmp_path / "witness.json"
    witness_file.write_text(capsys.readouterr().out, encoding="utf-8")
    svg = tmp_path / "out.svg"
    assert cli_main(["render", "--svg", str(svg), "--witness", str(witness_file), str(points_file)]) == EXIT_OK
    assert "<svg" in svg.read_text(encoding="utf-8")


def test_jobs_accepted_before_or_after_the_subcommand():
    parser = build_parser()
    assert parser.parse_args(["reduce", "--k", "1", "--jobs", "2", "pts.json"]).jobs == 2
    assert parser.parse_args(["--jobs", "3", "tverberg", "find", "pts.json"]).jobs == 3
    assert parser.parse_args(["vkf", "find", "--k", "1", "--jobs", "4"]).jobs == 4
    assert parser.parse_args(["survey", "vkf", "--jobs", "2"]).jobs == 2
    assert parser.parse_args(["gp-check", "pts.json"]).jobs is None


def test_oracle_with_worker_processes(points_file, capsys):
    assert cli_main(["tverberg", "oracle", "--jobs", "2", str(points_file)]) == EXIT_OK
    with_workers = capsys.readouterr().out
    assert cli_main(["tverberg", "oracle", str(points_file)]) == EXIT_OK
    assert capsys.readouterr().out == with_workers


def test_counts_below_their_minimum_are_usage_errors(points_file):
    assert cli_main(["reduce", "--k", "1", "--retries", "-1", str(points_file)]) == EXIT_USAGE
    assert cli_main(["tverberg", "find", "--jobs", "0", str(points_file)]) == EXIT_USAGE
    assert cli_main(["--jobs", "two", "tverberg", "find", str(points_file)]) == EXIT_USAGE
