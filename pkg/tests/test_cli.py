from pathlib import Path

import pytest
from click.testing import CliRunner

from cueforge.cli import main
from cueforge.params import params_from_text

GOLDEN_FILES = ("report.txt", "report.tsv", "char_frequency.tsv", "divergence.tsv")


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


# --- analyze ---------------------------------------------------------------

def test_analyze_matches_golden(runner, tmp_path, data_dir):
    result = run(runner, "analyze", "--input", str(data_dir / "fixture_corpus.csv"),
                 "--out", str(tmp_path))
    assert result.exit_code == 0
    for name in GOLDEN_FILES:
        assert (tmp_path / name).read_bytes() == (data_dir / "golden" / name).read_bytes(), name


def test_analyze_shuffled_rows_identical(runner, tmp_path, data_dir):
    result = run(runner, "analyze", "--input",
                 str(data_dir / "fixture_corpus_shuffled.csv"), "--out", str(tmp_path))
    assert result.exit_code == 0
    for name in GOLDEN_FILES:
        assert (tmp_path / name).read_bytes() == (data_dir / "golden" / name).read_bytes(), name


def test_analyze_single_class(runner, tmp_path):
    corpus = tmp_path / "one.csv"
    corpus.write_text('"r1","i1","inkblot","two bats"\n"r2","i1","inkblot","a moth"\n')
    out = tmp_path / "out"
    result = run(runner, "analyze", "--input", str(corpus), "--out", str(out))
    assert result.exit_code == 0
    lines = (out / "report.tsv").read_text().splitlines()
    assert len(lines) == 2  # header + one class row
    assert lines[1].startswith("inkblot\t")


def test_analyze_malformed_row_exit_2(runner, tmp_path):
    corpus = tmp_path / "bad.csv"
    corpus.write_text('"r1","i1","inkblot","ok"\n"r2","i1","galaxy","bad class"\n')
    result = run(runner, "analyze", "--input", str(corpus), "--out", str(tmp_path / "o"))
    assert result.exit_code == 2
    assert "line 2" in result.output


def test_analyze_empty_corpus_exit_3(runner, tmp_path):
    corpus = tmp_path / "empty.csv"
    corpus.write_text('"r1","i1","inkblot",""\n')
    result = run(runner, "analyze", "--input", str(corpus), "--out", str(tmp_path / "o"))
    assert result.exit_code == 3


def test_unknown_flag_is_error(runner, tmp_path):
    result = runner.invoke(main, ["analyze", "--frobnicate", "1"])
    assert result.exit_code != 0


# --- gen -------------------------------------------------------------------

def test_gen_reproducible(runner, tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        result = run(runner, "gen", "--class", "cueblot", "--count", "6",
                     "--seed", "42", "--out", str(out))
        assert result.exit_code == 0
    assert (out1 / "manifest.tsv").read_bytes() == (out2 / "manifest.tsv").read_bytes()
    names1 = sorted(p.name for p in out1.glob("*.png"))
    names2 = sorted(p.name for p in out2.glob("*.png"))
    assert names1 == names2
    for name in names1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_gen_count_zero_exit_2(runner, tmp_path):
    result = run(runner, "gen", "--class", "cueblot", "--count", "0",
                 "--seed", "1", "--out", str(tmp_path / "o"))
    assert result.exit_code == 2


def test_gen_invalid_class_rejected(runner, tmp_path):
    result = runner.invoke(main, ["gen", "--class", "hologram", "--count", "1",
                                  "--seed", "1", "--out", str(tmp_path / "o")])
    assert result.exit_code != 0


def test_gen_snowflakes_distinct(runner, tmp_path):
    out = tmp_path / "flakes"
    result = run(runner, "gen", "--class", "snowflake", "--count", "6",
                 "--seed", "7", "--out", str(out))
    assert result.exit_code == 0
    digests = {p.name for p in out.glob("*.png")}
    assert len(digests) == 6


def test_gen_manifest_round_trips(runner, tmp_path):
    out = tmp_path / "imgs"
    run(runner, "gen", "--class", "fractal", "--count", "3",
        "--seed", "9", "--out", str(out), "--canvas", "128")
    for line in (out / "manifest.tsv").read_text().splitlines():
        name, text = line.split("\t")
        assert (out / name).exists()
        params_from_text(text)  # must parse


# --- stats -----------------------------------------------------------------

def test_stats_matches_golden(runner, data_dir):
    result = run(runner, "stats", "--input", str(data_dir / "fixture_log.jsonl"))
    assert result.output.encode() == (data_dir / "golden" / "stats.txt").read_bytes()
    assert result.exit_code == 0


def test_stats_empty_file_zero_table(runner, tmp_path):
    log = tmp_path / "empty.jsonl"
    log.write_text("")
    result = run(runner, "stats", "--input", str(log))
    assert result.exit_code == 0
    body_lines = result.output.splitlines()[1:]
    assert len(body_lines) == 3
    for line in body_lines:
        cells = line.split()
        assert cells[1] == "0"
        assert cells[2] == "0.000"


def test_stats_bad_line_exit_2(runner, tmp_path):
    log = tmp_path / "bad.jsonl"
    log.write_text("this is not json\n")
    result = run(runner, "stats", "--input", str(log))
    assert result.exit_code == 2
    assert "line 1" in result.output
