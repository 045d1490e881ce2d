"""Command-line front door: corpus analysis, batch image generation, and
attempt-log session statistics.

Floating-point values in reports are rendered to 3 decimal places with a
frozen formatting rule so golden files stay byte-stable.
"""

import sys
from pathlib import Path

import click

from . import authcore
from .corpus import parse_corpus
from .cueblot import generate_cueblot
from .errors import CorpusFormatError, EmptyCorpus
from .fractal import generate_fractal
from .metrics import (
    AlignmentScoring,
    char_frequency,
    class_summary,
    distribution_divergence,
    english_reference,
)
from .params import CueblotParams, FractalParams, SnowflakeParams
from .prng import SplitMix64
from .raster import encode_png, raster_digest
from .snowflake import generate_snowflake

GEN_CLASSES = ("cueblot", "snowflake", "fractal")


def _fmt(value) -> str:
    return "-" if value is None else f"{value:.3f}"


def _report_rows(reports):
    header = ["class", "n", "response_rate", "mean_length", "se_length",
              "mean_bpc", "se_bpc", "mean_similarity", "se_similarity"]
    rows = [header]
    for r in reports:
        rows.append([
            r.image_class, str(r.n_responses), _fmt(r.response_rate),
            _fmt(r.mean_length), _fmt(r.se_length),
            _fmt(r.mean_bpc), _fmt(r.se_bpc),
            _fmt(r.mean_similarity), _fmt(r.se_similarity),
        ])
    return rows


def _render_table(rows) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _render_tsv(rows) -> str:
    return "\n".join("\t".join(row) for row in rows) + "\n"


@click.group()
def main():
    """Cue-based authentication toolkit."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--match", default=2, show_default=True, type=int)
@click.option("--mismatch", default=-1, show_default=True, type=int)
@click.option("--gap", default=-1, show_default=True, type=int)
@click.option("--format", "fmt", default="table", show_default=True,
              type=click.Choice(["table", "tsv"]))
def analyze(input_path, out_dir, match, mismatch, gap, fmt):
    """Analyze a description corpus and write class reports."""
    try:
        corpus = parse_corpus(input_path)
    except CorpusFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if not corpus.responses:
        click.echo("error: corpus contains no non-null responses", err=True)
        sys.exit(3)

    scoring = AlignmentScoring(match=match, mismatch=mismatch, gap=gap)
    reports = class_summary(corpus.responses, scoring, null_counts=corpus.null_counts)
    rows = _report_rows(reports)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.txt").write_text(_render_table(rows))
    (out / "report.tsv").write_text(_render_tsv(rows))

    english = english_reference()
    by_class = {r.image_class: [x for x in corpus.responses if x.image_class == r.image_class]
                for r in reports}

    freq_lines = ["class\tsymbol_code\tfrequency"]
    div_lines = ["class\tkl_bits_vs_english"]
    for image_class in sorted(by_class):
        dist = char_frequency(by_class[image_class])
        for sym in sorted(dist.freqs):
            freq_lines.append(f"{image_class}\t{ord(sym)}\t{dist.freqs[sym]:.6f}")
        div_lines.append(f"{image_class}\t{_fmt(distribution_divergence(dist, english))}")
    pooled = char_frequency(corpus.responses)
    for sym in sorted(pooled.freqs):
        freq_lines.append(f"all\t{ord(sym)}\t{pooled.freqs[sym]:.6f}")
    div_lines.append(f"all\t{_fmt(distribution_divergence(pooled, english))}")
    (out / "char_frequency.tsv").write_text("\n".join(freq_lines) + "\n")
    (out / "divergence.tsv").write_text("\n".join(div_lines) + "\n")

    renderer = _render_table if fmt == "table" else _render_tsv
    click.echo(renderer(rows), nl=False)


def _sample_params(image_class: str, rng: SplitMix64):
    if image_class == "cueblot":
        return CueblotParams(
            seed=rng.next_u64(),
            max_blot_diameter=rng.next_int(16, 96),
            num_blots=rng.next_int(3, 15),
            blot_spacing=rng.next_int(8, 48),
            num_colors=rng.next_int(1, 8),
        )
    if image_class == "snowflake":
        return SnowflakeParams(
            seed=rng.next_u64(),
            num_rays=rng.next_int(5, 12),
            complexity=rng.next_int(2, 6),
            scale=0.5 + 0.45 * rng.next_float(),
        )
    return FractalParams(
        seed=rng.next_u64(),
        variant="julia" if rng.next_below(4) else "mandelbrot",
        view_center=0j,
        view_scale=2.4 + 1.2 * rng.next_float(),
        palette_id=rng.next_below(4),
    )


_GENERATORS = {
    "cueblot": generate_cueblot,
    "snowflake": generate_snowflake,
    "fractal": generate_fractal,
}


@main.command()
@click.option("--class", "image_class", required=True, type=click.Choice(GEN_CLASSES))
@click.option("--count", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--canvas", default=256, show_default=True, type=int)
def gen(image_class, count, seed, out_dir, canvas):
    """Batch-generate an image set plus a parameter manifest."""
    if count < 1:
        click.echo("error: --count must be >= 1", err=True)
        sys.exit(2)
    if not (0 <= seed < 2 ** 64):
        click.echo("error: --seed must be a 64-bit unsigned integer", err=True)
        sys.exit(2)
    if canvas not in (128, 256, 512):
        click.echo("error: --canvas must be 128, 256 or 512", err=True)
        sys.exit(2)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = SplitMix64(seed)
    manifest = []
    for _ in range(count):
        params = _sample_params(image_class, rng)
        raster = _GENERATORS[image_class](params, canvas)
        name = raster_digest(raster) + ".png"
        (out / name).write_bytes(encode_png(raster))
        manifest.append(f"{name}\t{params.to_text()}")
    (out / "manifest.tsv").write_text("\n".join(manifest) + "\n")
    click.echo(f"wrote {count} {image_class} images to {out}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--gap-window", default=300.0, show_default=True, type=float)
def stats(input_path, gap_window):
    """Print session statistics from an attempt log, split by condition."""
    try:
        records = authcore.parse_attempt_log(input_path)
    except CorpusFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    rows = [["condition", "n_sessions", "failed_session_rate",
             "mean_attempts_per_failed_session", "total_failure_sessions",
             "mean_login_duration"]]
    groups = [("password", [r for r in records if r.condition == "password"]),
              ("cueblot", [r for r in records if r.condition == "cueblot"]),
              ("all", records)]
    for label, group in groups:
        s = authcore.session_stats(group, gap_window)
        rows.append([label, str(s.n_sessions), _fmt(s.failed_session_rate),
                     _fmt(s.mean_attempts_per_failed_session),
                     str(s.total_failure_sessions), _fmt(s.mean_login_duration)])
    click.echo(_render_table(rows), nl=False)


if __name__ == "__main__":
    main()
