"""Strength and name-agreement metrics over textual image descriptions.

Three families: per-string Shannon entropy under the string's own
character frequencies, Smith-Waterman local alignment (with a
length-normalized similarity), and pooled character distributions with a
divergence against a bundled English reference.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

from .errors import EmptyCorpus, EmptyText

PRINTABLE_ASCII = "".join(chr(c) for c in range(32, 127))
ALPHABET_SIZE = len(PRINTABLE_ASCII)  # 95
MAX_BITS_PER_CHAR = math.log2(ALPHABET_SIZE)  # 6.5699...

IMAGE_CLASSES = ("face", "fractal", "inkblot", "snowflake", "texture", "password")


@dataclass(frozen=True)
class TextResponse:
    """One textual description of one image, from one respondent."""

    text: str
    image_id: str
    image_class: str
    respondent_id: str

    def __post_init__(self):
        if not self.text:
            raise EmptyText("response text must be non-empty")
        bad = [c for c in self.text if not (32 <= ord(c) <= 126)]
        if bad:
            raise ValueError(f"response text must be printable ASCII, got {bad[0]!r}")
        if self.image_class not in IMAGE_CLASSES:
            raise ValueError(f"unknown image class {self.image_class!r}")


@dataclass(frozen=True)
class EntropyResult:
    bits_per_char: float
    length: int

    @property
    def total_bits(self) -> float:
        return self.bits_per_char * self.length


@dataclass(frozen=True)
class AlignmentScoring:
    match: int = 2
    mismatch: int = -1
    gap: int = -1

    def __post_init__(self):
        if self.match <= 0:
            raise ValueError("match weight must be positive")
        if self.mismatch > 0 or self.gap > 0:
            raise ValueError("mismatch and gap weights must be <= 0")


@dataclass(frozen=True)
class ClassReport:
    image_class: str
    n_responses: int
    mean_length: float
    se_length: float
    mean_bpc: float
    se_bpc: float
    mean_similarity: float | None
    se_similarity: float | None
    response_rate: float


@dataclass(frozen=True)
class CharDistribution:
    """Relative frequencies over the 95 printable ASCII symbols."""

    freqs: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for sym, f in self.freqs.items():
            if sym not in PRINTABLE_ASCII:
                raise ValueError(f"symbol {sym!r} outside the printable ASCII alphabet")
            if f < 0:
                raise ValueError(f"negative frequency for {sym!r}")
        total = math.fsum(self.freqs.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"frequencies must sum to 1, got {total}")

    def __getitem__(self, symbol: str) -> float:
        return self.freqs.get(symbol, 0.0)


def entropy_bits_per_char(text: str) -> EntropyResult:
    """Empirical Shannon entropy of a string under its own character
    frequencies, in bits per character."""
    if not text:
        raise EmptyText("cannot compute entropy of an empty string")
    n = len(text)
    counts = Counter(text)
    bits = -math.fsum((c / n) * math.log2(c / n) for c in counts.values())
    return EntropyResult(bits_per_char=bits if bits > 0.0 else 0.0, length=n)


def smith_waterman(a: str, b: str, scoring: AlignmentScoring = AlignmentScoring()) -> int:
    """Best local alignment score between two strings.

    Rolling two-row dynamic program; returns the maximum cell of the
    standard Smith-Waterman recurrence.
    """
    if not a or not b:
        raise EmptyText("alignment requires two non-empty strings")
    match, mismatch, gap = scoring.match, scoring.mismatch, scoring.gap
    prev = [0] * (len(b) + 1)
    best = 0
    for ca in a:
        cur = [0] * (len(b) + 1)
        for j, cb in enumerate(b, start=1):
            diag = prev[j - 1] + (match if ca == cb else mismatch)
            score = max(0, diag, prev[j] + gap, cur[j - 1] + gap)
            cur[j] = score
            if score > best:
                best = score
        prev = cur
    return best


def normalized_similarity(a: str, b: str, scoring: AlignmentScoring = AlignmentScoring()) -> float:
    """Smith-Waterman score normalized by match weight and mean length,
    clamped to [0, 1]. Identical strings score exactly 1."""
    raw = smith_waterman(a, b, scoring)
    denom = scoring.match * (len(a) + len(b)) / 2.0
    return min(max(raw / denom, 0.0), 1.0)


def char_frequency(responses: list[TextResponse]) -> CharDistribution:
    """Pooled empirical character distribution over a corpus."""
    if not responses:
        raise EmptyCorpus("cannot compute character frequencies of an empty corpus")
    counts: Counter[str] = Counter()
    for r in responses:
        counts.update(r.text)
    total = sum(counts.values())
    return CharDistribution({sym: c / total for sym, c in sorted(counts.items())})


_SMOOTHING_N = 1e12


def distribution_divergence(p: CharDistribution, q: CharDistribution) -> float:
    """Kullback-Leibler divergence D(p || q) in bits.

    q is add-one smoothed over the 95-symbol alphabet at a nominal sample
    size of 1e12 pseudo-counts, so the divergence is finite for any p while
    leaving the uniform distribution a fixed point and D(p || p) zero to
    well below 1e-9 bits.
    """
    terms = []
    for sym in PRINTABLE_ASCII:
        p_i = p[sym]
        if p_i <= 0.0:
            continue
        q_i = (q[sym] * _SMOOTHING_N + 1.0) / (_SMOOTHING_N + ALPHABET_SIZE)
        terms.append(p_i * math.log2(p_i / q_i))
    return max(math.fsum(terms), 0.0)


def english_reference() -> CharDistribution:
    """The bundled English character frequency reference."""
    freqs = {}
    text = resources.files("cueforge.data").joinpath("english_reference.tsv").read_text()
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        code, freq = line.split("\t")
        freqs[chr(int(code))] = float(freq)
    total = math.fsum(freqs.values())
    return CharDistribution({s: f / total for s, f in freqs.items()})


def _mean_se(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = math.fsum(values) / n
    if n < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var) / math.sqrt(n)


def class_summary(
    responses: list[TextResponse],
    scoring: AlignmentScoring = AlignmentScoring(),
    null_counts: dict[str, int] | None = None,
    lowercase: bool = True,
    group_by_image: bool = False,
) -> list[ClassReport]:
    """Per-class length, entropy, and pairwise-similarity statistics.

    Alignment is computed over lowercased text by default; entropy always
    over the raw text. Responses are processed in a sorted order so the
    result is independent of input ordering. With ``group_by_image``,
    similarity pairs are restricted to responses to the same image.
    """
    if not responses:
        raise EmptyCorpus("cannot summarize an empty corpus")
    null_counts = null_counts or {}
    by_class: dict[str, list[TextResponse]] = {}
    for r in responses:
        by_class.setdefault(r.image_class, []).append(r)

    reports = []
    for image_class in sorted(by_class):
        rs = sorted(by_class[image_class],
                    key=lambda r: (r.respondent_id, r.image_id, r.text))
        lengths = [float(len(r.text)) for r in rs]
        bpcs = [entropy_bits_per_char(r.text).bits_per_char for r in rs]
        aligned = [r.text.lower() if lowercase else r.text for r in rs]

        sims = []
        for i in range(len(rs)):
            for j in range(i + 1, len(rs)):
                if group_by_image and rs[i].image_id != rs[j].image_id:
                    continue
                sims.append(normalized_similarity(aligned[i], aligned[j], scoring))

        mean_len, se_len = _mean_se(lengths)
        mean_bpc, se_bpc = _mean_se(bpcs)
        if sims:
            mean_sim, se_sim = _mean_se(sims)
        else:
            mean_sim = se_sim = None

        nulls = null_counts.get(image_class, 0)
        reports.append(ClassReport(
            image_class=image_class,
            n_responses=len(rs),
            mean_length=mean_len,
            se_length=se_len,
            mean_bpc=mean_bpc,
            se_bpc=se_bpc,
            mean_similarity=mean_sim,
            se_similarity=se_sim,
            response_rate=len(rs) / (len(rs) + nulls),
        ))
    return reports
