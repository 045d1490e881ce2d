"""Corpus file ingestion.

Format: comma-separated, one response per row:
``respondent_id,image_id,image_class,"text"`` with the text field quoted.
Rows with an empty text field are null responses: they are dropped from
the metrics but counted per class for the response rate.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusFormatError
from .metrics import IMAGE_CLASSES, TextResponse

CORPUS_FIELDS = ("respondent_id", "image_id", "image_class", "text")


@dataclass
class Corpus:
    responses: list[TextResponse] = field(default_factory=list)
    null_counts: dict[str, int] = field(default_factory=dict)

    @property
    def n_null(self) -> int:
        return sum(self.null_counts.values())


def parse_corpus(path: str | Path) -> Corpus:
    """Parse a corpus file, separating null responses from real ones."""
    corpus = Corpus()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            line_number = reader.line_num
            if not row:
                continue
            if len(row) != len(CORPUS_FIELDS):
                raise CorpusFormatError(
                    f"line {line_number}: expected {len(CORPUS_FIELDS)} fields, got {len(row)}",
                    line_number,
                )
            respondent_id, image_id, image_class, text = row
            if image_class not in IMAGE_CLASSES:
                raise CorpusFormatError(
                    f"line {line_number}: unknown image class {image_class!r}", line_number
                )
            if text == "":
                corpus.null_counts[image_class] = corpus.null_counts.get(image_class, 0) + 1
                continue
            try:
                corpus.responses.append(
                    TextResponse(text=text, image_id=image_id,
                                 image_class=image_class, respondent_id=respondent_id)
                )
            except ValueError as exc:
                raise CorpusFormatError(f"line {line_number}: {exc}", line_number) from exc
    return corpus


def write_corpus(path: str | Path, corpus: Corpus) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_ALL)
        for r in corpus.responses:
            writer.writerow([r.respondent_id, r.image_id, r.image_class, r.text])
        for image_class, n in sorted(corpus.null_counts.items()):
            for i in range(n):
                writer.writerow([f"null{i}", "-", image_class, ""])
