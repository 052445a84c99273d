"""The matrix file: the interoperability boundary for external taggers.

UTF-8 JSON lines.  The first line is a header object::

    {"format": "gec-editkit/matrix-v1", "vocab_sha256": "<hex>", "vocab_size": N}

Every following line is one sentence record::

    {"tokens": [...], "rows": [[...], ...], "error_probs": [...]}

Rows include the START position first, so there are len(tokens) + 1 of them.
JSON float serialization uses repr, which round-trips doubles exactly, so a
write/read cycle is lossless.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import FormatError
from .spans import TokenSeq, validate_tokens
from .tagger import CONSTRUCT_SUM_TOL, TagDistribution
from .vocab import TagVocab

MATRIX_FORMAT = "gec-editkit/matrix-v1"

MatrixRecord = tuple[TokenSeq, TagDistribution]


def write_matrix_file(path: str | Path, vocab: TagVocab, records: Iterable[MatrixRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        _write_matrix(fh, vocab, records)


def _write_matrix(fh: IO[str], vocab: TagVocab, records: Iterable[MatrixRecord]) -> None:
    header = {"format": MATRIX_FORMAT, "vocab_sha256": vocab.sha256, "vocab_size": len(vocab)}
    fh.write(json.dumps(header) + "\n")
    for tokens, dist in records:
        if dist.vocab_id != vocab.sha256:
            raise FormatError(
                f"record for {' '.join(tokens)!r} belongs to a different vocab ({dist.vocab_id[:12]}...)"
            )
        if dist.positions != len(tokens) + 1:
            raise FormatError(
                f"record for {' '.join(tokens)!r} has {dist.positions} rows for {len(tokens)} tokens"
            )
        record = {
            "tokens": list(tokens),
            "rows": [list(map(float, row)) for row in dist.rows],
            "error_probs": [float(x) for x in dist.error_probs],
        }
        fh.write(json.dumps(record) + "\n")


def iter_matrix_file(path: str | Path, vocab: TagVocab | None = None) -> Iterator[MatrixRecord]:
    """Stream (tokens, distribution) records, validating as it goes.

    When ``vocab`` is given, the file's vocab hash must match it.  Any
    malformed record raises FormatError naming the file and line.
    """
    spath = str(path)
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        if not first:
            raise FormatError("empty matrix file: missing header", path=spath, line=1)
        header = _parse_json(first, spath, 1)
        if header.get("format") != MATRIX_FORMAT:
            raise FormatError(f"expected format {MATRIX_FORMAT!r}, got {header.get('format')!r}", path=spath, line=1)
        vocab_id = header.get("vocab_sha256")
        vocab_size = header.get("vocab_size")
        if not isinstance(vocab_id, str) or not isinstance(vocab_size, int) or vocab_size < 1:
            raise FormatError("header needs a vocab_sha256 string and positive vocab_size", path=spath, line=1)
        if vocab is not None:
            if vocab.sha256 != vocab_id:
                raise FormatError(
                    f"file was produced for vocab {vocab_id[:12]}..., expected {vocab.sha256[:12]}...",
                    path=spath,
                    line=1,
                )
            if len(vocab) != vocab_size:
                raise FormatError(f"header vocab_size {vocab_size} != vocab size {len(vocab)}", path=spath, line=1)
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            yield _parse_record(line, vocab_id, vocab_size, spath, lineno)


def read_matrix_file(path: str | Path, vocab: TagVocab | None = None) -> list[MatrixRecord]:
    return list(iter_matrix_file(path, vocab))


def _parse_json(line: str, path: str, lineno: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", path=path, line=lineno) from None
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object", path=path, line=lineno)
    return obj


def _parse_record(line: str, vocab_id: str, vocab_size: int, path: str, lineno: int) -> MatrixRecord:
    obj = _parse_json(line, path, lineno)
    missing = {"tokens", "rows", "error_probs"} - obj.keys()
    if missing:
        raise FormatError(f"record is missing {sorted(missing)}", path=path, line=lineno)
    try:
        tokens = validate_tokens(obj["tokens"])
    except Exception as exc:
        raise FormatError(f"bad tokens: {exc}", path=path, line=lineno) from None
    rows = obj["rows"]
    error_probs = obj["error_probs"]
    if not isinstance(rows, list) or len(rows) != len(tokens) + 1:
        raise FormatError(
            f"expected {len(tokens) + 1} rows ([START] + tokens), got {len(rows) if isinstance(rows, list) else '?'}",
            path=path,
            line=lineno,
        )
    if not isinstance(error_probs, list) or len(error_probs) != len(rows):
        raise FormatError(
            f"error_probs length {len(error_probs) if isinstance(error_probs, list) else '?'} "
            f"does not match {len(rows)} rows",
            path=path,
            line=lineno,
        )
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != vocab_size:
            raise FormatError(
                f"row {i} has length {len(row) if isinstance(row, list) else '?'}, vocab size is {vocab_size}",
                path=path,
                line=lineno,
            )
        if not all(isinstance(x, (int, float)) and 0.0 <= x <= 1.0 for x in row):
            raise FormatError(f"row {i} has probabilities outside [0, 1]", path=path, line=lineno)
        total = sum(row)
        if abs(total - 1.0) > CONSTRUCT_SUM_TOL:
            raise FormatError(f"row {i} sums to {total!r}, not 1", path=path, line=lineno)
    if not all(isinstance(x, (int, float)) and 0.0 <= x <= 1.0 for x in error_probs):
        raise FormatError("error_probs outside [0, 1]", path=path, line=lineno)
    return tokens, TagDistribution(vocab_id, rows, error_probs)
