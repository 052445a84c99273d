"""Corpus file formats: plain text, parallel TSV, and the M2 subset.

Plain corpora are one sentence per line with single-space token separators.
Parallel corpora are ``source<TAB>target`` with the same tokenization.  The
M2 subset is the BEA-style interchange format: an ``S`` source line followed
by ``A`` annotator edit lines::

    S He go home
    A 1 2|||R:VERB|||goes|||REQUIRED|||-NONE-|||0

``-NONE-`` as replacement means deletion; ``A -1 -1|||noop|||...`` marks an
annotator who proposes no edits.  Edit types are carried through for
round-tripping but ignored by the scorer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ContractError, FormatError
from .spans import EditSpan, TokenSeq, validate_tokens

Pair = tuple[TokenSeq, TokenSeq]
ParallelCorpus = list[Pair]

_NONE_FIELD = "-NONE-"
_REQUIRED_FIELD = "REQUIRED"
_NOOP_TYPE = "noop"
DEFAULT_EDIT_TYPE = "UNK"


def _split_tokens(line: str, path: str, lineno: int) -> TokenSeq:
    if not line:
        return ()
    try:
        return validate_tokens(line.split(" "))
    except ContractError as exc:
        raise FormatError(str(exc), path=path, line=lineno) from None


def read_sentences(path: str | Path) -> list[TokenSeq]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            out.append(_split_tokens(raw.rstrip("\n"), str(path), lineno))
    return out


def write_sentences(path: str | Path, sentences: Iterable[Sequence[str]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for sent in sentences:
            fh.write(" ".join(validate_tokens(sent)) + "\n")


def read_tsv_corpus(path: str | Path) -> ParallelCorpus:
    pairs: ParallelCorpus = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError(
                    f"expected source<TAB>target, got {len(parts)} fields", path=str(path), line=lineno
                )
            source = _split_tokens(parts[0], str(path), lineno)
            target = _split_tokens(parts[1], str(path), lineno)
            if not source and not target:
                raise FormatError("both sides empty", path=str(path), line=lineno)
            pairs.append((source, target))
    return pairs


def write_tsv_corpus(path: str | Path, pairs: Iterable[Pair]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for source, target in pairs:
            src = validate_tokens(source)
            tgt = validate_tokens(target)
            if not src and not tgt:
                raise ContractError("refusing to write a pair with both sides empty")
            fh.write(" ".join(src) + "\t" + " ".join(tgt) + "\n")


def filter_edit_free(pairs: Sequence[Pair]) -> ParallelCorpus:
    """Keep only pairs whose source and target differ (token-wise)."""
    return [(s, t) for s, t in pairs if s != t]


@dataclass(frozen=True)
class M2Edit:
    span: EditSpan
    type: str = DEFAULT_EDIT_TYPE


@dataclass(frozen=True)
class M2Block:
    """One M2 sentence: source tokens plus per-annotator edit lists.

    An annotator mapped to an empty tuple gave an explicit no-edit (noop)
    annotation; annotators absent from the mapping made no statement.
    """

    source: TokenSeq
    annotations: dict[int, tuple[M2Edit, ...]] = field(default_factory=dict)

    def gold_edit_lists(self) -> list[list[EditSpan]]:
        """Per-annotator edit spans ordered by annotator id.

        A block with no annotations counts as one annotator with no edits.
        """
        if not self.annotations:
            return [[]]
        return [[e.span for e in self.annotations[a]] for a in sorted(self.annotations)]


def read_m2(path: str | Path) -> list[M2Block]:
    spath = str(path)
    blocks: list[M2Block] = []
    source: TokenSeq | None = None
    annotations: dict[int, list[M2Edit]] = {}
    noop_seen: set[int] = set()

    def close() -> None:
        nonlocal source, annotations, noop_seen
        if source is not None:
            blocks.append(M2Block(source, {a: tuple(es) for a, es in annotations.items()}))
        source = None
        annotations = {}
        noop_seen = set()

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                close()
                continue
            if line == "S" or line.startswith("S "):
                close()
                source = _split_tokens(line[2:], spath, lineno)
                continue
            if line.startswith("A "):
                if source is None:
                    raise FormatError("A line before any S line", path=spath, line=lineno)
                annotator, edit = _parse_a_line(line, len(source), spath, lineno)
                if edit is None:
                    if annotator in noop_seen or annotations.get(annotator):
                        raise FormatError(
                            f"annotator {annotator} mixes noop with other annotations", path=spath, line=lineno
                        )
                    noop_seen.add(annotator)
                    annotations.setdefault(annotator, [])
                else:
                    if annotator in noop_seen:
                        raise FormatError(
                            f"annotator {annotator} mixes noop with other annotations", path=spath, line=lineno
                        )
                    annotations.setdefault(annotator, []).append(edit)
                continue
            raise FormatError(f"unrecognized line {line[:40]!r}", path=spath, line=lineno)
    close()
    return blocks


def _parse_a_line(line: str, source_len: int, path: str, lineno: int) -> tuple[int, M2Edit | None]:
    fields = line[2:].split("|||")
    if len(fields) != 6:
        raise FormatError(f"A line needs 6 |||-separated fields, got {len(fields)}", path=path, line=lineno)
    span_field, edit_type, replacement_field, required, none_field, annotator_field = fields
    if required != _REQUIRED_FIELD or none_field != _NONE_FIELD:
        raise FormatError(
            f"fields 4-5 must be {_REQUIRED_FIELD}|||{_NONE_FIELD}", path=path, line=lineno
        )
    span_parts = span_field.split()
    if len(span_parts) != 2:
        raise FormatError(f"bad span {span_field!r}", path=path, line=lineno)
    try:
        start, end = int(span_parts[0]), int(span_parts[1])
        annotator = int(annotator_field)
    except ValueError:
        raise FormatError(f"non-integer span or annotator in {line!r}", path=path, line=lineno) from None
    if annotator < 0:
        raise FormatError(f"negative annotator id {annotator}", path=path, line=lineno)
    if not edit_type or "|||" in edit_type:
        raise FormatError(f"bad edit type {edit_type!r}", path=path, line=lineno)
    if start == -1 and end == -1:
        if edit_type != _NOOP_TYPE or replacement_field != _NONE_FIELD:
            raise FormatError("a -1 -1 annotation must be noop|||-NONE-", path=path, line=lineno)
        return annotator, None
    if edit_type == _NOOP_TYPE:
        raise FormatError("noop must use the -1 -1 span", path=path, line=lineno)
    if not 0 <= start <= end <= source_len:
        raise FormatError(
            f"span [{start}, {end}) outside source of length {source_len}", path=path, line=lineno
        )
    if replacement_field == _NONE_FIELD:
        replacement: TokenSeq = ()
    else:
        replacement = _split_tokens(replacement_field, path, lineno)
    try:
        span = EditSpan(start, end, replacement)
    except ContractError as exc:
        raise FormatError(str(exc), path=path, line=lineno) from None
    return annotator, M2Edit(span, edit_type)


def write_m2(path: str | Path, blocks: Iterable[M2Block]) -> None:
    """Write blocks in canonical order: annotators ascending, edits as stored."""
    with open(path, "w", encoding="utf-8") as fh:
        for block in blocks:
            tokens = validate_tokens(block.source)
            fh.write(("S " + " ".join(tokens)).rstrip() + "\n")
            for annotator in sorted(block.annotations):
                edits = block.annotations[annotator]
                if not edits:
                    fh.write(f"A -1 -1|||{_NOOP_TYPE}|||{_NONE_FIELD}|||{_REQUIRED_FIELD}|||{_NONE_FIELD}|||{annotator}\n")
                    continue
                for edit in edits:
                    fh.write(_format_a_line(edit, annotator, len(tokens)) + "\n")
            fh.write("\n")


def _format_a_line(edit: M2Edit, annotator: int, source_len: int) -> str:
    span = edit.span
    if span.end > source_len:
        raise ContractError(f"edit {span} exceeds source length {source_len}")
    if not edit.type or edit.type == _NOOP_TYPE or "|||" in edit.type or "\n" in edit.type:
        raise ContractError(f"unwritable edit type {edit.type!r}")
    for tok in span.replacement:
        if "|||" in tok or tok == _NONE_FIELD:
            raise ContractError(f"replacement token {tok!r} cannot be written in M2")
    replacement = " ".join(span.replacement) if span.replacement else _NONE_FIELD
    return (
        f"A {span.start} {span.end}|||{edit.type}|||{replacement}"
        f"|||{_REQUIRED_FIELD}|||{_NONE_FIELD}|||{annotator}"
    )
