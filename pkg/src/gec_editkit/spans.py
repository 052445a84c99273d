"""Token sequences, span edits, and simultaneous edit application."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ContractError, EditOverlapError, SpanRangeError

TokenSeq = tuple[str, ...]


def validate_tokens(tokens: Iterable[str]) -> TokenSeq:
    """Check and freeze a token sequence.

    Tokens must be non-empty and contain no whitespace; the sequence itself
    may be empty.  Tokenization is the caller's concern.
    """
    out = tuple(tokens)
    for tok in out:
        if not isinstance(tok, str):
            raise ContractError(f"token must be str, got {tok!r}")
        if not tok:
            raise ContractError("empty token")
        if any(ch.isspace() for ch in tok):
            raise ContractError(f"token contains whitespace: {tok!r}")
    return out


@dataclass(frozen=True, slots=True)
class EditSpan:
    """Replace source tokens [start, end) with ``replacement``.

    start == end encodes a pure insertion (replacement must be non-empty);
    an empty replacement encodes a deletion.
    """

    start: int
    end: int
    replacement: TokenSeq = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "replacement", validate_tokens(self.replacement))
        if self.start < 0 or self.end < self.start:
            raise ContractError(f"invalid span [{self.start}, {self.end})")
        if self.start == self.end and not self.replacement:
            raise ContractError(f"empty edit at point {self.start}: an insertion needs replacement tokens")

    @property
    def is_insertion(self) -> bool:
        return self.start == self.end

    def sort_key(self) -> tuple[int, int]:
        return (self.start, self.end)


def _check_compatible(edits: Sequence[EditSpan]) -> list[EditSpan]:
    ordered = sorted(edits, key=EditSpan.sort_key)
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.start < prev.end:
            raise EditOverlapError(f"edits overlap: {prev} and {cur}")
        if prev.is_insertion and cur.is_insertion and prev.start == cur.start:
            raise EditOverlapError(f"two insertions at the same point: {prev} and {cur}")
    return ordered


def apply_edits(source: Sequence[str], edits: Iterable[EditSpan]) -> TokenSeq:
    """Apply non-overlapping span edits to ``source`` as if simultaneously.

    The edit list may come in any order; any permutation of a valid list
    yields the same output.
    """
    src = tuple(source)
    ordered = _check_compatible(list(edits))
    for e in ordered:
        if e.end > len(src):
            raise SpanRangeError(f"edit {e} exceeds source length {len(src)}")
    out: list[str] = []
    cursor = 0
    for e in ordered:
        out.extend(src[cursor:e.start])
        out.extend(e.replacement)
        cursor = e.end
    out.extend(src[cursor:])
    return tuple(out)
