"""Edit tags and their canonical text syntax.

A tag is one per-token edit operation: keep, delete, append a token after
the current one, replace the current token, or a token-general transform
(case change, noun number, verb form, merge with the next token, split on
hyphens).  The canonical strings ($KEEP, $APPEND_the, ...) are what vocab
files and debug dumps contain.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import TagParseError

CASE_VARIANTS = ("CAPITAL", "LOWER", "UPPER")
AGREEMENT_DIRECTIONS = ("SINGULAR", "PLURAL")


class TagKind(Enum):
    KEEP = "KEEP"
    DELETE = "DELETE"
    APPEND = "APPEND"
    REPLACE = "REPLACE"
    TRANSFORM_CASE = "TRANSFORM_CASE"
    TRANSFORM_AGREEMENT = "TRANSFORM_AGREEMENT"
    TRANSFORM_VERB = "TRANSFORM_VERB"
    MERGE = "MERGE"
    SPLIT_HYPHEN = "SPLIT_HYPHEN"
    UNKNOWN = "UNKNOWN"


TRANSFORM_KINDS = frozenset(
    {
        TagKind.TRANSFORM_CASE,
        TagKind.TRANSFORM_AGREEMENT,
        TagKind.TRANSFORM_VERB,
        TagKind.MERGE,
        TagKind.SPLIT_HYPHEN,
    }
)

_PAYLOAD_FREE = frozenset({TagKind.KEEP, TagKind.DELETE, TagKind.MERGE, TagKind.SPLIT_HYPHEN, TagKind.UNKNOWN})


def _valid_token(text: str) -> bool:
    return bool(text) and not any(ch.isspace() for ch in text)


@dataclass(frozen=True, slots=True)
class Tag:
    """One edit operation.

    ``payload`` holds the appended/replacement token, the case variant, the
    agreement direction, or the verb form-pair key, depending on ``kind``.
    """

    kind: TagKind
    payload: str | None = None

    def __post_init__(self) -> None:
        kind, payload = self.kind, self.payload
        if kind in _PAYLOAD_FREE:
            if payload is not None:
                raise ValueError(f"{kind.value} tag takes no payload, got {payload!r}")
        elif kind in (TagKind.APPEND, TagKind.REPLACE):
            if payload is None or not _valid_token(payload):
                raise ValueError(f"{kind.value} payload must be a non-empty whitespace-free token, got {payload!r}")
        elif kind is TagKind.TRANSFORM_CASE:
            if payload not in CASE_VARIANTS:
                raise ValueError(f"case variant must be one of {CASE_VARIANTS}, got {payload!r}")
        elif kind is TagKind.TRANSFORM_AGREEMENT:
            if payload not in AGREEMENT_DIRECTIONS:
                raise ValueError(f"agreement direction must be one of {AGREEMENT_DIRECTIONS}, got {payload!r}")
        elif kind is TagKind.TRANSFORM_VERB:
            if payload is None or not _valid_form_pair(payload):
                raise ValueError(
                    f"verb payload must be a FROM_TO form-pair key of two non-empty parts, got {payload!r}"
                )
        else:  # pragma: no cover - enum is closed
            raise ValueError(f"unhandled tag kind {kind!r}")

    @property
    def is_keep(self) -> bool:
        return self.kind is TagKind.KEEP


def _valid_form_pair(key: str) -> bool:
    parts = key.split("_")
    return len(parts) == 2 and all(p and not any(ch.isspace() for ch in p) for p in parts)


KEEP = Tag(TagKind.KEEP)
DELETE = Tag(TagKind.DELETE)
MERGE = Tag(TagKind.MERGE)
SPLIT_HYPHEN = Tag(TagKind.SPLIT_HYPHEN)
UNKNOWN = Tag(TagKind.UNKNOWN)


def append(token: str) -> Tag:
    return Tag(TagKind.APPEND, token)


def replace(token: str) -> Tag:
    return Tag(TagKind.REPLACE, token)


def case_transform(variant: str) -> Tag:
    return Tag(TagKind.TRANSFORM_CASE, variant)


def agreement_transform(direction: str) -> Tag:
    return Tag(TagKind.TRANSFORM_AGREEMENT, direction)


def verb_transform(form_pair: str) -> Tag:
    return Tag(TagKind.TRANSFORM_VERB, form_pair)


def format_tag(tag: Tag) -> str:
    """Render the unique canonical string for ``tag`` (parse_tag inverse)."""
    if tag.payload is None:
        return f"${tag.kind.value}"
    return f"${tag.kind.value}_{tag.payload}"


_BARE = {f"${k.value}": Tag(k) for k in _PAYLOAD_FREE}
# Families taking a payload, longest prefix first so TRANSFORM_CASE_ wins
# over a hypothetical shorter match.
_PREFIXED = [
    ("$TRANSFORM_AGREEMENT_", TagKind.TRANSFORM_AGREEMENT),
    ("$TRANSFORM_CASE_", TagKind.TRANSFORM_CASE),
    ("$TRANSFORM_VERB_", TagKind.TRANSFORM_VERB),
    ("$REPLACE_", TagKind.REPLACE),
    ("$APPEND_", TagKind.APPEND),
]


def parse_tag(text: str) -> Tag:
    """Parse a canonical tag string such as ``$REPLACE_goes``.

    Raises TagParseError naming the offending string when the input is not
    the canonical rendering of any tag.
    """
    if not text:
        raise TagParseError("empty tag string")
    bare = _BARE.get(text)
    if bare is not None:
        return bare
    for prefix, kind in _PREFIXED:
        if text.startswith(prefix):
            payload = text[len(prefix):]
            try:
                return Tag(kind, payload)
            except ValueError as exc:
                raise TagParseError(f"malformed tag {text!r}: {exc}") from None
    raise TagParseError(f"malformed tag {text!r}")


class TagSeq(tuple):
    """Tags aligned to [START] + tokens; index 0 is the sentinel START slot.

    START may only carry KEEP or APPEND (nothing precedes it, so no other
    operation is meaningful there).
    """

    __slots__ = ()

    def __new__(cls, tags) -> "TagSeq":
        seq = super().__new__(cls, tags)
        if not seq:
            raise ValueError("a tag sequence has at least the START position")
        for tag in seq:
            if not isinstance(tag, Tag):
                raise TypeError(f"expected Tag, got {tag!r}")
        if seq[0].kind not in (TagKind.KEEP, TagKind.APPEND):
            raise ValueError(f"START position only carries KEEP or APPEND, got {format_tag(seq[0])}")
        return seq

    @property
    def all_keep(self) -> bool:
        return all(tag.is_keep for tag in self)
