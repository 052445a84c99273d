"""Tag vocabularies: frequency-based construction and the vocab file format."""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import ContractError, FormatError
from .tags import DELETE, KEEP, UNKNOWN, Tag, TagKind, format_tag, parse_tag

if TYPE_CHECKING:
    from .spans import TokenSeq
    from .transforms import VerbLexicon

VOCAB_FILE_HEADER = "gec-editkit/vocab-v1"

MANDATORY_TAGS = (KEEP, DELETE, UNKNOWN)


@dataclass(frozen=True)
class TagVocab:
    """Bidirectional tag <-> index map of bounded size.

    KEEP sits at index 0 (so argmax ties favor no-edit); DELETE and UNKNOWN
    are always present.  The content hash identifies the vocab in matrix
    files and guards tagger/decoder agreement.
    """

    tags: tuple[Tag, ...]
    index: dict[Tag, int] = field(init=False, repr=False, compare=False)
    sha256: str = field(init=False, compare=False)
    _start_mask: tuple[bool, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.tags or self.tags[0] != KEEP:
            raise ContractError("vocab must start with $KEEP at index 0")
        index = {tag: i for i, tag in enumerate(self.tags)}
        if len(index) != len(self.tags):
            raise ContractError("vocab contains duplicate tags")
        for must in MANDATORY_TAGS:
            if must not in index:
                raise ContractError(f"vocab is missing mandatory tag {format_tag(must)}")
        digest = hashlib.sha256("\n".join(format_tag(t) for t in self.tags).encode("utf-8"))
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "sha256", digest.hexdigest())
        object.__setattr__(
            self,
            "_start_mask",
            tuple(t.kind in (TagKind.KEEP, TagKind.APPEND) for t in self.tags),
        )

    def __len__(self) -> int:
        return len(self.tags)

    def __contains__(self, tag: Tag) -> bool:
        return tag in self.index

    @property
    def keep_index(self) -> int:
        return 0

    @property
    def unknown_index(self) -> int:
        return self.index[UNKNOWN]

    def index_of(self, tag: Tag) -> int:
        """Index of ``tag``, mapping out-of-vocabulary tags to UNKNOWN."""
        return self.index.get(tag, self.index[UNKNOWN])

    def start_position_mask(self) -> tuple[bool, ...]:
        """True for indices selectable at the START position (KEEP/APPEND)."""
        return self._start_mask


def count_edit_tags(
    pairs: Iterable[tuple["TokenSeq", "TokenSeq"]],
    lexicon: "VerbLexicon | None" = None,
) -> Counter[Tag]:
    """Tag frequencies over all encoding passes run to convergence per pair.

    Multi-pass counting makes appends that hide behind other edits (deep
    insertions) show up in the counts.
    """
    from .align import encode_tags
    from .decode import apply_tags

    counts: Counter[Tag] = Counter()
    for source, target in pairs:
        cur = tuple(source)
        tgt = tuple(target)
        # len(tgt)+1 applies suffice to reach the target; one more encode
        # observes the all-KEEP fixed point.
        for _ in range(len(tgt) + 2):
            tags = encode_tags(cur, tgt, lexicon)
            counts.update(tags)
            if tags.all_keep:
                break
            cur = apply_tags(cur, tags, lexicon)
        else:
            if cur != tgt:  # pragma: no cover - encode/apply convergence is proven by tests
                raise RuntimeError(f"encoding did not converge for pair {source!r} -> {target!r}")
    return counts


def build_vocab(
    pairs: Sequence[tuple["TokenSeq", "TokenSeq"]],
    size_cap: int,
    lexicon: "VerbLexicon | None" = None,
) -> TagVocab:
    """Vocabulary of the most frequent edit tags, capped at ``size_cap``.

    Mandatory tags (KEEP, DELETE, UNKNOWN) are always included; remaining
    slots go to the highest-frequency tags, ties broken lexicographically by
    formatted tag so the result is stable across platforms.
    """
    if size_cap < len(MANDATORY_TAGS):
        raise ContractError(f"size_cap must be at least {len(MANDATORY_TAGS)}, got {size_cap}")
    counts = count_edit_tags(pairs, lexicon)
    candidates = [
        (-count, format_tag(tag), tag)
        for tag, count in counts.items()
        if tag not in MANDATORY_TAGS
    ]
    candidates.sort(key=lambda item: item[:2])
    picked = [tag for _, _, tag in candidates[: size_cap - len(MANDATORY_TAGS)]]
    return TagVocab(MANDATORY_TAGS + tuple(picked))


def write_vocab_file(path: str | Path, vocab: TagVocab) -> None:
    lines = [VOCAB_FILE_HEADER]
    lines.extend(format_tag(t) for t in vocab.tags)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_vocab_file(path: str | Path) -> TagVocab:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or lines[0] != VOCAB_FILE_HEADER:
        raise FormatError(f"missing vocab header {VOCAB_FILE_HEADER!r}", path=str(path), line=1)
    tags = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            tags.append(parse_tag(line))
        except Exception as exc:
            raise FormatError(str(exc), path=str(path), line=lineno) from None
    try:
        return TagVocab(tuple(tags))
    except ContractError as exc:
        raise FormatError(str(exc), path=str(path)) from None
