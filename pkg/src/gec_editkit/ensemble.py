"""Two ways to combine taggers: probability averaging and span voting.

Averaging needs every member to share one tag vocabulary and happens inside
the iterative decoding loop.  Span voting only needs each member's corrected
sentence, so members may differ in architecture and vocabulary size; an edit
is applied when at least ``n_min`` members propose the identical
(start, end, replacement) span.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .align import extract_edits
from .decode import Hyperparams, apply_tags, select_tags
from .errors import ContractError
from .spans import EditSpan, TokenSeq, apply_edits
from .tagger import TagDistribution, Tagger

if TYPE_CHECKING:
    from .transforms import VerbLexicon


class EnsembleMode(Enum):
    AVERAGE = "average"
    VOTE = "vote"


def average_distributions(dists: Sequence[TagDistribution]) -> TagDistribution:
    """Element-wise mean of rows and error probabilities.

    Members must agree on vocabulary and shape (span voting is the mode that
    tolerates mixed vocabularies).  Each element is averaged as
    min + sum(sorted deviations)/k, which makes the result independent of
    member order and reproduces a k-copy ensemble's distribution exactly.
    """
    if not dists:
        raise ContractError("need at least one distribution")
    head = dists[0]
    for i, d in enumerate(dists[1:], start=1):
        if d.vocab_id != head.vocab_id:
            raise ContractError(f"member {i} uses vocab {d.vocab_id[:12]}..., member 0 uses {head.vocab_id[:12]}...")
        if d.rows.shape != head.rows.shape:
            raise ContractError(f"member {i} has shape {d.rows.shape}, member 0 has {head.rows.shape}")
    rows = _orderless_mean([d.rows for d in dists])
    err = _orderless_mean([d.error_probs for d in dists])
    return TagDistribution(head.vocab_id, np.clip(rows, 0.0, 1.0), np.clip(err, 0.0, 1.0))


def _orderless_mean(arrays: list[np.ndarray]) -> np.ndarray:
    stack = np.stack(arrays)
    base = stack.min(axis=0)
    deviations = np.sort(stack - base, axis=0)
    return base + deviations.sum(axis=0) / len(arrays)


@dataclass(frozen=True)
class VoteTally:
    """Vote counts per exact edit span across ensemble members."""

    votes: dict[EditSpan, int]
    n_models: int

    def surviving(self, n_min: int) -> list[EditSpan]:
        """Edits with at least ``n_min`` votes, before conflict resolution; sorted."""
        picked = [e for e, v in self.votes.items() if v >= n_min]
        picked.sort(key=EditSpan.sort_key)
        return picked


def tally_votes(source: Sequence[str], model_outputs: Sequence[Sequence[str]]) -> VoteTally:
    votes: dict[EditSpan, int] = {}
    for output in model_outputs:
        for edit in extract_edits(source, output):
            votes[edit] = votes.get(edit, 0) + 1
    return VoteTally(votes, len(model_outputs))


def _conflicts(a: EditSpan, b: EditSpan) -> bool:
    lo, hi = (a, b) if (a.start, a.end) <= (b.start, b.end) else (b, a)
    if hi.start < lo.end:
        return True
    return a.is_insertion and b.is_insertion and a.start == b.start


def _resolve_conflicts(candidates: list[tuple[EditSpan, int]]) -> list[EditSpan]:
    # Strongest first: more votes, then earlier start, then shorter span,
    # then lexicographically smaller replacement.
    ranked = sorted(
        candidates,
        key=lambda item: (-item[1], item[0].start, item[0].end - item[0].start, item[0].replacement),
    )
    kept: list[EditSpan] = []
    for edit, _ in ranked:
        if not any(_conflicts(edit, other) for other in kept):
            kept.append(edit)
    kept.sort(key=EditSpan.sort_key)
    return kept


def majority_vote(
    source: Sequence[str],
    model_outputs: Sequence[Sequence[str]],
    n_min: int,
) -> list[EditSpan]:
    """Edits proposed identically by at least ``n_min`` members.

    Surviving edits that still overlap each other (possible across members)
    are resolved deterministically in favor of the higher vote count.
    """
    if not 1 <= n_min <= len(model_outputs):
        raise ContractError(f"n_min must lie in [1, {len(model_outputs)}], got {n_min}")
    tally = tally_votes(source, model_outputs)
    survivors = [(e, tally.votes[e]) for e in tally.surviving(n_min)]
    return _resolve_conflicts(survivors)


def average_correct(
    taggers: Sequence[Tagger],
    tokens: Sequence[str],
    hp: Hyperparams = Hyperparams(),
    lexicon: "VerbLexicon | None" = None,
) -> TokenSeq:
    """Iterative pipeline over the member-averaged distribution each pass."""
    if not taggers:
        raise ContractError("need at least one tagger")
    vocab = taggers[0].vocab
    for i, t in enumerate(taggers[1:], start=1):
        if t.vocab.sha256 != vocab.sha256:
            raise ContractError(f"member {i} uses a different tag vocabulary; averaging requires identical vocabs")
    cur = tuple(tokens)
    for _ in range(hp.max_iters):
        dist = average_distributions([t.predict(cur) for t in taggers])
        tags = select_tags(dist, vocab, hp.ac, hp.mep)
        if tags.all_keep:
            break
        cur = apply_tags(cur, tags, lexicon)
    return cur


def vote_correct(
    source: Sequence[str],
    model_outputs: Sequence[Sequence[str]],
    n_min: int,
) -> TokenSeq:
    """Apply the quorum's surviving edits to the source in one shot."""
    return apply_edits(source, majority_vote(source, model_outputs, n_min))


def ensemble_correct(
    source: Sequence[str],
    mode: EnsembleMode,
    hp: Hyperparams = Hyperparams(),
    taggers: Sequence[Tagger] | None = None,
    model_outputs: Sequence[Sequence[str]] | None = None,
    lexicon: "VerbLexicon | None" = None,
) -> TokenSeq:
    """Run either ensembling mode on one sentence.

    AVERAGE consumes live ``taggers`` (identical vocabs); VOTE consumes the
    members' already-corrected ``model_outputs`` and applies edits with at
    least ``hp.n_min`` votes.
    """
    if mode is EnsembleMode.AVERAGE:
        if taggers is None:
            raise ContractError("AVERAGE mode needs taggers")
        return average_correct(taggers, source, hp, lexicon)
    if model_outputs is None:
        raise ContractError("VOTE mode needs per-model pipeline outputs")
    return vote_correct(source, model_outputs, hp.n_min)
