"""Edit-tag grammatical error correction toolkit.

Corrections are encoded as per-token edit tags ($KEEP, $DELETE, $APPEND_t,
$REPLACE_t, and token-general transforms), decoded by an iterative
predict/select/apply pipeline, combined across models by probability
averaging or quorum span voting, and evaluated with span-level F0.5.
Neural models stay outside the package: they communicate through matrix
files of tag probabilities, and a count-based baseline tagger makes the
whole system runnable end to end at desk scale.
"""

from .align import AlignmentOp, OpKind, align_tokens, alignment_backend, encode_tags, extract_edits
from .corpus import (
    M2Block,
    M2Edit,
    ParallelCorpus,
    filter_edit_free,
    read_m2,
    read_sentences,
    read_tsv_corpus,
    write_m2,
    write_sentences,
    write_tsv_corpus,
)
from .decode import CorrectionResult, Hyperparams, apply_tags, run_pipeline, select_tags
from .distill import DistillStats, distill
from .ensemble import (
    EnsembleMode,
    VoteTally,
    average_correct,
    average_distributions,
    ensemble_correct,
    majority_vote,
    tally_votes,
    vote_correct,
)
from .errors import (
    ContractError,
    EditKitError,
    EditOverlapError,
    FormatError,
    InapplicableTransformError,
    InputError,
    SpanRangeError,
    TagParseError,
)
from .matrix_io import read_matrix_file, write_matrix_file
from .score import ScoreReport, SentenceScore, f_beta, score_corpus, score_sentence
from .spans import EditSpan, TokenSeq, apply_edits, validate_tokens
from .tagger import BaselineTagger, MatrixTagger, TagDistribution, Tagger, train_baseline
from .tags import Tag, TagKind, TagSeq, format_tag, parse_tag
from .transforms import VerbLexicon, apply_transform, detect_transform
from .tune import TuneResult, tune_hyperparams
from .vocab import TagVocab, build_vocab, read_vocab_file, write_vocab_file

__version__ = "0.1.0"

__all__ = [
    "AlignmentOp",
    "BaselineTagger",
    "ContractError",
    "CorrectionResult",
    "DistillStats",
    "EditKitError",
    "EditOverlapError",
    "EditSpan",
    "EnsembleMode",
    "FormatError",
    "Hyperparams",
    "InapplicableTransformError",
    "InputError",
    "M2Block",
    "M2Edit",
    "MatrixTagger",
    "OpKind",
    "ParallelCorpus",
    "ScoreReport",
    "SentenceScore",
    "SpanRangeError",
    "Tag",
    "TagDistribution",
    "TagKind",
    "TagParseError",
    "TagSeq",
    "TagVocab",
    "Tagger",
    "TokenSeq",
    "TuneResult",
    "VerbLexicon",
    "VoteTally",
    "align_tokens",
    "alignment_backend",
    "apply_edits",
    "apply_tags",
    "apply_transform",
    "average_correct",
    "average_distributions",
    "build_vocab",
    "detect_transform",
    "distill",
    "encode_tags",
    "ensemble_correct",
    "extract_edits",
    "f_beta",
    "filter_edit_free",
    "format_tag",
    "majority_vote",
    "parse_tag",
    "read_m2",
    "read_matrix_file",
    "read_sentences",
    "read_tsv_corpus",
    "read_vocab_file",
    "run_pipeline",
    "score_corpus",
    "score_sentence",
    "select_tags",
    "tally_votes",
    "train_baseline",
    "tune_hyperparams",
    "validate_tokens",
    "vote_correct",
    "write_m2",
    "write_matrix_file",
    "write_sentences",
    "write_tsv_corpus",
    "write_vocab_file",
]
