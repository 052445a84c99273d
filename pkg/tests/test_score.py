import math
import random

import pytest

from gec_editkit import EditSpan, InputError, ScoreReport, f_beta, score_corpus, score_sentence

from gen import random_edit_list

A = EditSpan(0, 1, ("x",))
B = EditSpan(2, 3, ("y",))
C = EditSpan(4, 4, ("z",))


def test_f_beta_published_values():
    assert f_beta(62.49, 32.26, 0.5) == pytest.approx(52.63, abs=0.01)
    assert f_beta(84.44, 54.42, 0.5) == pytest.approx(76.05, abs=0.01)
    assert f_beta(80.70, 53.39, 0.5) == pytest.approx(73.21, abs=0.01)


def test_f_beta_symmetry_point():
    for x in (0.0, 0.25, 0.5, 37.5, 100.0):
        for beta in (0.5, 1.0, 2.0):
            assert f_beta(x, x, beta) == pytest.approx(x)


def test_f_beta_zero_convention():
    assert f_beta(0.0, 0.0, 0.5) == 0.0
    assert f_beta(1.0, 0.0, 0.5) == 0.0


def test_f_beta_monotone_in_each_argument():
    grid = [i / 10 for i in range(11)]
    for r in grid:
        values = [f_beta(p, r, 0.5) for p in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))
    for p in grid:
        values = [f_beta(p, r, 0.5) for r in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))


def test_f_half_weights_precision():
    grid = [i / 10 for i in range(1, 11)]
    for p in grid:
        for r in grid:
            if p > r:
                assert f_beta(p, r, 0.5) > f_beta(p, r, 1.0)


def test_score_sentence_exact_match():
    s = score_sentence([A, B], [[A, B]])
    assert (s.tp, s.fp, s.fn) == (2, 0, 0)


def test_score_sentence_partial():
    s = score_sentence([A], [[A, B]])
    assert (s.tp, s.fp, s.fn) == (1, 0, 1)


def test_score_sentence_picks_best_annotator():
    s = score_sentence([A], [[A], [B]])
    assert (s.tp, s.fp, s.fn, s.annotator) == (1, 0, 0, 0)
    s = score_sentence([B], [[A], [B]])
    assert (s.tp, s.fp, s.fn, s.annotator) == (1, 0, 0, 1)


def test_score_sentence_tie_goes_to_lower_annotator():
    s = score_sentence([A], [[A, B], [A, C]])
    assert s.annotator == 0
    s = score_sentence([], [[A], [B]])
    assert s.annotator == 0


def test_noop_annotator():
    # empty hypothesis against an explicit no-edit annotator is perfect
    s = score_sentence([], [[]])
    assert (s.tp, s.fp, s.fn) == (0, 0, 0)
    report = ScoreReport.from_counts(0, 0, 0)
    assert report.precision == report.recall == report.f_half == 1.0


def test_no_annotations_counts_as_one_empty_annotator():
    s = score_sentence([A], [])
    assert (s.tp, s.fp, s.fn, s.annotator) == (0, 1, 0, 0)


def test_score_corpus_micro_aggregation():
    report = score_corpus([[A, B], [A]], [[[A, B]], [[A, B]]])
    assert (report.tp, report.fp, report.fn) == (3, 0, 1)
    # worked micro-aggregation example: tp=2, fp=0, fn=1
    report = score_corpus([[A], [A]], [[[A, B]], [[A], [B]]])
    assert (report.tp, report.fp, report.fn) == (2, 0, 1)
    assert report.precision == pytest.approx(1.0)
    assert report.recall == pytest.approx(2 / 3)
    assert report.f_half == pytest.approx(0.909, abs=0.001)


def test_perfect_hypothesis_scores_one():
    gold = [[[A, B]], [[C]]]
    report = score_corpus([[A, B], [C]], gold)
    assert report.precision == report.recall == report.f_half == 1.0


def test_empty_hypothesis_convention():
    report = score_corpus([[], []], [[[A]], [[B]]])
    assert (report.precision, report.recall, report.f_half) == (1.0, 0.0, 0.0)


def test_sentence_count_mismatch():
    with pytest.raises(InputError):
        score_corpus([[A]], [[[A]], [[B]]])


def test_corpus_permutation_invariance():
    rng = random.Random(33)
    hyps, golds = [], []
    for _ in range(30):
        hyps.append(random_edit_list(rng, 8))
        golds.append([random_edit_list(rng, 8) for _ in range(rng.randint(1, 3))])
    base = score_corpus(hyps, golds)
    order = list(range(len(hyps)))
    rng.shuffle(order)
    shuffled = score_corpus([hyps[i] for i in order], [golds[i] for i in order])
    assert (base.tp, base.fp, base.fn) == (shuffled.tp, shuffled.fp, shuffled.fn)


def test_report_summary_format():
    report = ScoreReport.from_counts(2, 0, 1)
    assert report.summary() == "TP 2 FP 0 FN 1 P 100.00 R 66.67 F0.5 90.91"


def test_f_beta_matches_formula_on_grid():
    # direct re-derivation as an oracle
    for p in (0.1, 0.4, 0.9):
        for r in (0.2, 0.5, 1.0):
            for beta in (0.5, 1.0, 2.0):
                expected = (1 + beta**2) * p * r / (beta**2 * p + r)
                assert math.isclose(f_beta(p, r, beta), expected)
