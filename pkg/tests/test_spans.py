import random

import pytest

from gec_editkit import ContractError, EditOverlapError, EditSpan, SpanRangeError, apply_edits

from gen import random_edit_list, random_tokens


def test_single_substitution():
    assert apply_edits(("He", "go", "home"), [EditSpan(1, 2, ("goes",))]) == ("He", "goes", "home")


def test_single_insertion():
    assert apply_edits(("I", "like", "dog"), [EditSpan(2, 2, ("the",))]) == ("I", "like", "the", "dog")


def test_simultaneous_delete_and_replace():
    edits = [EditSpan(0, 1, ()), EditSpan(2, 3, ("d", "e"))]
    assert apply_edits(("a", "b", "c"), edits) == ("b", "d", "e")


def test_empty_edit_list_is_identity():
    rng = random.Random(7)
    for _ in range(50):
        src = random_tokens(rng, max_len=12)
        assert apply_edits(src, []) == src


def test_order_independence():
    rng = random.Random(13)
    for _ in range(200):
        src = random_tokens(rng, max_len=12)
        edits = random_edit_list(rng, len(src))
        expected = apply_edits(src, edits)
        shuffled = edits[:]
        rng.shuffle(shuffled)
        assert apply_edits(src, shuffled) == expected


def test_length_arithmetic():
    rng = random.Random(29)
    for _ in range(200):
        src = random_tokens(rng, max_len=12)
        edits = random_edit_list(rng, len(src))
        out = apply_edits(src, edits)
        delta = sum(len(e.replacement) - (e.end - e.start) for e in edits)
        assert len(out) == len(src) + delta


def test_overlapping_edits_rejected():
    with pytest.raises(EditOverlapError):
        apply_edits(("a", "b", "c"), [EditSpan(0, 2, ("x",)), EditSpan(1, 3, ("y",))])


def test_two_insertions_at_same_point_rejected():
    with pytest.raises(EditOverlapError):
        apply_edits(("a", "b"), [EditSpan(1, 1, ("x",)), EditSpan(1, 1, ("y",))])


def test_insertion_inside_span_rejected():
    with pytest.raises(EditOverlapError):
        apply_edits(("a", "b", "c"), [EditSpan(0, 2, ("x",)), EditSpan(1, 1, ("y",))])


def test_insertion_at_span_boundaries_allowed():
    edits = [EditSpan(1, 1, ("x",)), EditSpan(1, 3, ("y",))]
    assert apply_edits(("a", "b", "c"), edits) == ("a", "x", "y")
    edits = [EditSpan(0, 1, ("y",)), EditSpan(1, 1, ("z",))]
    assert apply_edits(("a", "b"), edits) == ("y", "z", "b")


def test_out_of_bounds_rejected():
    with pytest.raises(SpanRangeError):
        apply_edits(("a",), [EditSpan(0, 2, ("x",))])


def test_edit_span_invariants():
    with pytest.raises(ContractError):
        EditSpan(2, 1, ("x",))
    with pytest.raises(ContractError):
        EditSpan(-1, 0, ("x",))
    with pytest.raises(ContractError):
        EditSpan(1, 1, ())  # empty insertion
    with pytest.raises(ContractError):
        EditSpan(0, 1, ("two words",))
