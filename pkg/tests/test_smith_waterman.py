import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cueforge.errors import EmptyText
from cueforge.metrics import AlignmentScoring, normalized_similarity, smith_waterman

from oracles import sw_oracle

DEFAULTS = AlignmentScoring()


def test_perfect_match():
    assert smith_waterman("abc", "abc", DEFAULTS) == 6


def test_disjoint_alphabets():
    assert smith_waterman("abc", "xyz", DEFAULTS) == 0


def test_shared_substring():
    # Verified against the full-matrix oracle: "password" aligns for 8*2 = 16.
    assert sw_oracle("password1", "mypassword") == 16
    assert smith_waterman("password1", "mypassword", DEFAULTS) == 16


def test_empty_rejected():
    with pytest.raises(EmptyText):
        smith_waterman("", "abc", DEFAULTS)
    with pytest.raises(EmptyText):
        normalized_similarity("abc", "", DEFAULTS)


def test_scoring_validation():
    with pytest.raises(ValueError):
        AlignmentScoring(match=0)
    with pytest.raises(ValueError):
        AlignmentScoring(gap=1)


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="abc", min_size=1, max_size=6),
       st.text(alphabet="abc", min_size=1, max_size=6))
def test_matches_oracle_random(a, b):
    assert smith_waterman(a, b, DEFAULTS) == sw_oracle(a, b)


def test_symmetry_and_upper_bound_random_pairs():
    rnd = random.Random(123)
    alphabet = "abcdefgh XY"
    for _ in range(10_000):
        a = "".join(rnd.choices(alphabet, k=rnd.randint(1, 12)))
        b = "".join(rnd.choices(alphabet, k=rnd.randint(1, 12)))
        score = smith_waterman(a, b, DEFAULTS)
        assert score == smith_waterman(b, a, DEFAULTS)
        assert 0 <= score <= DEFAULTS.match * min(len(a), len(b))


@given(st.text(alphabet="abcdef", min_size=1, max_size=20))
def test_self_similarity_is_one(a):
    assert normalized_similarity(a, a, DEFAULTS) == 1.0


def test_normalized_known_value():
    assert normalized_similarity("password1", "mypassword", DEFAULTS) == pytest.approx(
        16 / (2 * 9.5)
    )


def test_normalized_disjoint_is_zero():
    assert normalized_similarity("aaa", "zzz", DEFAULTS) == 0.0


def test_nondefault_weights_match_oracle():
    scoring = AlignmentScoring(match=3, mismatch=-2, gap=-1)
    rnd = random.Random(5)
    for _ in range(500):
        a = "".join(rnd.choices("abcd", k=rnd.randint(1, 8)))
        b = "".join(rnd.choices("abcd", k=rnd.randint(1, 8)))
        assert smith_waterman(a, b, scoring) == sw_oracle(a, b, 3, -2, -1)
