import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from artifact import automaton as au
from artifact.track import (FoldSpec, TrainTrack, admissible_weights, fold, fold_matrix, legal_folds,
                            standardize, standardizing_word, validate)


def test_seeds_are_valid_and_standard():
    for seed in (au.seed_b3(), au.seed_b4(), au.seed_family(1), au.seed_family(4)):
        assert validate(seed) == []
        assert seed.is_standard()


def test_validate_reports_problems():
    bad = TrainTrack.build(3, [("a", "p0", "p1")], {"p0": ["a"], "p1": ["a"]})
    assert validate(bad)
    loop = TrainTrack.build(3, [("a", "p0", "p1"), ("b", "p1", "p2"), ("c", "p0", "p2")],
                            {"p0": ["c", "a"], "p1": ["a", "b"], "p2": ["b", "c"]})
    assert validate(loop)


def test_fold_b3():
    t = au.seed_b3()
    f, ok = fold(t, FoldSpec("a", "b", "p1"))
    assert ok and f.below
    st_ = standardize(f)
    assert st_.braid == (2,)
    assert st_.pi == ((0, 0), (2, 1), (1, 0))
    assert st_.track == t
    st2 = standardize(fold(t, FoldSpec("b", "a", "p1"))[0])
    assert st2.braid == (-1,)
    assert st2.pi == ((1, 0), (0, -1), (2, 0))


def test_obstructed_fold():
    t = au.seed_b4()
    # b ends at a trigon corner next to nothing on its left side
    f, ok = fold(t, FoldSpec("b", "a", "p1"))
    assert ok
    assert len(legal_folds(t)) >= 2


def test_fold_matrix():
    t = au.seed_b3()
    M = fold_matrix(FoldSpec("a", "b", "p1"), t)
    assert M.tolist() == [[1, 1], [0, 1]]


def test_standardizing_word():
    assert standardizing_word(2, 0) == (1, 2)
    assert standardizing_word(0, 2) == (-2, -1)
    assert standardizing_word(1, 2) == (-2,)


def test_serialization_roundtrip():
    t = au.seed_b4()
    assert TrainTrack.from_json(t.to_json()) == t
    d = json.loads(t.to_json())
    assert {e["kind"] for e in d["edges"]} == {"real", "infinitesimal"}


def test_admissible_weights_triangle_inequality():
    t = au.seed_b4()
    assert admissible_weights(t, {"a": 1, "b": 1, "c": 1, "d": 1})
    assert not admissible_weights(t, {"a": 1, "b": 5, "c": 1, "d": 1})
    with pytest.raises(ValueError):
        admissible_weights(t, {"a": 1})


B4_TRACKS = au.build(au.seed_b4()).vertices


@given(st.sampled_from(range(len(B4_TRACKS))), st.data())
@settings(max_examples=100, deadline=None)
def test_fold_preserves_admissibility(i, data):
    t = B4_TRACKS[i]
    w = {lab: data.draw(st.integers(0, 20)) for lab in t.labels}
    assume(admissible_weights(t, w))
    spec = data.draw(st.sampled_from(legal_folds(t)))
    M = fold_matrix(spec, t)
    new = standardize(fold(t, spec)[0]).track
    vec = [w[lab] for lab in t.labels]
    image = M.T.dot(vec)
    assert admissible_weights(new, dict(zip(t.labels, (int(x) for x in image))))
