import random

import pytest

from freegroups.whitehead import (
    SearchCapExceeded,
    is_free_factor,
    is_primitive,
    minimize_tuple,
    type_ii_move_count,
    whitehead_moves,
)
from freegroups.words import Alphabet, commutator, identity, iter_reduced_words

from conftest import random_reduced, w


def test_rank_one_moves():
    f1 = Alphabet("x")
    moves = whitehead_moves(f1)
    assert len(moves) == 2
    assert all(m.kind == "permutation" for m in moves)
    images = {m.images for m in moves}
    assert images == {(1,), (-1,)}


def test_move_counts(f2, f3):
    for alphabet, n in ((f2, 2), (f3, 3)):
        moves = whitehead_moves(alphabet)
        type_i = [m for m in moves if m.kind == "permutation"]
        type_ii = [m for m in moves if m.kind == "multiplier"]
        assert len(type_i) == 2**n * [1, 1, 2, 6][n]
        assert len(type_ii) == type_ii_move_count(n)
    assert type_ii_move_count(2) == 12
    assert type_ii_move_count(3) == 90


def test_nielsen_move_present(f2):
    # x -> x y, y -> y is the multiplier move (A = {x, y}, a = y).
    target = {"x": w(f2, "x y"), "y": w(f2, "y")}
    for move in whitehead_moves(f2, kinds="multiplier"):
        if all(move.apply(w(f2, name)) == img for name, img in target.items()):
            return
    raise AssertionError("Nielsen move x -> xy missing from move list")


def test_move_inverse_identity(f2):
    rng = random.Random(7)
    moves = whitehead_moves(f2)
    samples = [random_reduced(rng, f2, 8) for _ in range(20)]
    for move in moves:
        inverse = move.inverse()
        for word_ in samples:
            assert inverse.apply(move.apply(word_)) == word_
            assert move.apply(inverse.apply(word_)) == word_


def test_move_is_automorphism(f2):
    from freegroups.endos import is_automorphism_free

    for move in whitehead_moves(f2):
        assert is_automorphism_free(move.endomorphism())


def test_minimize_examples(f2):
    trace = minimize_tuple([w(f2, "x y")])
    assert trace.final_length == 1
    assert len(trace.final[0]) == 1

    trace = minimize_tuple([w(f2, "x")])
    assert trace.moves == ()
    assert trace.final == (w(f2, "x"),)

    trace = minimize_tuple([commutator(w(f2, "x"), w(f2, "y"))])
    assert trace.final_length == 4


def test_minimize_trace_replays(f2):
    rng = random.Random(13)
    for _ in range(30):
        words = tuple(random_reduced(rng, f2, 6) for _ in range(rng.randint(1, 3)))
        trace = minimize_tuple(words)
        current = list(trace.initial)
        total = sum(len(x) for x in current)
        for move in trace.moves:
            current = [move.apply(x) for x in current]
            new_total = sum(len(x) for x in current)
            assert new_total <= total
            total = new_total
        assert tuple(current) == trace.final


def test_is_primitive_examples(f2):
    assert is_primitive(w(f2, "x"), f2)
    assert is_primitive(w(f2, "x y"), f2)
    assert not is_primitive(commutator(w(f2, "x"), w(f2, "y")), f2)
    assert not is_primitive(w(f2, "x^2"), f2)
    assert not is_primitive(w(f2, "x^2 y^2"), f2)
    with pytest.raises(ValueError):
        is_primitive(identity(f2), f2)


def test_is_primitive_rank_one():
    f1 = Alphabet("x")
    assert is_primitive(w(f1, "x"), f1)
    assert is_primitive(w(f1, "x^-1"), f1)
    assert not is_primitive(w(f1, "x^2"), f1)


def test_is_free_factor_examples(f2):
    assert is_free_factor([w(f2, "x")], f2)
    assert not is_free_factor([w(f2, "x^2")], f2)
    assert is_free_factor([w(f2, "x"), w(f2, "y")], f2)
    assert is_free_factor([], f2)
    assert is_free_factor([w(f2, "y x y^-1")], f2)
    assert not is_free_factor([w(f2, "x^2"), w(f2, "y")], f2)


def test_is_free_factor_precondition(f2):
    with pytest.raises(ValueError):
        is_free_factor([w(f2, "x"), w(f2, "x^-1")], f2)
    with pytest.raises(ValueError):
        is_free_factor([w(f2, "x y"), w(f2, "x"), w(f2, "y")], f2)


def test_is_free_factor_cap(f2):
    with pytest.raises(SearchCapExceeded):
        is_free_factor([w(f2, "x^2 y^2")], f2, max_visited=1)


def test_primitive_iff_singleton_free_factor_small(f2):
    for word_ in iter_reduced_words(f2, 4, min_len=1):
        assert is_primitive(word_, f2) == is_free_factor([word_], f2)


def test_automorphism_invariance(f2):
    rng = random.Random(19)
    moves = whitehead_moves(f2)
    for _ in range(40):
        word_ = random_reduced(rng, f2, 6, min_len=1)
        image = word_
        for _ in range(rng.randint(1, 3)):
            image = rng.choice(moves).apply(image)
        if not image:
            continue
        assert is_primitive(word_, f2) == is_primitive(image, f2)
