import random

import pytest

from freegroups.words import Alphabet, Word, parse_word


@pytest.fixture
def f2():
    return Alphabet("x y")


@pytest.fixture
def f3():
    return Alphabet("x y z")


@pytest.fixture
def h_rank4():
    return Alphabet("a b u y")


def random_reduced(rng: random.Random, alphabet: Alphabet, max_len: int, min_len: int = 0) -> Word:
    length = rng.randint(min_len, max_len)
    letters: list[int] = []
    options = alphabet.letters()
    for _ in range(length):
        choices = [l for l in options if not letters or l != -letters[-1]]
        letters.append(rng.choice(choices))
    return Word(alphabet, tuple(letters), _reduced=True)


def random_raw_letters(rng: random.Random, rank: int, max_len: int) -> list[int]:
    length = rng.randint(0, max_len)
    return [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(length)]


def w(alphabet: Alphabet, text: str) -> Word:
    return parse_word(alphabet, text)
