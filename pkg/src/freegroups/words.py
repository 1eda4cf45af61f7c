"""Free-group word algebra over a finite ranked alphabet.

Letters are signed integers: generator ``i`` (0-based) is ``+(i + 1)``,
its inverse ``-(i + 1)``.  Words are stored freely reduced; every
operation is a pure function on immutable values, so concurrent use
needs no coordination.

Word syntax (used by :func:`parse_word` / :func:`format_word`): tokens
separated by whitespace, each token ``name`` or ``name^k`` for a nonzero
integer ``k``; the token ``1`` denotes the empty word.  Generator names
match ``[A-Za-z0-9_]+`` and the name ``1`` is reserved.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Optional

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")
_TOKEN_RE = re.compile(r"^([A-Za-z0-9_]+)(?:\^(-?\d+))?$")


class Alphabet:
    """Ordered list of distinct generator names.

    The order is significant: it indexes abelianization coordinates and
    fixes the canonical letter order (generator index ascending, positive
    before negative) used for deterministic tie-breaking everywhere.
    """

    __slots__ = ("generators", "_index")

    def __init__(self, generators: Iterable[str] | str):
        if isinstance(generators, str):
            generators = generators.split()
        gens = tuple(generators)
        seen = set()
        for name in gens:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad generator name {name!r}")
            if name == "1":
                raise ValueError("generator name '1' is reserved for the empty word")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
        self.generators = gens
        self._index = {name: i for i, name in enumerate(gens)}

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def letter(self, name: str, sign: int = 1) -> int:
        code = self.index(name) + 1
        return code if sign > 0 else -code

    def letter_name(self, letter: int) -> str:
        return self.generators[abs(letter) - 1]

    def letters(self) -> list[int]:
        """All 2n letters in canonical order: +1, -1, +2, -2, ..."""
        out = []
        for i in range(self.rank):
            out.append(i + 1)
            out.append(-(i + 1))
        return out

    def extend(self, name: str) -> "Alphabet":
        return Alphabet(self.generators + (name,))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(self.generators)!r})"


def letter_key(letter: int) -> tuple[int, int]:
    """Canonical letter order: generator index ascending, + before -."""
    return (abs(letter), 0 if letter > 0 else 1)


def free_reduce(seq: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a letter sequence (stack cancellation)."""
    out: list[int] = []
    push = out.append
    pop = out.pop
    for letter in seq:
        if out and out[-1] == -letter:
            pop()
        else:
            push(letter)
    return tuple(out)


class Word:
    """A freely reduced word.  Construction reduces its input letters."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = (), _reduced: bool = False):
        rank = alphabet.rank
        if _reduced:
            lets = letters if isinstance(letters, tuple) else tuple(letters)
        else:
            lets = tuple(letters)
            for letter in lets:
                if letter == 0 or abs(letter) > rank:
                    raise ValueError(f"letter {letter} out of range for rank {rank}")
            lets = free_reduce(lets)
        self.alphabet = alphabet
        self.letters = lets

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash((self.alphabet.generators, self.letters))

    def __mul__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        return Word(self.alphabet, free_reduce(self.letters + other.letters), _reduced=True)

    def __invert__(self) -> "Word":
        return Word(self.alphabet, tuple(-l for l in reversed(self.letters)), _reduced=True)

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word(self.alphabet, (), _reduced=True)
        base = self if n > 0 else ~self
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def conjugate_by(self, g: "Word") -> "Word":
        """g * self * g^-1."""
        return g * self * ~g

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


def word(alphabet: Alphabet, text: str) -> Word:
    """Shorthand for :func:`parse_word`."""
    return parse_word(alphabet, text)


def parse_word(alphabet: Alphabet, text: str) -> Word:
    letters: list[int] = []
    for token in text.split():
        if token == "1":
            continue
        m = _TOKEN_RE.match(token)
        if not m:
            raise ValueError(f"malformed word token {token!r}")
        name, exp = m.group(1), m.group(2)
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise ValueError(f"zero exponent in token {token!r}")
        code = alphabet.letter(name, 1 if k > 0 else -1)
        letters.extend([code] * abs(k))
    return Word(alphabet, letters)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts: list[str] = []
    i = 0
    lets = w.letters
    while i < len(lets):
        j = i
        while j < len(lets) and lets[j] == lets[i]:
            j += 1
        run = j - i
        name = w.alphabet.letter_name(lets[i])
        exp = run if lets[i] > 0 else -run
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return " ".join(parts)


def identity(alphabet: Alphabet) -> Word:
    return Word(alphabet, (), _reduced=True)


def commutator(a: Word, b: Word) -> Word:
    return a * b * ~a * ~b


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Return (core, conjugator) with w = conjugator * core * conjugator^-1.

    The core is cyclically reduced; the empty word maps to (1, 1).
    """
    lets = w.letters
    i, j = 0, len(lets)
    while j - i >= 2 and lets[i] == -lets[j - 1]:
        i += 1
        j -= 1
    core = Word(w.alphabet, lets[i:j], _reduced=True)
    conj = Word(w.alphabet, lets[:i], _reduced=True)
    return core, conj


def is_cyclically_reduced(w: Word) -> bool:
    lets = w.letters
    return len(lets) < 2 or lets[0] != -lets[-1]


def canonical_rotation(w: Word) -> Word:
    """Lexicographically least rotation of a cyclically reduced word."""
    lets = w.letters
    if len(lets) < 2:
        return w
    best = min(
        range(len(lets)),
        key=lambda k: tuple(letter_key(l) for l in lets[k:] + lets[:k]),
    )
    return Word(w.alphabet, lets[best:] + lets[:best], _reduced=True)


def is_conjugate(w1: Word, w2: Word) -> Optional[Word]:
    """Witness g with g * w1 * g^-1 == w2, or None.

    Two words are conjugate iff their cyclic cores are rotations of each
    other; the witness uses the smallest rotation offset, so it is
    deterministic.
    """
    if w1.alphabet != w2.alphabet:
        raise ValueError("alphabet mismatch")
    s1, c1 = cyclically_reduce(w1)
    s2, c2 = cyclically_reduce(w2)
    if len(s1) != len(s2):
        return None
    n = len(s1)
    if n == 0:
        return identity(w1.alphabet)
    for k in range(n):
        if s1.letters[k:] + s1.letters[:k] == s2.letters:
            g0 = () if k == 0 else s1.letters[k:]
            return Word(w1.alphabet, free_reduce(c2.letters + g0 + (~c1).letters), _reduced=True)
    return None


def _divisors(n: int) -> Iterator[int]:
    for d in range(1, n + 1):
        if n % d == 0:
            yield d


def extract_root(w: Word) -> tuple[Word, int]:
    """Maximal-exponent decomposition w = root^exponent; root is root-free.

    Runs over divisors of the cyclic-core length in increasing order, so
    the shortest period (hence maximal exponent) is found first.
    """
    if not w:
        raise ValueError("the empty word has no root")
    core, conj = cyclically_reduce(w)
    n = len(core)
    for d in _divisors(n):
        period = core.letters[:d]
        if period * (n // d) == core.letters:
            # Periodicity makes core and period share their last letter,
            # so the transported root below is already reduced.
            root = Word(
                w.alphabet,
                conj.letters + period + (~conj).letters,
                _reduced=True,
            )
            return root, n // d
    raise AssertionError("unreachable: every word is a power of itself")


def centralizer(w: Word) -> Word:
    """Generator of the centralizer of w: the transported root."""
    if not w:
        raise ValueError("the empty word has no cyclic centralizer generator")
    return extract_root(w)[0]


def power_of(w: Word, base: Word) -> Optional[int]:
    """The integer k with w == base^k, or None.

    Exact via root-free roots: nontrivial words are powers of a unique
    root-free word, so no search is needed.
    """
    if w.alphabet != base.alphabet:
        raise ValueError("alphabet mismatch")
    if not w:
        return 0
    if not base:
        return None
    root_b, exp_b = extract_root(base)
    root_w, exp_w = extract_root(w)
    if root_w == root_b:
        m = exp_w
    elif root_w == ~root_b:
        m = -exp_w
    else:
        return None
    if m % exp_b != 0:
        return None
    return m // exp_b


def abelianize(w: Word) -> tuple[int, ...]:
    """Exponent-sum vector, one coordinate per generator in alphabet order."""
    counts = [0] * w.alphabet.rank
    for letter in w.letters:
        counts[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(counts)


def iter_reduced_letter_tuples(rank: int, max_len: int, min_len: int = 0) -> Iterator[tuple[int, ...]]:
    """All reduced letter tuples, ordered by length then canonical letter order."""
    order = []
    for i in range(rank):
        order.append(i + 1)
        order.append(-(i + 1))
    if min_len <= 0:
        yield ()
    level: list[tuple[int, ...]] = [()]
    for length in range(1, max_len + 1):
        nxt = []
        for prefix in level:
            last = prefix[-1] if prefix else 0
            for letter in order:
                if letter != -last:
                    nxt.append(prefix + (letter,))
        level = nxt
        if length >= min_len:
            yield from level


def iter_reduced_words(alphabet: Alphabet, max_len: int, min_len: int = 0) -> Iterator[Word]:
    for lets in iter_reduced_letter_tuples(alphabet.rank, max_len, min_len):
        yield Word(alphabet, lets, _reduced=True)
