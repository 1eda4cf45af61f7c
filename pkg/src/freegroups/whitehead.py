"""Whitehead automorphisms, peak reduction, primitivity, free factors.

Two families of moves over a rank-n alphabet:

* type I: signed permutations of the generators (length preserving);
* type II: a multiplier letter ``a`` and a set ``A`` of letters with
  ``a in A`` and ``a^-1 not in A``; each generator x (other than the
  multiplier's) maps to ``x a``, ``a^-1 x``, ``a^-1 x a`` or ``x``
  according to whether x, x^-1 lie in A.

Peak reduction makes greedy length descent complete: a tuple not of
minimal total length in its automorphism orbit admits a single type-II
move that strictly shortens it, and minimal tuples in the same orbit are
connected through constant-length type-II chains.  Free-factor detection
therefore minimizes, then searches the constant-length orbit
breadth-first.  The search runs sequentially here; a parallel frontier
would only need the visited set to offer atomic insert-if-absent.  The orbit search stores exact word tuples (not cyclic
words) in its visited set; single-word primitivity minimizes cyclic
length, per standard practice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import stallings
from .words import Alphabet, Word, cyclically_reduce, free_reduce, letter_key


class SearchCapExceeded(RuntimeError):
    """Raised when the orbit search visits more tuples than its cap allows.

    Distinct from a negative answer: the search was inconclusive.
    """


@dataclass(frozen=True)
class WhiteheadMove:
    """One Whitehead automorphism, applicable to words over its alphabet."""

    alphabet: Alphabet
    kind: str  # "permutation" or "multiplier"
    # permutation: images[i] is the signed letter image of generator i+1.
    images: tuple[int, ...] = ()
    # multiplier: the multiplier letter and the affected letter set.
    multiplier: int = 0
    affected: frozenset[int] = frozenset()

    def letter_image(self, letter: int) -> tuple[int, ...]:
        if self.kind == "permutation":
            img = self.images[abs(letter) - 1]
            return (img,) if letter > 0 else (-img,)
        a = self.multiplier
        if abs(letter) == abs(a):
            return (letter,)
        g = abs(letter)
        in_a = g in self.affected
        inv_in_a = -g in self.affected
        if in_a and not inv_in_a:
            image = (g, a)
        elif inv_in_a and not in_a:
            image = (-a, g)
        elif in_a and inv_in_a:
            image = (-a, g, a)
        else:
            image = (g,)
        if letter > 0:
            return image
        return tuple(-l for l in reversed(image))

    def apply(self, w: Word) -> Word:
        if w.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch")
        out: list[int] = []
        for letter in w.letters:
            out.extend(self.letter_image(letter))
        return Word(self.alphabet, free_reduce(out), _reduced=True)

    def apply_letters(self, letters: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        for letter in letters:
            out.extend(self.letter_image(letter))
        return free_reduce(out)

    def inverse(self) -> "WhiteheadMove":
        if self.kind == "permutation":
            inv = [0] * len(self.images)
            for i, img in enumerate(self.images):
                inv[abs(img) - 1] = (i + 1) if img > 0 else -(i + 1)
            return WhiteheadMove(self.alphabet, "permutation", images=tuple(inv))
        a = self.multiplier
        affected = frozenset(self.affected - {a}) | {-a}
        return WhiteheadMove(self.alphabet, "multiplier", multiplier=-a, affected=affected)

    def endomorphism(self):
        """The underlying endomorphism (an automorphism of the free group)."""
        from .endos import Endomorphism

        images = {}
        for i, name in enumerate(self.alphabet.generators):
            images[name] = Word(self.alphabet, self.letter_image(i + 1), _reduced=True)
        return Endomorphism(self.alphabet, images)

    def __repr__(self) -> str:
        if self.kind == "permutation":
            body = ", ".join(
                f"{name}->{self._letter_str(img)}"
                for name, img in zip(self.alphabet.generators, self.images)
            )
            return f"WhiteheadMove(perm: {body})"
        letters = sorted(self.affected, key=letter_key)
        body = " ".join(self._letter_str(l) for l in letters)
        return f"WhiteheadMove(mult {self._letter_str(self.multiplier)}; A={{{body}}})"

    def _letter_str(self, letter: int) -> str:
        name = self.alphabet.letter_name(letter)
        return name if letter > 0 else name + "^-1"


def type_ii_move_count(rank: int) -> int:
    """Closed form: 2n multipliers, 2^(2n-2) - 1 nontrivial sets each."""
    if rank == 0:
        return 0
    return 2 * rank * (2 ** (2 * rank - 2) - 1)


def whitehead_moves(alphabet: Alphabet, kinds: str = "both") -> list[WhiteheadMove]:
    """The complete finite list of Whitehead moves, deterministically ordered."""
    if alphabet.rank == 0:
        raise ValueError("alphabet must be nonempty")
    moves: list[WhiteheadMove] = []
    n = alphabet.rank
    if kinds in ("both", "permutation"):
        for perm in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n):
                images = tuple(p * s for p, s in zip(perm, signs))
                moves.append(WhiteheadMove(alphabet, "permutation", images=images))
    if kinds in ("both", "multiplier"):
        all_letters = alphabet.letters()
        for a in all_letters:
            others = [l for l in all_letters if l != a and l != -a]
            for mask in range(1, 1 << len(others)):
                affected = frozenset(
                    [a] + [others[i] for i in range(len(others)) if mask >> i & 1]
                )
                moves.append(WhiteheadMove(alphabet, "multiplier", multiplier=a, affected=affected))
    return moves


@dataclass(frozen=True)
class MinimizationTrace:
    initial: tuple[Word, ...]
    final: tuple[Word, ...]
    moves: tuple[WhiteheadMove, ...]

    @property
    def final_length(self) -> int:
        return sum(len(w) for w in self.final)


def _total_length(words: Sequence[Word]) -> int:
    return sum(len(w) for w in words)


def _cyclic_length(words: Sequence[Word]) -> int:
    return sum(len(cyclically_reduce(w)[0]) for w in words)


def minimize_tuple(words: Sequence[Word]) -> MinimizationTrace:
    """Greedy descent: apply the first strictly shortening type-II move.

    Peak reduction guarantees the fixed point has globally minimal total
    length within the automorphism orbit.  Applying the recorded moves in
    order to the initial tuple reproduces the final tuple exactly.
    """
    words = tuple(words)
    if not words:
        return MinimizationTrace((), (), ())
    alphabet = words[0].alphabet
    moves = whitehead_moves(alphabet, kinds="multiplier")
    current = words
    applied: list[WhiteheadMove] = []
    while True:
        best = _total_length(current)
        for move in moves:
            candidate = tuple(move.apply(w) for w in current)
            if _total_length(candidate) < best:
                current = candidate
                applied.append(move)
                break
        else:
            return MinimizationTrace(words, current, tuple(applied))


def _minimize_cyclic(words: Sequence[Word]) -> MinimizationTrace:
    """Cyclic-length descent; words are replaced by their cyclic cores.

    The trace therefore tracks conjugacy classes, which is all the
    primitivity test needs.
    """
    words = tuple(cyclically_reduce(w)[0] for w in words)
    if not words:
        return MinimizationTrace((), (), ())
    alphabet = words[0].alphabet
    moves = whitehead_moves(alphabet, kinds="multiplier")
    current = words
    applied: list[WhiteheadMove] = []
    while True:
        best = _cyclic_length(current)
        for move in moves:
            candidate = tuple(cyclically_reduce(move.apply(w))[0] for w in current)
            if _cyclic_length(candidate) < best:
                current = candidate
                applied.append(move)
                break
        else:
            return MinimizationTrace(words, current, tuple(applied))


def is_primitive(w: Word, alphabet: Optional[Alphabet] = None) -> bool:
    """Whitehead's criterion: w is primitive iff its cyclic word minimizes to length 1."""
    if alphabet is not None and w.alphabet != alphabet:
        raise ValueError("alphabet mismatch")
    if not w:
        raise ValueError("the empty word is not a candidate for primitivity")
    trace = _minimize_cyclic((w,))
    return _cyclic_length(trace.final) == 1


def _is_basis_subtuple(words: tuple[Word, ...]) -> bool:
    gens = set()
    for w in words:
        if len(w) != 1:
            return False
        gens.add(abs(w.letters[0]))
    return len(gens) == len(words)


def is_free_factor(
    basis: Sequence[Word],
    alphabet: Alphabet,
    max_visited: int = 10**6,
) -> bool:
    """Decide whether the subgroup with the given basis is a free factor.

    The tuple is a free-factor basis iff its Aut(F)-orbit contains a
    subtuple of the standard basis.  After greedy minimization the orbit
    is searched breadth-first through constant-length type-II images; the
    target test ignores letter names and signs, which absorbs the type-I
    moves.  Raises SearchCapExceeded (inconclusive, not a "no") if the
    visited set would outgrow ``max_visited``.

    Raises ValueError when the words are not independent (the subgroup
    graph rank must equal the tuple length).
    """
    words = tuple(basis)
    for w in words:
        if w.alphabet != alphabet:
            raise ValueError("alphabet mismatch")
    if not words:
        return True
    graph = stallings.subgroup_graph(alphabet, words)
    if graph.rank() != len(words):
        raise ValueError("words are not an independent basis")
    trace = minimize_tuple(words)
    start = trace.final
    if _is_basis_subtuple(start):
        return True
    target_length = _total_length(start)
    if target_length < len(words):
        raise AssertionError("total length below tuple size is impossible")
    if target_length == len(words):
        # Every word has length 1 but generators repeat; not independent,
        # already excluded by the rank check above.
        return False
    moves = whitehead_moves(alphabet, kinds="multiplier")
    start_key = tuple(w.letters for w in start)
    visited = {start_key}
    frontier = [start]
    while frontier:
        next_frontier = []
        for tup in frontier:
            for move in moves:
                candidate = tuple(move.apply(w) for w in tup)
                if _total_length(candidate) != target_length:
                    continue
                key = tuple(w.letters for w in candidate)
                if key in visited:
                    continue
                if _is_basis_subtuple(candidate):
                    return True
                if len(visited) >= max_visited:
                    raise SearchCapExceeded(
                        f"orbit search cap of {max_visited} tuples exceeded"
                    )
                visited.add(key)
                next_frontier.append(candidate)
        frontier = next_frontier
    return False
