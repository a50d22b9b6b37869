"""The subword (scattered subsequence) order and the bottom half-level of
the hierarchy: shuffle ideals, upward closure, the membership test for
upward closed regular languages, and their canonical decomposition into a
union of shuffle ideals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    Alphabet,
    Dfa,
    Nfa,
    complement,
    determinize,
    equivalent,
    minimize,
    shortest_accepted_word,
    symmetric_difference,
)
from .errors import NotUpwardClosedError

__all__ = [
    "is_subword",
    "shuffle_ideal",
    "upward_closure",
    "is_level_one_half",
    "is_co_level_one_half",
    "IdealDecomposition",
    "decompose_level_half",
]


def is_subword(w: str, v: str) -> bool:
    """True when w occurs in v as a scattered subsequence.

    Letters must appear in order but need not be contiguous; the empty
    word is a subword of everything.  Greedy left-to-right matching.
    """
    letters = iter(v)
    return all(ch in letters for ch in w)


def shuffle_ideal(word: str, alphabet: Alphabet) -> Dfa:
    """Minimal automaton for the words containing ``word`` as a subword.

    State i means the first i letters of ``word`` have been matched; the
    final state is absorbing and accepting.  shuffle_ideal("", a) accepts
    every word over a.
    """
    for ch in word:
        alphabet.index(ch)
    n = len(word)
    width = len(alphabet)
    rows = []
    for i in range(n):
        advance = alphabet.index(word[i])
        rows.append(tuple(i + 1 if j == advance else i for j in range(width)))
    rows.append((n,) * width)
    return Dfa(alphabet, n + 1, tuple(rows), 0, frozenset({n}))


def upward_closure(dfa: Dfa) -> Dfa:
    """Minimal automaton for the words with some accepted word as a subword.

    A self-loop on every letter at every state lets the machine skip
    letters at will, so a word is accepted exactly when some subsequence of
    it was; determinize and minimize the result.
    """
    width = len(dfa.alphabet)
    delta = tuple(
        tuple(frozenset({dfa.delta[s][j], s}) for j in range(width))
        for s in range(dfa.n_states)
    )
    looped = Nfa(dfa.alphabet, dfa.n_states, delta, frozenset({dfa.start}), dfa.accepting)
    return minimize(determinize(looped))


def is_level_one_half(dfa: Dfa) -> bool:
    """Is the language a finite union of shuffle ideals?

    Equivalent to being upward closed, which is what is actually checked.
    """
    return equivalent(upward_closure(dfa), dfa)


def is_co_level_one_half(dfa: Dfa) -> bool:
    """Is the complement a finite union of shuffle ideals?"""
    return is_level_one_half(complement(dfa))


@dataclass(frozen=True)
class IdealDecomposition:
    """An upward closed language written as a union of shuffle ideals.

    ``words`` is an antichain under the subword order (no word embeds in
    another), sorted by length then alphabetically; two automata for the
    same language always decompose to the same value.
    """

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        for w in self.words:
            for v in self.words:
                if w != v and is_subword(w, v):
                    raise ValueError(
                        f"decomposition is not an antichain: {w!r} embeds in {v!r}"
                    )


def decompose_level_half(dfa: Dfa) -> IdealDecomposition:
    """Canonical shuffle-ideal decomposition of an upward closed language.

    The returned words are the subword-minimal members of the language:
    label sequences of simple start-to-accepting paths (loops contribute
    nothing once every letter may be skipped), pruned to an antichain.

    Raises NotUpwardClosedError, carrying a shortest counterexample word,
    when the language is not upward closed.
    """
    closed = upward_closure(dfa)
    if not equivalent(closed, dfa):
        witness = shortest_accepted_word(symmetric_difference(closed, dfa))
        raise NotUpwardClosedError(
            f"language is not upward closed: {witness!r} extends an accepted word "
            "but is not accepted",
            witness=witness,
        )

    machine = minimize(dfa)
    width = len(machine.alphabet)
    letters = machine.alphabet.letters
    found: set[str] = set()

    def walk(state: int, label: list[str], visited: set[int]) -> None:
        if state in machine.accepting:
            found.add("".join(label))
        for j in range(width):
            target = machine.delta[state][j]
            if target not in visited:
                label.append(letters[j])
                walk(target, label, visited | {target})
                label.pop()

    walk(machine.start, [], {machine.start})
    minimal = [w for w in found if not any(u != w and is_subword(u, w) for u in found)]
    minimal.sort(key=lambda w: (len(w), w))
    return IdealDecomposition(tuple(minimal))
