"""Shared corpus builders and independent brute-force oracles for the tests.

The oracles here deliberately avoid the library's own algorithms: subword
checks go through explicit position subsets, language slices through
direct simulation, so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import random

from subseq.automata import Alphabet, Dfa

AB = Alphabet("ab")


def words_up_to(letters, n):
    """All words over ``letters`` of length at most n, shortest first."""
    out = []
    for length in range(n + 1):
        out.extend("".join(t) for t in itertools.product(letters, repeat=length))
    return out


def naive_is_subword(w, v):
    """Embedding check by trying every position subset of v."""
    return any(
        "".join(v[i] for i in positions) == w
        for positions in itertools.combinations(range(len(v)), len(w))
    )


def lang_slice(dfa, n, letters="ab"):
    """The words of length at most n that the automaton accepts."""
    return {w for w in words_up_to(letters, n) if dfa.accepts(w)}


def dfa_from_rows(rows, accepting, start=0, alphabet=AB):
    rows = tuple(tuple(r) for r in rows)
    return Dfa(alphabet, len(rows), rows, start, frozenset(accepting))


def random_dfa(rng: random.Random, n_states: int, alphabet=AB) -> Dfa:
    width = len(alphabet)
    rows = tuple(
        tuple(rng.randrange(n_states) for _ in range(width)) for _ in range(n_states)
    )
    accepting = frozenset(s for s in range(n_states) if rng.random() < 0.5)
    return Dfa(alphabet, n_states, rows, rng.randrange(n_states), accepting)


def all_dfas(n_states: int, alphabet=AB):
    """Every complete automaton on the given state count: all transition
    tables crossed with all accepting sets, start state 0."""
    width = len(alphabet)
    for flat in itertools.product(range(n_states), repeat=n_states * width):
        rows = tuple(
            flat[i * width : (i + 1) * width] for i in range(n_states)
        )
        for acc_bits in range(2**n_states):
            accepting = frozenset(s for s in range(n_states) if acc_bits >> s & 1)
            yield Dfa(alphabet, n_states, rows, 0, accepting)


def ab_star() -> Dfa:
    """Words alternating ab from scratch: (ab)(ab)...(ab) or empty."""
    return dfa_from_rows([(1, 2), (2, 0), (2, 2)], {0})


def ba_star() -> Dfa:
    return dfa_from_rows([(2, 1), (0, 2), (2, 2)], {0})


def single_word(word: str, alphabet=AB) -> Dfa:
    """Automaton accepting exactly {word}."""
    n = len(word)
    width = len(alphabet)
    sink = n + 1
    rows = []
    for i in range(n):
        advance = alphabet.index(word[i])
        rows.append(tuple(i + 1 if j == advance else sink for j in range(width)))
    rows.append((sink,) * width)
    rows.append((sink,) * width)
    return Dfa(alphabet, n + 2, tuple(rows), 0, frozenset({n}))


def mk_predicate(k: int, letter: str = "a"):
    """Membership predicate for the level-k witness language, straight
    from its arithmetic definition."""

    def member(word: str) -> bool:
        count = word.count(letter)
        if k % 2 == 1:
            return count % 2 == 1 or count > k
        return count % 2 == 1 and count <= k

    return member
