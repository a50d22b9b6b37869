"""Finite-automaton algebra everything else is built on: ordered alphabets,
complete deterministic automata, nondeterministic automata, and the classic
constructions (subset construction, canonical minimization, boolean
products, reversal, emptiness, equivalence, state distinguishability).

Deterministic automata are complete by construction: the transition table
is dense, so completeness is structural, and every operation returns a
machine that is still complete.  Minimization renumbers states
breadth-first from the start state following alphabet order, which makes
equal languages minimize to structurally identical values; golden tests
rely on that.

All types are immutable after construction and operations are pure
functions, so values can be shared freely between threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .errors import AlphabetMismatchError, InputError

__all__ = [
    "Alphabet",
    "Dfa",
    "Nfa",
    "determinize",
    "minimize",
    "product",
    "complement",
    "intersection",
    "union",
    "difference",
    "symmetric_difference",
    "reverse",
    "reverse_det",
    "is_empty",
    "shortest_accepted_word",
    "equivalent",
    "distinguishable_pairs",
    "distinguishing_words",
    "empty_language",
    "universal_language",
]


class Alphabet:
    """Ordered, duplicate-free collection of single-character letters.

    Iteration order is the declared order; it drives state numbering and
    witness tie-breaking everywhere, so it is part of the value.
    """

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]) -> None:
        letters = tuple(letters)
        if not letters:
            raise InputError("alphabet must contain at least one letter")
        index: dict[str, int] = {}
        for i, ch in enumerate(letters):
            if not isinstance(ch, str) or len(ch) != 1 or not ch.isprintable():
                raise InputError(f"alphabet letter {ch!r} is not a single printable character")
            if ch in index:
                raise InputError(f"duplicate alphabet letter {ch!r}")
            index[ch] = i
        self.letters = letters
        self._index = index

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise InputError(
                f"letter {letter!r} is not in alphabet {''.join(self.letters)!r}"
            ) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, letter: object) -> bool:
        return letter in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.letters)!r})"


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic finite automaton.

    ``delta[s][j]`` is the successor of state ``s`` on the j-th letter of
    the alphabet; the table has one row per state and one column per
    letter, so there is no way to leave a transition undefined.
    """

    alphabet: Alphabet
    n_states: int
    delta: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        if self.n_states < 1:
            raise InputError("automaton needs at least one state")
        if len(self.delta) != self.n_states:
            raise InputError("transition table must have one row per state")
        width = len(self.alphabet)
        for s, row in enumerate(self.delta):
            if len(row) != width:
                raise InputError(f"state {s}: transition row must cover every letter")
            for t in row:
                if not 0 <= t < self.n_states:
                    raise InputError(f"state {s}: transition target {t} out of range")
        if not 0 <= self.start < self.n_states:
            raise InputError(f"start state {self.start} out of range")
        for s in self.accepting:
            if not 0 <= s < self.n_states:
                raise InputError(f"accepting state {s} out of range")

    def step(self, state: int, letter: str) -> int:
        return self.delta[state][self.alphabet.index(letter)]

    def run(self, word: str, start: int | None = None) -> int:
        """State reached from ``start`` (default: the start state) on ``word``."""
        state = self.start if start is None else start
        index = self.alphabet.index
        delta = self.delta
        for ch in word:
            state = delta[state][index(ch)]
        return state

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic finite automaton with a set of start states.

    Transition sets may be empty; there is no completeness requirement.
    """

    alphabet: Alphabet
    n_states: int
    delta: tuple[tuple[frozenset[int], ...], ...]
    starts: frozenset[int]
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        if self.n_states < 1:
            raise InputError("automaton needs at least one state")
        if len(self.delta) != self.n_states:
            raise InputError("transition table must have one row per state")
        width = len(self.alphabet)
        for s, row in enumerate(self.delta):
            if len(row) != width:
                raise InputError(f"state {s}: transition row must cover every letter")
            for targets in row:
                for t in targets:
                    if not 0 <= t < self.n_states:
                        raise InputError(f"state {s}: transition target {t} out of range")
        for s in self.starts | self.accepting:
            if not 0 <= s < self.n_states:
                raise InputError(f"state {s} out of range")

    def accepts(self, word: str) -> bool:
        current = set(self.starts)
        for ch in word:
            j = self.alphabet.index(ch)
            current = {t for s in current for t in self.delta[s][j]}
            if not current:
                return False
        return any(s in self.accepting for s in current)


def _require_same_alphabet(d1: Dfa, d2: Dfa) -> None:
    if d1.alphabet != d2.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {d1.alphabet!r} vs {d2.alphabet!r}"
        )


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction, materializing only reachable subsets.

    State sets are handled as bit masks; the empty subset doubles as the
    sink, so the result is complete even when the input has dead moves or
    no start state at all.  Subsets are numbered in discovery order
    (breadth-first, letters in alphabet order), which is deterministic.
    """
    width = len(nfa.alphabet)
    move = [[0] * width for _ in range(nfa.n_states)]
    for s in range(nfa.n_states):
        for j in range(width):
            mask = 0
            for t in nfa.delta[s][j]:
                mask |= 1 << t
            move[s][j] = mask
    accept_mask = 0
    for s in nfa.accepting:
        accept_mask |= 1 << s
    start_mask = 0
    for s in nfa.starts:
        start_mask |= 1 << s

    ids = {start_mask: 0}
    subsets = [start_mask]
    rows: list[tuple[int, ...]] = []
    queue = deque([start_mask])
    while queue:
        mask = queue.popleft()
        row = []
        for j in range(width):
            target = 0
            remaining = mask
            while remaining:
                low = remaining & -remaining
                target |= move[low.bit_length() - 1][j]
                remaining ^= low
            if target not in ids:
                ids[target] = len(subsets)
                subsets.append(target)
                queue.append(target)
            row.append(ids[target])
        rows.append(tuple(row))
    accepting = frozenset(i for i, m in enumerate(subsets) if m & accept_mask)
    return Dfa(nfa.alphabet, len(subsets), tuple(rows), 0, accepting)


def minimize(dfa: Dfa) -> Dfa:
    """Language-equivalent minimal automaton in canonical form.

    Partition refinement over the reachable states, then a breadth-first
    renumbering from the start state with letters in alphabet order.
    Idempotent, and two inputs with the same language come out structurally
    equal.
    """
    width = len(dfa.alphabet)
    order = [dfa.start]
    seen = {dfa.start}
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for j in range(width):
            t = dfa.delta[s][j]
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)

    block = {s: 1 if s in dfa.accepting else 0 for s in order}
    n_blocks = len(set(block.values()))
    while True:
        signatures: dict[tuple, int] = {}
        refined: dict[int, int] = {}
        for s in order:
            sig = (block[s], tuple(block[dfa.delta[s][j]] for j in range(width)))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            refined[s] = signatures[sig]
        block = refined
        if len(signatures) == n_blocks:
            break
        n_blocks = len(signatures)

    representative: dict[int, int] = {}
    for s in order:
        representative.setdefault(block[s], s)

    canonical = {block[dfa.start]: 0}
    block_order = [block[dfa.start]]
    rows = []
    queue = deque(block_order)
    while queue:
        b = queue.popleft()
        rep = representative[b]
        row = []
        for j in range(width):
            tb = block[dfa.delta[rep][j]]
            if tb not in canonical:
                canonical[tb] = len(block_order)
                block_order.append(tb)
                queue.append(tb)
            row.append(canonical[tb])
        rows.append(tuple(row))
    accepting = frozenset(
        canonical[b] for b in block_order if representative[b] in dfa.accepting
    )
    return Dfa(dfa.alphabet, len(block_order), tuple(rows), 0, accepting)


def product(d1: Dfa, d2: Dfa, combine: Callable[[bool, bool], bool]) -> Dfa:
    """Boolean product: accepts w exactly when combine(w in L1, w in L2).

    Only state pairs reachable from the joint start are materialized.
    """
    _require_same_alphabet(d1, d2)
    width = len(d1.alphabet)
    start = (d1.start, d2.start)
    ids = {start: 0}
    pairs = [start]
    rows = []
    queue = deque(pairs)
    while queue:
        p, q = queue.popleft()
        row = []
        for j in range(width):
            target = (d1.delta[p][j], d2.delta[q][j])
            if target not in ids:
                ids[target] = len(pairs)
                pairs.append(target)
                queue.append(target)
            row.append(ids[target])
        rows.append(tuple(row))
    accepting = frozenset(
        i
        for i, (p, q) in enumerate(pairs)
        if combine(p in d1.accepting, q in d2.accepting)
    )
    return Dfa(d1.alphabet, len(pairs), tuple(rows), 0, accepting)


def intersection(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda a, b: a and b)


def union(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda a, b: a or b)


def difference(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda a, b: a and not b)


def symmetric_difference(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda a, b: a != b)


def complement(dfa: Dfa) -> Dfa:
    """Same machine with the accepting set inverted."""
    accepting = frozenset(range(dfa.n_states)) - dfa.accepting
    return Dfa(dfa.alphabet, dfa.n_states, dfa.delta, dfa.start, accepting)


def reverse(dfa: Dfa) -> Nfa:
    """Edge-reversed machine: accepts exactly the mirror images."""
    width = len(dfa.alphabet)
    backward: list[list[set[int]]] = [
        [set() for _ in range(width)] for _ in range(dfa.n_states)
    ]
    for s in range(dfa.n_states):
        for j in range(width):
            backward[dfa.delta[s][j]][j].add(s)
    delta = tuple(tuple(frozenset(cell) for cell in row) for row in backward)
    return Nfa(dfa.alphabet, dfa.n_states, delta, frozenset(dfa.accepting), frozenset({dfa.start}))


def reverse_det(dfa: Dfa) -> Dfa:
    """Canonical minimal automaton for the reversed language."""
    return minimize(determinize(reverse(dfa)))


def is_empty(auto: Dfa | Nfa) -> bool:
    """True when no accepting state is reachable from the start state(s)."""
    is_dfa = isinstance(auto, Dfa)
    frontier = [auto.start] if is_dfa else list(auto.starts)
    accepting = auto.accepting
    if any(s in accepting for s in frontier):
        return False
    seen = set(frontier)
    width = len(auto.alphabet)
    while frontier:
        next_frontier = []
        for s in frontier:
            row = auto.delta[s]
            for j in range(width):
                targets = (row[j],) if is_dfa else row[j]
                for t in targets:
                    if t not in seen:
                        if t in accepting:
                            return False
                        seen.add(t)
                        next_frontier.append(t)
        frontier = next_frontier
    return True


def shortest_accepted_word(auto: Dfa | Nfa) -> str | None:
    """Shortest accepted word, length ties broken in alphabet order.

    None when the language is empty.
    """
    is_dfa = isinstance(auto, Dfa)
    letters = auto.alphabet.letters
    width = len(letters)
    accepting = auto.accepting
    starts = [auto.start] if is_dfa else sorted(auto.starts)

    parent: dict[int, tuple[int, str] | None] = {}
    queue: deque[int] = deque()
    for s in starts:
        if s not in parent:
            parent[s] = None
            queue.append(s)

    def build(state: int) -> str:
        parts = []
        link = parent[state]
        while link is not None:
            prev, ch = link
            parts.append(ch)
            link = parent[prev]
        return "".join(reversed(parts))

    for s in starts:
        if s in accepting:
            return ""
    while queue:
        s = queue.popleft()
        row = auto.delta[s]
        for j in range(width):
            targets = (row[j],) if is_dfa else sorted(row[j])
            for t in targets:
                if t not in parent:
                    parent[t] = (s, letters[j])
                    if t in accepting:
                        return build(t)
                    queue.append(t)
    return None


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    """Language equality, via emptiness of the symmetric difference."""
    return is_empty(symmetric_difference(d1, d2))


def distinguishing_words(dfa: Dfa) -> dict[tuple[int, int], str]:
    """A separating word for every distinguishable unordered state pair.

    Keys are pairs (p, q) with p < q; the word's runs from p and from q
    disagree on acceptance.  Computed backward from the pairs already
    separated by the empty word, so the recorded words are short.
    """
    width = len(dfa.alphabet)
    letters = dfa.alphabet.letters
    predecessors: list[list[list[int]]] = [
        [[] for _ in range(width)] for _ in range(dfa.n_states)
    ]
    for s in range(dfa.n_states):
        for j in range(width):
            predecessors[dfa.delta[s][j]][j].append(s)

    words: dict[tuple[int, int], str] = {}
    queue: deque[tuple[int, int]] = deque()
    for p in range(dfa.n_states):
        for q in range(p + 1, dfa.n_states):
            if (p in dfa.accepting) != (q in dfa.accepting):
                words[(p, q)] = ""
                queue.append((p, q))
    while queue:
        p, q = queue.popleft()
        suffix = words[(p, q)]
        for j in range(width):
            for a in predecessors[p][j]:
                for b in predecessors[q][j]:
                    if a == b:
                        continue
                    pair = (a, b) if a < b else (b, a)
                    if pair not in words:
                        words[pair] = letters[j] + suffix
                        queue.append(pair)
    return words


def distinguishable_pairs(dfa: Dfa) -> set[tuple[int, int]]:
    """Unordered pairs (p, q), p < q, separated by some word."""
    return set(distinguishing_words(dfa))


def empty_language(alphabet: Alphabet) -> Dfa:
    width = len(alphabet)
    return Dfa(alphabet, 1, ((0,) * width,), 0, frozenset())


def universal_language(alphabet: Alphabet) -> Dfa:
    width = len(alphabet)
    return Dfa(alphabet, 1, ((0,) * width,), 0, frozenset({0}))
