"""Definition-literal reference implementations on bounded word sets.

These exist for differential testing only: they evaluate the language
operations directly on explicit word sets, sharing no code with the
production constructions, and are deliberately naive.  Never use them on a
production path.
"""

from dataclasses import dataclass

from .automata import EPSILON, Generator, Word


@dataclass(frozen=True)
class BoundedLanguage:
    """A prefix-closed set of words of length at most ``bound``."""

    words: frozenset[Word]
    bound: int


def bounded_language(g: Generator, n: int) -> BoundedLanguage:
    """Exactly {w in L(G) : |w| <= n}, by exhaustive graph walk."""
    if n < 0:
        raise ValueError("bound must be nonnegative")
    if g.recognizes_empty_language:
        return BoundedLanguage(frozenset(), n)
    words: set[Word] = set()
    frontier: list[tuple[int, Word]] = [(g.initial, EPSILON)]
    for _ in range(n + 1):
        nxt: list[tuple[int, Word]] = []
        for state, word in frontier:
            words.add(word)
            for event in g.alphabet.sorted_events:
                target = g.step(state, event)
                if target is not None:
                    nxt.append((target, word + (event,)))
        frontier = nxt
    return BoundedLanguage(frozenset(words), n)


def erase(word: Word, target_events) -> Word:
    """The natural projection of one word: keep target events, erase the
    rest (P(a) = a or ε per letter, extended by concatenation)."""
    return tuple(event for event in word if event in target_events)


def brute_project(words, target_events) -> frozenset[Word]:
    """Image of a word set under the natural projection."""
    return frozenset(erase(word, frozenset(target_events)) for word in words)


def brute_product(ws1, e1, ws2, e2, n: int) -> frozenset[Word]:
    """Synchronous product on word sets: all words over E_1 ∪ E_2 of length
    at most n whose projections onto E_1 and E_2 lie in the operands.  Grown
    breadth-first; prefix closure of the operands makes the pruning exact."""
    e1 = frozenset(e1)
    e2 = frozenset(e2)
    ws1 = frozenset(map(tuple, ws1))
    ws2 = frozenset(map(tuple, ws2))
    alphabet = sorted(e1 | e2)

    def member(word: Word) -> bool:
        return erase(word, e1) in ws1 and erase(word, e2) in ws2

    out: set[Word] = set()
    frontier = [EPSILON] if member(EPSILON) else []
    for _ in range(n + 1):
        nxt = []
        for word in frontier:
            out.add(word)
            if len(word) == n:
                continue
            for event in alphabet:
                extended = word + (event,)
                if member(extended):
                    nxt.append(extended)
        frontier = nxt
    return frozenset(out)


def brute_sup_c(kw, lw, eu, n: int) -> frozenset[Word]:
    """Greatest fixpoint of controllability on bounded word sets: starting
    from K ∩ L, repeatedly delete any word with an uncontrollable
    continuation in L that has left the set, together with all its
    extensions.

    Boundary caveat: agreement with the exact synthesis is only guaranteed
    on words short enough that every relevant uncontrollable continuation is
    visible within the bound; compare at bound n - 2."""
    kw = frozenset(map(tuple, kw))
    lw = frozenset(map(tuple, lw))
    eu = sorted(frozenset(eu))
    current = set(kw & lw)
    while True:
        doomed = {
            word
            for word in current
            for event in eu
            if word + (event,) in lw and word + (event,) not in current
        }
        if not doomed:
            return frozenset(current)
        current = {
            word
            for word in current
            if not any(word[: len(bad)] == bad for bad in doomed)
        }
