"""Deterministic generators with partial transition functions.

A generator recognizes the prefix-closed language of all words along which
its transition function stays defined.  Marked states are neutralized: every
public constructor re-marks exactly the reachable states, so the marked
language always coincides with the (prefix-closed) language.  The empty
language, which has no such representation, is carried by a dedicated
``recognizes_empty_language`` flag.

All values are immutable and safe to share across threads.
"""

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    ControllabilityConflictError,
    DeterminismError,
    ValidationError,
)

Word = tuple[str, ...]
EPSILON: Word = ()


def parse_word(text: str) -> Word:
    """Parse a dot-separated word; the empty string is the empty word."""
    if text in ("", "ε"):
        return EPSILON
    return tuple(text.split("."))


def format_word(word: Word) -> str:
    return ".".join(word) if word else "ε"


@dataclass(frozen=True)
class Alphabet:
    """An event set split into controllable and uncontrollable events."""

    events: frozenset[str]
    controllable: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "events", frozenset(self.events))
        object.__setattr__(self, "controllable", frozenset(self.controllable))
        for name in self.events:
            if not isinstance(name, str) or not name:
                raise ValidationError(f"invalid event name: {name!r}")
        extra = self.controllable - self.events
        if extra:
            raise ValidationError(
                f"controllable events not in the alphabet: {sorted(extra)}"
            )

    @property
    def uncontrollable(self) -> frozenset[str]:
        return self.events - self.controllable

    @cached_property
    def sorted_events(self) -> tuple[str, ...]:
        return tuple(sorted(self.events))

    def restrict(self, events: Iterable[str]) -> "Alphabet":
        """Sub-alphabet over ``events``, controllability inherited."""
        kept = frozenset(events)
        missing = kept - self.events
        if missing:
            raise ValidationError(f"unknown events: {sorted(missing)}")
        return Alphabet(kept, self.controllable & kept)

    def agrees_with(self, other: "Alphabet") -> bool:
        """True when shared events have the same controllability status."""
        shared = self.events & other.events
        return (self.controllable & shared) == (other.controllable & shared)


def union_alphabets(*alphabets: Alphabet) -> Alphabet:
    """Union of alphabets.  A shared event whose controllability status
    differs between two operands is an error, never a silent override."""
    events: set[str] = set()
    controllable: set[str] = set()
    for alpha in alphabets:
        for prev in alphabets:
            if prev is alpha:
                break
            if not prev.agrees_with(alpha):
                bad = sorted(
                    e
                    for e in prev.events & alpha.events
                    if (e in prev.controllable) != (e in alpha.controllable)
                )
                raise ControllabilityConflictError(
                    f"events {bad} are controllable in one alphabet and "
                    f"uncontrollable in another"
                )
        events |= alpha.events
        controllable |= alpha.controllable
    return Alphabet(frozenset(events), frozenset(controllable))


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of a decidable check, with a witness when it fails."""

    holds: bool
    counterexample: Word | None = None
    detail: str = ""

    def __post_init__(self):
        if not self.holds and self.counterexample is None:
            raise ValidationError("failing report requires a counterexample")

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True, eq=False)
class Generator:
    """A deterministic finite-state generator.

    States are canonical dense integers: 0 is the initial state, reachable
    states come first in breadth-first order (events sorted), unreachable
    states follow sorted by label.  Original state names are retained as
    display labels.  Do not instantiate directly; use ``make_generator`` or
    the other public constructors.
    """

    alphabet: Alphabet
    labels: tuple[str, ...]
    transitions: dict[tuple[int, str], int]
    initial: int
    marked: frozenset[int]
    reachable_count: int
    recognizes_empty_language: bool = False

    @property
    def num_states(self) -> int:
        return len(self.labels)

    @property
    def states(self) -> range:
        return range(len(self.labels))

    def step(self, state: int, event: str) -> int | None:
        return self.transitions.get((state, event))

    def run(self, word: Iterable[str]) -> int | None:
        """Extended transition function: the state after ``word``, or None."""
        state: int | None = self.initial
        for event in word:
            if event not in self.alphabet.events:
                raise ValidationError(f"event {event!r} not in the alphabet")
            state = self.transitions.get((state, event))
            if state is None:
                return None
        return state


def _canonicalize(
    alphabet: Alphabet,
    labels: list[str],
    transitions: dict[tuple[int, str], int],
    initial: int,
    empty: bool = False,
) -> Generator:
    """Rename states to canonical ids (BFS order from the initial state,
    then unreachable states by label) and mark the reachable set."""
    order = [initial]
    seen = {initial}
    queue = deque(order)
    while queue:
        state = queue.popleft()
        for event in alphabet.sorted_events:
            target = transitions.get((state, event))
            if target is not None and target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    reachable_count = len(order)
    order.extend(sorted(set(range(len(labels))) - seen, key=lambda i: labels[i]))
    remap = {old: new for new, old in enumerate(order)}
    new_transitions: dict[tuple[int, str], int] = {}
    for new_state, old_state in enumerate(order):
        for event in alphabet.sorted_events:
            target = transitions.get((old_state, event))
            if target is not None:
                new_transitions[(new_state, event)] = remap[target]
    marked = frozenset() if empty else frozenset(range(reachable_count))
    return Generator(
        alphabet=alphabet,
        labels=tuple(labels[old] for old in order),
        transitions=new_transitions,
        initial=0,
        marked=marked,
        reachable_count=reachable_count,
        recognizes_empty_language=empty,
    )


def make_generator(
    states: Iterable[str],
    alphabet: Alphabet,
    transitions: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]],
    initial: str,
    marked: Iterable[str] | None = None,
) -> Generator:
    """Validate and build a generator from named states.

    ``marked`` is accepted for interface completeness but is replaced by the
    reachable-state set (prefix-closed convention).  Raises
    ``DeterminismError`` for a duplicate (state, event) transition and
    ``ValidationError`` for references to unknown states or events.
    """
    names = list(states)
    if len(names) != len(set(names)):
        raise ValidationError("duplicate state names")
    if not names:
        raise ValidationError("a generator needs at least one state")
    for name in names:
        if not isinstance(name, str) or not name:
            raise ValidationError(f"invalid state name: {name!r}")
    index = {name: i for i, name in enumerate(names)}
    if initial not in index:
        raise ValidationError(f"unknown initial state: {initial!r}")
    for name in marked or ():
        if name not in index:
            raise ValidationError(f"unknown marked state: {name!r}")

    if isinstance(transitions, Mapping):
        triples = [(src, event, dst) for (src, event), dst in transitions.items()]
    else:
        triples = [tuple(t) for t in transitions]

    table: dict[tuple[int, str], int] = {}
    for src, event, dst in triples:
        if src not in index or dst not in index:
            raise ValidationError(f"transition {src!r}-{event!r}->{dst!r} "
                                  f"references an unknown state")
        if event not in alphabet.events:
            raise ValidationError(f"transition label {event!r} not in the alphabet")
        key = (index[src], event)
        if key in table and table[key] != index[dst]:
            raise DeterminismError(
                f"duplicate transition on ({src!r}, {event!r})"
            )
        table[key] = index[dst]
    return _canonicalize(alphabet, names, table, index[initial])


def empty_generator(alphabet: Alphabet) -> Generator:
    """The generator of the empty language over ``alphabet``."""
    return _canonicalize(alphabet, ["dead"], {}, 0, empty=True)


def universal_generator(alphabet: Alphabet) -> Generator:
    """One state, self-loops on every event: recognizes all of E*."""
    table = {(0, event): 0 for event in alphabet.sorted_events}
    return _canonicalize(alphabet, ["all"], table, 0)


def from_words(alphabet: Alphabet, words: Iterable[Word | str]) -> Generator:
    """Prefix-tree generator of the prefix closure of a finite word set."""
    parsed = [parse_word(w) if isinstance(w, str) else tuple(w) for w in words]
    for word in parsed:
        for event in word:
            if event not in alphabet.events:
                raise ValidationError(f"event {event!r} not in the alphabet")
    labels = ["ε"]
    table: dict[tuple[int, str], int] = {}
    nodes: dict[Word, int] = {EPSILON: 0}
    for word in sorted(parsed):
        for cut in range(1, len(word) + 1):
            prefix = word[:cut]
            if prefix not in nodes:
                nodes[prefix] = len(labels)
                labels.append(format_word(prefix))
                table[(nodes[prefix[:-1]], prefix[-1])] = nodes[prefix]
    return _canonicalize(alphabet, labels, table, 0)


def membership(g: Generator, word: Iterable[str]) -> bool:
    """True iff the word is in L(G), i.e. the run stays defined."""
    if g.recognizes_empty_language:
        for event in word:
            if event not in g.alphabet.events:
                raise ValidationError(f"event {event!r} not in the alphabet")
        return False
    return g.run(word) is not None


def trim_accessible(g: Generator) -> Generator:
    """Drop states unreachable from the initial state; language unchanged."""
    if g.reachable_count == g.num_states:
        return g
    keep = g.reachable_count
    table = {k: v for k, v in g.transitions.items() if k[0] < keep}
    return _canonicalize(
        g.alphabet, list(g.labels[:keep]), table, g.initial,
        empty=g.recognizes_empty_language,
    )


def reachable_events(g: Generator) -> frozenset[str]:
    """Events occurring on transitions of the accessible part of G."""
    if g.recognizes_empty_language:
        return frozenset()
    return frozenset(
        event for (state, event) in g.transitions if state < g.reachable_count
    )


def shortest_words(g: Generator, count: int) -> list[Word]:
    """The first ``count`` words of L(G) in shortest-then-lexicographic
    order (used for display; the language may be infinite)."""
    if g.recognizes_empty_language or count <= 0:
        return []
    out: list[Word] = []
    queue: deque[tuple[int, Word]] = deque([(g.initial, EPSILON)])
    while queue and len(out) < count:
        state, word = queue.popleft()
        out.append(word)
        for event in g.alphabet.sorted_events:
            target = g.step(state, event)
            if target is not None:
                queue.append((target, word + (event,)))
    return out
