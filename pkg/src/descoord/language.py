"""Language operations on generators: synchronous product, natural
projection, inverse projection, and decidable comparisons.

Everything here is a pure function returning canonical generators, so
identical inputs always produce identical automata (state order included).
Counterexamples from the comparison checks are shortest, ties broken by
lexicographic event order.
"""

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .automata import (
    EPSILON,
    Alphabet,
    Generator,
    PropertyReport,
    Word,
    _canonicalize,
    empty_generator,
    union_alphabets,
)
from .errors import AlphabetMismatchError, ValidationError


@dataclass(frozen=True)
class ProjectionSpec:
    """A natural projection: erase every event outside ``target_events``."""

    source: Alphabet
    target_events: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "target_events", frozenset(self.target_events))
        missing = self.target_events - self.source.events
        if missing:
            raise ValidationError(
                f"projection target events not in the source alphabet: "
                f"{sorted(missing)}"
            )

    @property
    def target_alphabet(self) -> Alphabet:
        return self.source.restrict(self.target_events)

    @property
    def hidden_events(self) -> frozenset[str]:
        return self.source.events - self.target_events


@dataclass(frozen=True)
class CoordinationScheme:
    """The event-set triple (E_1, E_2, E_k) of a coordination architecture,
    with the derived sets E_{1+k}, E_{2+k} and E = E_1 ∪ E_2 ∪ E_k."""

    e1: Alphabet
    e2: Alphabet
    ek: Alphabet

    def __post_init__(self):
        # Raises on any controllability disagreement between the three.
        union_alphabets(self.e1, self.e2, self.ek)

    @cached_property
    def e1k(self) -> Alphabet:
        return union_alphabets(self.e1, self.ek)

    @cached_property
    def e2k(self) -> Alphabet:
        return union_alphabets(self.e2, self.ek)

    @cached_property
    def full(self) -> Alphabet:
        return union_alphabets(self.e1, self.e2, self.ek)


def _require_same_alphabet(g1: Generator, g2: Generator, what: str) -> None:
    if g1.alphabet != g2.alphabet:
        raise AlphabetMismatchError(f"{what} requires generators over the "
                                    f"same alphabet")


def widen_alphabet(g: Generator, superset: Alphabet) -> Generator:
    """Reinterpret L(G) over a larger alphabet.  The word set is unchanged:
    the new events never occur (contrast with ``inverse_project``, which
    lets them interleave freely)."""
    if not g.alphabet.events <= superset.events:
        raise AlphabetMismatchError("superset alphabet does not contain the "
                                    "generator's events")
    union_alphabets(g.alphabet, superset)
    if g.recognizes_empty_language:
        return empty_generator(superset)
    return _canonicalize(superset, list(g.labels), dict(g.transitions), g.initial)


def sync_product(g1: Generator, g2: Generator) -> Generator:
    """Synchronous product: shared events move together, private events
    interleave.  Recognizes P_1^{-1}(L(G_1)) ∩ P_2^{-1}(L(G_2)) over the
    union alphabet.  The result is trim."""
    merged = union_alphabets(g1.alphabet, g2.alphabet)
    if g1.recognizes_empty_language or g2.recognizes_empty_language:
        return empty_generator(merged)
    in1 = g1.alphabet.events
    in2 = g2.alphabet.events

    start = (g1.initial, g2.initial)
    ids: dict[tuple[int, int], int] = {start: 0}
    labels = [f"({g1.labels[start[0]]},{g2.labels[start[1]]})"]
    table: dict[tuple[int, str], int] = {}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        q1, q2 = pair
        for event in merged.sorted_events:
            t1 = g1.step(q1, event) if event in in1 else q1
            t2 = g2.step(q2, event) if event in in2 else q2
            if t1 is None or t2 is None:
                continue
            nxt = (t1, t2)
            if nxt not in ids:
                ids[nxt] = len(labels)
                labels.append(f"({g1.labels[t1]},{g2.labels[t2]})")
                queue.append(nxt)
            table[(ids[pair], event)] = ids[nxt]
    return _canonicalize(merged, labels, table, 0)


def project(g: Generator, spec: ProjectionSpec) -> Generator:
    """Natural projection of L(G) onto the target events: erase hidden
    transitions, then determinize by subset construction.  Subset states are
    canonically encoded (sorted member ids), so identical runs produce
    identical automata.  The result is deterministic and trim."""
    if spec.source != g.alphabet:
        raise AlphabetMismatchError("projection source must equal the "
                                    "generator's alphabet")
    target = spec.target_alphabet
    if g.recognizes_empty_language:
        return empty_generator(target)
    hidden = spec.hidden_events

    def closure(states: Iterable[int]) -> tuple[int, ...]:
        seen = set(states)
        queue = deque(seen)
        while queue:
            state = queue.popleft()
            for event in hidden:
                nxt = g.step(state, event)
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return tuple(sorted(seen))

    start = closure([g.initial])
    ids: dict[tuple[int, ...], int] = {start: 0}
    labels = ["{" + ",".join(map(str, start)) + "}"]
    table: dict[tuple[int, str], int] = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for event in target.sorted_events:
            stepped = [
                t for s in subset
                if (t := g.step(s, event)) is not None
            ]
            if not stepped:
                continue
            nxt = closure(stepped)
            if nxt not in ids:
                ids[nxt] = len(labels)
                labels.append("{" + ",".join(map(str, nxt)) + "}")
                queue.append(nxt)
            table[(ids[subset], event)] = ids[nxt]
    return _canonicalize(target, labels, table, 0)


def inverse_project(g: Generator, superset: Alphabet) -> Generator:
    """Inverse image P^{-1}(L(G)) over a larger alphabet, realized by
    self-loops on the new events at every state."""
    if not g.alphabet.events <= superset.events:
        raise AlphabetMismatchError("inverse projection needs the generator's "
                                    "alphabet to be contained in the superset")
    union_alphabets(g.alphabet, superset)
    if g.recognizes_empty_language:
        return empty_generator(superset)
    fresh = superset.events - g.alphabet.events
    table = dict(g.transitions)
    for state in g.states:
        for event in fresh:
            table[(state, event)] = state
    return _canonicalize(superset, list(g.labels), table, g.initial)


def language_subset(g1: Generator, g2: Generator) -> PropertyReport:
    """Does L(G1) ⊆ L(G2) hold?  The counterexample is the shortest word of
    L(G1) \\ L(G2), found on the product of G1 with the (implicitly
    completed) G2."""
    _require_same_alphabet(g1, g2, "language_subset")
    if g1.recognizes_empty_language:
        return PropertyReport(True, detail="∅ is a subset of every language")
    if g2.recognizes_empty_language:
        return PropertyReport(False, EPSILON,
                              "right-hand language is empty")
    start = (g1.initial, g2.initial)
    seen = {start}
    queue: deque[tuple[tuple[int, int], Word]] = deque([(start, EPSILON)])
    while queue:
        (q1, q2), word = queue.popleft()
        for event in g1.alphabet.sorted_events:
            t1 = g1.step(q1, event)
            if t1 is None:
                continue
            t2 = g2.step(q2, event)
            if t2 is None:
                return PropertyReport(False, word + (event,),
                                      "word is in the left language only")
            pair = (t1, t2)
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (event,)))
    return PropertyReport(True, detail="inclusion holds")


def language_equal(g1: Generator, g2: Generator) -> PropertyReport:
    """Does L(G1) = L(G2) hold?  The counterexample is a shortest word in
    the symmetric difference (ties broken lexicographically)."""
    left = language_subset(g1, g2)
    right = language_subset(g2, g1)
    if left.holds and right.holds:
        return PropertyReport(True, detail="languages are equal")
    witnesses = []
    if not left.holds:
        witnesses.append((left.counterexample, "left language only"))
    if not right.holds:
        witnesses.append((right.counterexample, "right language only"))
    word, side = min(witnesses, key=lambda w: (len(w[0]), w[0]))
    return PropertyReport(False, word, f"word is in the {side}")


def language_union(g1: Generator, g2: Generator) -> Generator:
    """Generator of L(G1) ∪ L(G2) (same alphabet required).  Built on the
    product of the completed automata; a product state survives while either
    component is alive."""
    _require_same_alphabet(g1, g2, "language_union")
    if g1.recognizes_empty_language:
        return g2
    if g2.recognizes_empty_language:
        return g1
    alphabet = g1.alphabet
    DEAD = -1

    def name(q1: int, q2: int) -> str:
        l1 = g1.labels[q1] if q1 != DEAD else "-"
        l2 = g2.labels[q2] if q2 != DEAD else "-"
        return f"({l1},{l2})"

    start = (g1.initial, g2.initial)
    ids: dict[tuple[int, int], int] = {start: 0}
    labels = [name(*start)]
    table: dict[tuple[int, str], int] = {}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        q1, q2 = pair
        for event in alphabet.sorted_events:
            t1 = g1.step(q1, event) if q1 != DEAD else None
            t2 = g2.step(q2, event) if q2 != DEAD else None
            if t1 is None and t2 is None:
                continue
            nxt = (t1 if t1 is not None else DEAD,
                   t2 if t2 is not None else DEAD)
            if nxt not in ids:
                ids[nxt] = len(labels)
                labels.append(name(*nxt))
                queue.append(nxt)
            table[(ids[pair], event)] = ids[nxt]
    return _canonicalize(alphabet, labels, table, 0)
