"""Classical supervisory-control layer: controllability, the supremal
controllable sublanguage, supervisors and closed loops.

All languages are prefix-closed by construction, which makes the supC
computation a plain delete-and-retrim fixpoint on the product automaton:
no marking or nonblocking trimming is involved.
"""

from collections import deque
from dataclasses import dataclass

from .automata import (
    EPSILON,
    Generator,
    PropertyReport,
    Word,
    _canonicalize,
    empty_generator,
    union_alphabets,
)
from .errors import AlphabetMismatchError, PreconditionError, ValidationError
from .language import sync_product


@dataclass(frozen=True)
class Supervisor:
    """A supervisor realized as a generator over the plant's alphabet (or a
    superset).  Admissibility with respect to a concrete plant is a checked
    property, not a structural invariant: see ``is_admissible``."""

    realization: Generator


def _check_controllability_args(k: Generator, l: Generator, eu) -> frozenset[str]:
    if k.alphabet != l.alphabet:
        raise AlphabetMismatchError(
            "controllability needs both languages over the same alphabet"
        )
    eu = frozenset(eu)
    stray = eu - k.alphabet.uncontrollable
    if stray:
        raise ValidationError(
            f"events {sorted(stray)} are not uncontrollable in this alphabet"
        )
    return eu


def is_controllable(k: Generator, l: Generator, eu) -> PropertyReport:
    """Check K̄ E_u ∩ L ⊆ K̄ on the synchronized pair of K and L.

    Both languages are prefix-closed, so it suffices to walk their common
    words and look for an uncontrollable event that L enables and K does
    not.  The counterexample is the shortest violating word s·a."""
    eu = _check_controllability_args(k, l, eu)
    if k.recognizes_empty_language or l.recognizes_empty_language:
        return PropertyReport(True, detail="vacuously controllable")
    start = (k.initial, l.initial)
    seen = {start}
    queue: deque[tuple[tuple[int, int], Word]] = deque([(start, EPSILON)])
    while queue:
        (qk, ql), word = queue.popleft()
        for event in k.alphabet.sorted_events:
            tk = k.step(qk, event)
            tl = l.step(ql, event)
            if event in eu and tl is not None and tk is None:
                return PropertyReport(
                    False, word + (event,),
                    "uncontrollable continuation leaves the specification",
                )
            if tk is None or tl is None:
                continue
            pair = (tk, tl)
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (event,)))
    return PropertyReport(True, detail="controllability holds")


def sup_c(k: Generator, l: Generator, eu) -> Generator:
    """Supremal controllable sublanguage of K (∩ L) with respect to L and
    E_u, as the greatest fixpoint on the product of K and L: repeatedly
    delete product states where L enables an uncontrollable event the
    current iterate does not, then re-trim.  K ⊆ L is not required; the
    product construction intersects implicitly."""
    eu = _check_controllability_args(k, l, eu)
    alphabet = k.alphabet
    if k.recognizes_empty_language or l.recognizes_empty_language:
        return empty_generator(alphabet)

    # Reachable product state space (= the generator of K ∩ L).
    start = (k.initial, l.initial)
    ids: dict[tuple[int, int], int] = {start: 0}
    pairs = [start]
    edges: dict[tuple[int, str], int] = {}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        qk, ql = pair
        for event in alphabet.sorted_events:
            tk = k.step(qk, event)
            tl = l.step(ql, event)
            if tk is None or tl is None:
                continue
            nxt = (tk, tl)
            if nxt not in ids:
                ids[nxt] = len(pairs)
                pairs.append(nxt)
                queue.append(nxt)
            edges[(ids[pair], event)] = ids[nxt]

    alive = set(range(len(pairs)))
    while True:
        # Restrict to states reachable through surviving states.
        if 0 not in alive:
            return empty_generator(alphabet)
        reach = {0}
        queue = deque([0])
        while queue:
            node = queue.popleft()
            for event in alphabet.sorted_events:
                nxt = edges.get((node, event))
                if nxt is not None and nxt in alive and nxt not in reach:
                    reach.add(nxt)
                    queue.append(nxt)
        alive = reach
        bad = set()
        for node in alive:
            _, ql = pairs[node]
            for event in eu:
                if l.step(ql, event) is None:
                    continue
                nxt = edges.get((node, event))
                if nxt is None or nxt not in alive:
                    bad.add(node)
                    break
        if not bad:
            break
        alive -= bad

    labels = []
    remap = {}
    for node in sorted(alive):
        remap[node] = len(labels)
        qk, ql = pairs[node]
        labels.append(f"({k.labels[qk]},{l.labels[ql]})")
    table = {
        (remap[node], event): remap[target]
        for (node, event), target in edges.items()
        if node in alive and target in alive
    }
    return _canonicalize(alphabet, labels, table, remap[0])


def is_admissible(s: Supervisor, g: Generator, eu=None) -> PropertyReport:
    """A supervisor is admissible for a plant when, after every word of
    L(S) ∥ L(G), it enables every uncontrollable event the plant enables."""
    rep = s.realization
    merged = union_alphabets(rep.alphabet, g.alphabet)
    if eu is None:
        eu = g.alphabet.uncontrollable
    eu = frozenset(eu)
    stray = eu - (g.alphabet.events & merged.uncontrollable)
    if stray:
        raise ValidationError(
            f"events {sorted(stray)} are not uncontrollable plant events"
        )
    if rep.recognizes_empty_language or g.recognizes_empty_language:
        return PropertyReport(True, detail="closed loop is empty")
    in_s = rep.alphabet.events
    in_g = g.alphabet.events
    start = (rep.initial, g.initial)
    seen = {start}
    queue: deque[tuple[tuple[int, int], Word]] = deque([(start, EPSILON)])
    while queue:
        (qs, qg), word = queue.popleft()
        for event in merged.sorted_events:
            ts = rep.step(qs, event) if event in in_s else qs
            tg = g.step(qg, event) if event in in_g else qg
            if event in eu and tg is not None and event in in_s and ts is None:
                return PropertyReport(
                    False, word + (event,),
                    "supervisor disables an uncontrollable plant event",
                )
            if ts is None or tg is None:
                continue
            pair = (ts, tg)
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (event,)))
    return PropertyReport(True, detail="supervisor is admissible")


def closed_loop(s: Supervisor, g: Generator) -> Generator:
    """L(S/G) = L(S) ∥ L(G) for an admissible supervisor; raises
    ``PreconditionError`` (with the admissibility report) otherwise."""
    report = is_admissible(s, g)
    if not report.holds:
        raise PreconditionError("supervisor is not admissible for this plant",
                                report)
    return sync_product(s.realization, g)
