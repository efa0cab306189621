"""Decidable checks for the observer property and output control
consistency (OCC) of a natural projection.  These gate the distributed
supremal-synthesis procedure in ``coordination``."""

from collections import deque

from .automata import EPSILON, Generator, PropertyReport, Word
from .errors import AlphabetMismatchError, ValidationError
from .language import ProjectionSpec, project


def is_observer(g: Generator, spec: ProjectionSpec) -> PropertyReport:
    """Is the projection an L(G)-observer?

    For prefix-closed L it suffices to check one projected step at a time:
    whenever P(s)·e is in P(L) for some s in L, some hidden continuation
    u·e with u over hidden events must exist after s.  Decided on the
    synchronized pair of G and the determinized projection of G: from every
    reachable pair (q, x), each target event enabled at x must be matched
    from q by a path (E \\ E_k)* · e.  The counterexample encodes the pair
    (s, e) as the word s·e."""
    if spec.source != g.alphabet:
        raise AlphabetMismatchError("projection source must equal the "
                                    "generator's alphabet")
    if g.recognizes_empty_language:
        return PropertyReport(True, detail="empty language")
    target = spec.target_events
    hidden = spec.hidden_events
    det = project(g, spec)

    # Per state of G: target events enabled somewhere in its hidden closure.
    matchable: list[frozenset[str]] = []
    for state in g.states:
        seen = {state}
        queue = deque([state])
        enabled = set()
        while queue:
            current = queue.popleft()
            for event in g.alphabet.sorted_events:
                nxt = g.step(current, event)
                if nxt is None:
                    continue
                if event in target:
                    enabled.add(event)
                elif nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        matchable.append(frozenset(enabled))

    start = (g.initial, det.initial)
    seen_pairs = {start}
    queue: deque[tuple[tuple[int, int], Word]] = deque([(start, EPSILON)])
    while queue:
        (q, x), word = queue.popleft()
        for event in g.alphabet.sorted_events:
            if event in hidden:
                nxt = g.step(q, event)
                if nxt is None:
                    continue
                pair = (nxt, x)
            else:
                dx = det.step(x, event)
                if dx is None:
                    continue
                if event not in matchable[q]:
                    return PropertyReport(
                        False, word + (event,),
                        "projected continuation is not realizable after "
                        "this word",
                    )
                nq = g.step(q, event)
                if nq is None:
                    continue
                pair = (nq, dx)
            if pair not in seen_pairs:
                seen_pairs.add(pair)
                queue.append((pair, word + (event,)))
    return PropertyReport(True, detail="observer property holds")


def is_occ(g: Generator, spec: ProjectionSpec, eu) -> PropertyReport:
    """Is the projection output control consistent for L(G)?

    A word violates OCC when the hidden segment since the last target event
    (or since the start of the word) contains a controllable event and the
    next target event is uncontrollable.  Tracked with one dirty bit per
    state, so hidden cycles need no unrolling; the counterexample is the
    shortest full violating word."""
    if spec.source != g.alphabet:
        raise AlphabetMismatchError("projection source must equal the "
                                    "generator's alphabet")
    eu = frozenset(eu)
    stray = eu - g.alphabet.events
    if stray:
        raise ValidationError(f"unknown events: {sorted(stray)}")
    if g.recognizes_empty_language:
        return PropertyReport(True, detail="empty language")
    target = spec.target_events

    start = (g.initial, False)
    seen = {start}
    queue: deque[tuple[tuple[int, bool], Word]] = deque([(start, EPSILON)])
    while queue:
        (q, dirty), word = queue.popleft()
        for event in g.alphabet.sorted_events:
            nxt = g.step(q, event)
            if nxt is None:
                continue
            if event in target:
                if dirty and event in eu:
                    return PropertyReport(
                        False, word + (event,),
                        "controllable hidden event precedes an "
                        "uncontrollable projected event",
                    )
                node = (nxt, False)
            else:
                node = (nxt, dirty or event not in eu)
            if node not in seen:
                seen.add(node)
                queue.append((node, word + (event,)))
    return PropertyReport(True, detail="output control consistency holds")
