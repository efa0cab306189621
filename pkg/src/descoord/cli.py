"""Command-line front end: parse generator/project files, run checks and
syntheses, emit reports and counterexamples in stable formats.

Exit codes: 0 when every requested check holds (or the synthesis
succeeded), 1 when a check failed and a counterexample was printed, 2 for
usage, parse or resolution errors.

File formats (JSON, UTF-8, no comments):

* generator file: ``name``, ``events`` (list of {name, controllable}),
  ``states``, ``initial``, optional ``marked`` (ignored with a warning
  under the prefix-closed convention), ``transitions`` (list of
  [source, event, target] triples).  A ``recognizes_empty_language`` flag
  marks the generator of the empty language.
* project file: ``generators`` (list of file paths or inline generator
  objects) and ``coordination``: {g1, g2, gk (name or "auto"), spec,
  ek (event list or "auto")}.

All output is deterministic: state names are canonical (``q0``, ``q1``,
...), sets are sorted, counterexamples are shortest-then-lexicographic.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .automata import (
    Alphabet,
    Generator,
    PropertyReport,
    empty_generator,
    format_word,
    make_generator,
    reachable_events,
    shortest_words,
    union_alphabets,
)
from .coordination import (
    check_optimality_conditions,
    conditionally_decomposable,
    conditionally_independent,
    default_coordinator,
    is_conditionally_controllable,
    suggest_coordinator_events,
    sup_cc,
    synthesize_supervisors,
    _observer_occ_reports,
)
from .errors import DescoordError, PreconditionError, ProjectError
from .language import (
    CoordinationScheme,
    ProjectionSpec,
    project as project_generator,
    sync_product,
)
from .oracle import bounded_language, brute_product, brute_project, brute_sup_c
from .synthesis import is_controllable, sup_c

CHECKS = ("controllability", "conddec", "condindep", "condctrl", "observer",
          "occ", "optimality")
SYNTH_MODES = ("supc", "supcc", "supervisors")


# ---------------------------------------------------------------------------
# generator file format

def serialize_generator(g: Generator, name: str) -> dict:
    """Canonical JSON object for a generator: states are renamed to dense
    ``q<i>`` ids so isomorphic automata serialize to identical bytes."""
    doc = {
        "name": name,
        "events": [
            {"name": event, "controllable": event in g.alphabet.controllable}
            for event in g.alphabet.sorted_events
        ],
        "states": [f"q{i}" for i in range(g.num_states)],
        "initial": f"q{g.initial}",
        "transitions": [
            [f"q{src}", event, f"q{dst}"]
            for (src, event), dst in sorted(g.transitions.items())
        ],
    }
    if g.recognizes_empty_language:
        doc["recognizes_empty_language"] = True
    return doc


def generator_to_text(g: Generator, name: str) -> str:
    return json.dumps(serialize_generator(g, name), indent=2) + "\n"


def parse_generator(doc: dict, origin: str = "<inline>") -> tuple[str, Generator]:
    def fail(msg: str):
        raise ProjectError(f"{origin}: {msg}")

    if not isinstance(doc, dict):
        fail("generator must be a JSON object")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        fail("missing or invalid 'name'")
    events = doc.get("events")
    if not isinstance(events, list):
        fail("missing or invalid 'events'")
    names, controllable = [], []
    for entry in events:
        if (not isinstance(entry, dict) or "name" not in entry
                or not isinstance(entry.get("controllable"), bool)):
            fail("each event needs 'name' and boolean 'controllable'")
        names.append(entry["name"])
        if entry["controllable"]:
            controllable.append(entry["name"])
    if len(set(names)) != len(names):
        fail("duplicate event names")
    try:
        alphabet = Alphabet(frozenset(names), frozenset(controllable))
        if doc.get("recognizes_empty_language"):
            return name, empty_generator(alphabet)
        states = doc.get("states")
        initial = doc.get("initial")
        transitions = doc.get("transitions", [])
        if not isinstance(states, list) or not isinstance(initial, str):
            fail("missing 'states' or 'initial'")
        if not all(isinstance(t, list) and len(t) == 3 for t in transitions):
            fail("'transitions' must be [source, event, target] triples")
        if "marked" in doc:
            print(f"warning: {origin}: 'marked' ignored "
                  f"(prefix-closed convention)", file=sys.stderr)
        g = make_generator(states, alphabet,
                           [tuple(t) for t in transitions], initial)
    except DescoordError as exc:
        raise ProjectError(f"{origin}: {exc}") from exc
    return name, g


# ---------------------------------------------------------------------------
# project file

@dataclass
class ProjectFile:
    generators: dict[str, Generator]
    coordination: dict | None
    origin: Path


def load_project(path: str) -> ProjectFile:
    origin = Path(path)
    try:
        raw = origin.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProjectError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProjectError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if not isinstance(doc, dict) or "generators" not in doc:
        raise ProjectError(f"{path}: project needs a 'generators' list")
    generators: dict[str, Generator] = {}
    for entry in doc["generators"]:
        if isinstance(entry, str):
            gen_path = origin.parent / entry
            try:
                gen_doc = json.loads(gen_path.read_text(encoding="utf-8"))
            except OSError as exc:
                raise ProjectError(f"cannot read {gen_path}: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ProjectError(
                    f"{gen_path}: invalid JSON at line {exc.lineno}, "
                    f"column {exc.colno}: {exc.msg}"
                ) from exc
            name, g = parse_generator(gen_doc, str(gen_path))
        else:
            name, g = parse_generator(entry, f"{path} (inline)")
        if name in generators:
            raise ProjectError(f"{path}: duplicate generator name {name!r}")
        generators[name] = g
    coordination = doc.get("coordination")
    if coordination is not None and not isinstance(coordination, dict):
        raise ProjectError(f"{path}: 'coordination' must be an object")
    return ProjectFile(generators, coordination, origin)


def _lookup(project: ProjectFile, name: str) -> Generator:
    if name not in project.generators:
        raise ProjectError(f"unknown generator name {name!r}")
    return project.generators[name]


def resolve_coordination(project: ProjectFile):
    """Returns (K, G1, G2, Gk, scheme) from the project's coordination
    block, building the coordinator when it is declared "auto"."""
    block = project.coordination
    if block is None:
        raise ProjectError("project has no 'coordination' block")
    for key in ("g1", "g2", "spec"):
        if key not in block:
            raise ProjectError(f"coordination block is missing {key!r}")
    g1 = _lookup(project, block["g1"])
    g2 = _lookup(project, block["g2"])
    k = _lookup(project, block["spec"])
    gk_field = block.get("gk", "auto")
    ek_field = block.get("ek", "auto")

    try:
        if gk_field == "auto":
            if ek_field == "auto":
                ek = suggest_coordinator_events(k, g1, g2)
            else:
                pool = union_alphabets(g1.alphabet, g2.alphabet, k.alphabet)
                unknown = set(ek_field) - pool.events
                if unknown:
                    raise ProjectError(
                        f"ek lists unknown events: {sorted(unknown)}"
                    )
                ek = pool.restrict(ek_field)
            gk = default_coordinator(g1, g2, ek)
        else:
            gk = _lookup(project, gk_field)
            ek = gk.alphabet
            if ek_field != "auto" and set(ek_field) != set(ek.events):
                raise ProjectError(
                    "ek does not match the named coordinator's alphabet"
                )
        scheme = CoordinationScheme(g1.alphabet, g2.alphabet, ek)
        if k.alphabet != scheme.full:
            raise ProjectError(
                "the specification alphabet must equal E_1 ∪ E_2 ∪ E_k"
            )
    except DescoordError as exc:
        if isinstance(exc, (ProjectError, PreconditionError)):
            raise
        raise ProjectError(str(exc)) from exc
    return k, g1, g2, gk, scheme


# ---------------------------------------------------------------------------
# report output

def emit_report(name: str, report: PropertyReport, json_mode: bool) -> None:
    if json_mode:
        record = {
            "check": name,
            "holds": report.holds,
            "counterexample": (list(report.counterexample)
                               if report.counterexample is not None else None),
            "detail": report.detail,
        }
        print(json.dumps(record, sort_keys=True))
    elif report.holds:
        print(f"[PASS] {name}: {report.detail}")
    else:
        print(f"[FAIL] {name}: counterexample="
              f"{format_word(report.counterexample)} ({report.detail})")


def emit_note(text: str, json_mode: bool, **fields) -> None:
    if json_mode:
        print(json.dumps({"note": text, **fields}, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# oracle cross-checks (--oracle-bound)

def _oracle_controllability(k, plant, eu, report, bound, json_mode) -> bool:
    kw = bounded_language(k, bound).words
    lw = bounded_language(plant, bound).words
    violation = None
    for word in sorted(kw, key=lambda w: (len(w), w)):
        for event in sorted(eu):
            if word + (event,) in lw and word + (event,) not in kw:
                violation = word + (event,)
                break
        if violation:
            break
    if report.holds:
        consistent = violation is None
    else:
        consistent = (len(report.counterexample) > bound
                      or violation is not None)
    emit_note(
        f"[ORACLE] controllability at bound {bound}: "
        f"{'consistent' if consistent else 'MISMATCH'}",
        json_mode, oracle="controllability", bound=bound,
        consistent=consistent,
    )
    return consistent


def _oracle_conddec(k, scheme, report, bound, json_mode) -> bool:
    kw = bounded_language(k, bound).words
    p1k = brute_project(kw, scheme.e1k.events)
    p2k = brute_project(kw, scheme.e2k.events)
    pk = brute_project(kw, scheme.ek.events)
    composed = brute_product(
        brute_product(p1k, scheme.e1k.events, p2k, scheme.e2k.events, bound),
        scheme.e1k.events | scheme.e2k.events, pk, scheme.ek.events, bound,
    )
    if report.holds:
        consistent = composed == kw
    else:
        consistent = (len(report.counterexample) > bound
                      or composed != kw)
    emit_note(
        f"[ORACLE] conditional decomposability at bound {bound}: "
        f"{'consistent' if consistent else 'MISMATCH'}",
        json_mode, oracle="conddec", bound=bound, consistent=consistent,
    )
    return consistent


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> int:
    project = load_project(args.project)
    k, g1, g2, gk, scheme = resolve_coordination(project)
    reports: list[tuple[str, PropertyReport]] = []
    oracle_jobs = []

    if args.which == "controllability":
        plant = sync_product(sync_product(g1, g2), gk)
        eu = scheme.full.uncontrollable
        report = is_controllable(k, plant, eu)
        reports.append(("controllability", report))
        if args.oracle_bound:
            oracle_jobs.append(lambda: _oracle_controllability(
                k, plant, eu, report, args.oracle_bound, args.json))
    elif args.which == "conddec":
        report = conditionally_decomposable(k, scheme)
        reports.append(("conditional decomposability", report))
        if args.oracle_bound:
            oracle_jobs.append(lambda: _oracle_conddec(
                k, scheme, report, args.oracle_bound, args.json))
    elif args.which == "condindep":
        reports.append(("conditional independence",
                        conditionally_independent(g1, g2, gk)))
    elif args.which == "condctrl":
        try:
            full = is_conditionally_controllable(k, g1, g2, gk, scheme)
        except PreconditionError as exc:
            emit_report("precondition (spec within plant)", exc.report,
                        args.json)
            return 1
        reports.append(("condition (i)", full.condition_i))
        reports.append(("condition (ii.a)", full.condition_iia))
        reports.append(("condition (ii.b)", full.condition_iib))
    elif args.which == "observer":
        reports.extend((name, rep)
                       for name, rep in _observer_occ_reports(g1, g2, scheme)
                       if name.startswith("observer"))
    elif args.which == "occ":
        reports.extend((name, rep)
                       for name, rep in _observer_occ_reports(g1, g2, scheme)
                       if name.startswith("occ"))
    elif args.which == "optimality":
        reports.append(("optimality conditions",
                        check_optimality_conditions(g1, g2, gk, scheme)))

    for name, report in reports:
        emit_report(name, report, args.json)
    oracle_ok = all([job() for job in oracle_jobs])
    ok = all(report.holds for _, report in reports) and oracle_ok
    return 0 if ok else 1


def _write_generator(directory: Path, stem: str, g: Generator,
                     json_mode: bool) -> None:
    path = directory / f"{stem}.json"
    path.write_text(generator_to_text(g, stem), encoding="utf-8")
    if json_mode:
        print(json.dumps({
            "artifact": stem, "path": str(path), "states": g.num_states,
            "transitions": len(g.transitions),
            "empty_language": g.recognizes_empty_language,
        }, sort_keys=True))
    else:
        print(f"wrote {path} ({g.num_states} states, "
              f"{len(g.transitions)} transitions)")


def cmd_synth(args) -> int:
    project = load_project(args.project)
    k, g1, g2, gk, scheme = resolve_coordination(project)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    oracle_ok = True

    try:
        if args.mode == "supc":
            plant = sync_product(sync_product(g1, g2), gk)
            result = sup_c(k, plant, scheme.full.uncontrollable)
            _write_generator(out, "supc", result, args.json)
            if args.oracle_bound:
                bound = args.oracle_bound
                expected = brute_sup_c(
                    bounded_language(k, bound).words,
                    bounded_language(plant, bound).words,
                    scheme.full.uncontrollable, bound)
                got = bounded_language(result, max(bound - 2, 0)).words
                expected = {w for w in expected if len(w) <= bound - 2}
                consistent = got == expected
                emit_note(
                    f"[ORACLE] supC at bound {bound} (compared at "
                    f"{bound - 2}): "
                    f"{'consistent' if consistent else 'MISMATCH'}",
                    args.json, oracle="supc", bound=bound,
                    consistent=consistent)
                oracle_ok = consistent
        elif args.mode == "supcc":
            result = sup_cc(k, g1, g2, gk, scheme, force=args.force)
            _write_generator(out, "sup_k", result.sup_k, args.json)
            _write_generator(out, "sup_1k", result.sup_1k, args.json)
            _write_generator(out, "sup_2k", result.sup_2k, args.json)
            _write_generator(out, "composed", result.composed, args.json)
            emit_note(
                f"certified supremal: {'yes' if result.certified else 'no'}",
                args.json, certified=result.certified)
            if args.oracle_bound:
                bound = args.oracle_bound
                left = brute_product(
                    bounded_language(result.sup_k, bound).words,
                    scheme.ek.events,
                    bounded_language(result.sup_1k, bound).words,
                    scheme.e1k.events, bound)
                composed_w = brute_product(
                    left, scheme.ek.events | scheme.e1k.events,
                    bounded_language(result.sup_2k, bound).words,
                    scheme.e2k.events, bound)
                consistent = (composed_w
                              == bounded_language(result.composed,
                                                  bound).words)
                emit_note(
                    f"[ORACLE] composition at bound {bound}: "
                    f"{'consistent' if consistent else 'MISMATCH'}",
                    args.json, oracle="composition", bound=bound,
                    consistent=consistent)
                oracle_ok = consistent
        else:  # supervisors
            s_k, s_1, s_2 = synthesize_supervisors(k, g1, g2, gk, scheme)
            _write_generator(out, "s_k", s_k.realization, args.json)
            _write_generator(out, "s_1", s_1.realization, args.json)
            _write_generator(out, "s_2", s_2.realization, args.json)
    except PreconditionError as exc:
        report = exc.report if exc.report is not None else PropertyReport(
            False, (), str(exc))
        emit_report(f"precondition: {exc}", report, args.json)
        return 1
    return 0 if oracle_ok else 1


def cmd_compose(args) -> int:
    project = load_project(args.project)
    parts = [_lookup(project, name) for name in args.names]
    result = parts[0]
    for g in parts[1:]:
        result = sync_product(result, g)
    name = "+".join(args.names)
    Path(args.out).write_text(generator_to_text(result, name),
                              encoding="utf-8")
    emit_note(f"wrote {args.out} ({result.num_states} states, "
              f"{len(result.transitions)} transitions)",
              args.json, path=args.out, states=result.num_states,
              transitions=len(result.transitions))
    return 0


def cmd_project(args) -> int:
    project = load_project(args.project)
    g = _lookup(project, args.name)
    spec = ProjectionSpec(g.alphabet, frozenset(args.events))
    result = project_generator(g, spec)
    Path(args.out).write_text(
        generator_to_text(result, args.name), encoding="utf-8")
    emit_note(f"wrote {args.out} ({result.num_states} states, "
              f"{len(result.transitions)} transitions)",
              args.json, path=args.out, states=result.num_states,
              transitions=len(result.transitions))
    return 0


def cmd_info(args) -> int:
    project = load_project(args.project)
    g = _lookup(project, args.name)
    events = [
        {"name": e, "controllable": e in g.alphabet.controllable}
        for e in g.alphabet.sorted_events
    ]
    samples = [format_word(w) for w in shortest_words(g, 5)]
    if args.json:
        print(json.dumps({
            "name": args.name,
            "events": events,
            "reachable_events": sorted(reachable_events(g)),
            "states": g.num_states,
            "transitions": len(g.transitions),
            "empty_language": g.recognizes_empty_language,
            "sample_words": samples,
        }, sort_keys=True))
    else:
        flags = ", ".join(
            f"{e['name']}{'' if e['controllable'] else ' (u)'}"
            for e in events)
        print(f"generator {args.name}: {g.num_states} states, "
              f"{len(g.transitions)} transitions")
        print(f"  events: {flags}")
        print(f"  reachable events: "
              f"{', '.join(sorted(reachable_events(g))) or '(none)'}")
        if g.recognizes_empty_language:
            print("  language: empty")
        else:
            print(f"  sample words: {', '.join(samples)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="desc",
        description="Supervisory control synthesis for modular "
                    "discrete-event systems with a coordinator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-p", "--project", required=True,
                       help="project file (JSON)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable one-line JSON records")

    p_check = sub.add_parser("check", help="run a property check")
    p_check.add_argument("which", choices=CHECKS)
    common(p_check)
    p_check.add_argument("--oracle-bound", type=int, default=0,
                         help="also verify against the brute-force oracle "
                              "at this word-length bound")

    p_synth = sub.add_parser("synth", help="run a synthesis")
    p_synth.add_argument("mode", choices=SYNTH_MODES)
    common(p_synth)
    p_synth.add_argument("-o", "--out", required=True,
                         help="output directory for result generators")
    p_synth.add_argument("--force", action="store_true",
                         help="compute even when observer/OCC preconditions "
                              "fail (result marked uncertified)")
    p_synth.add_argument("--oracle-bound", type=int, default=0)

    p_compose = sub.add_parser("compose",
                               help="synchronous product of named generators")
    common(p_compose)
    p_compose.add_argument("-o", "--out", required=True,
                           help="output generator file")
    p_compose.add_argument("names", nargs="+")

    p_project = sub.add_parser("project",
                               help="natural projection of a generator")
    common(p_project)
    p_project.add_argument("-o", "--out", required=True)
    p_project.add_argument("name")
    p_project.add_argument("events", nargs="+")

    p_info = sub.add_parser("info", help="describe a named generator")
    common(p_info)
    p_info.add_argument("name")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": cmd_check,
        "synth": cmd_synth,
        "compose": cmd_compose,
        "project": cmd_project,
        "info": cmd_info,
    }
    try:
        return handlers[args.command](args)
    except PreconditionError as exc:
        if exc.report is not None:
            emit_report(f"precondition: {exc}", exc.report,
                        getattr(args, "json", False))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    except DescoordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
