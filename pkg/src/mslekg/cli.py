"""Command-line interface for the knowledge-graph toolkit.

Subcommands: query, validate, cq, completeness, label, describe, fmt.
Results go to stdout (tables or JSON), diagnostics to stderr. Exit code
0 means success / conforms / all cases passed, 1 means violations or
failed cases, 2 means a usage, parse, or I/O error. With no --data
flags, commands run against the bundled corpus (MSLE_DATA_DIR overrides
its location).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dataset import DatasetError, load_bundled, load_graph
from .lexer import ParseError
from .maturity import (
    constraint_completeness,
    load_cq_suite,
    realworld_completeness,
    run_cq_suite,
)
from .model import BlankNode, Graph, Iri, Literal, Term
from .shacl import ShapeParseError, ValidationReport, parse_shapes, validate
from .skos import definition_of, find_by_label, image_links, labels_of
from .sparql import ResultSet, evaluate, parse_query
from .turtle import parse_turtle, serialize_turtle

__all__ = ["main"]


def _friendly(term: Term, graph: Graph) -> str:
    if isinstance(term, Iri):
        return graph.compact(term.value) or f"<{term.value}>"
    if isinstance(term, BlankNode):
        return term.n3()
    if isinstance(term, Literal) and term.lang:
        return f"{term.lexical}@{term.lang}"
    return term.lexical


def _load_data(args) -> Graph:
    if getattr(args, "data", None):
        return load_graph(args.data)
    return load_bundled().graph


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _print_table(results: ResultSet, graph: Graph) -> None:
    header = results.vars
    rows = [[_friendly(row[v], graph) for v in header] for row in results.rows]
    widths = [
        max([len(h)] + [len(row[i]) for row in rows]) for i, h in enumerate(header)
    ]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    print("  ".join("-" * w for w in widths))
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _parse_prefix_flags(pairs: list[str]) -> dict[str, str]:
    prefixes = {}
    for pair in pairs or []:
        label, sep, iri = pair.partition("=")
        if not sep or not iri:
            raise ValueError(f"--prefix expects LABEL=IRI, got {pair!r}")
        prefixes[label] = iri
    return prefixes


def _cmd_query(args) -> int:
    graph = _load_data(args)
    text = Path(args.query_file).read_text(encoding="utf-8")
    prefixes = dict(graph.prefixes)
    prefixes.update(_parse_prefix_flags(args.prefix))
    query = parse_query(text, prefixes)
    results = evaluate(graph, query, inference=args.infer)
    if args.format == "json":
        _print_json(results.to_dict())
    else:
        _print_table(results, graph)
    return 0


def _render_validation_text(report: ValidationReport, graph: Graph) -> str:
    lines = [f"Conforms: {str(report.conforms).lower()}"]
    if report.results:
        lines.append(f"Violations ({len(report.results)}):")
        for result in report.results:
            value = (
                f" value {_friendly(result.value, graph)}" if result.value is not None else ""
            )
            lines.append(
                f"  [{result.component.value}] focus {_friendly(result.focus_node, graph)}"
                f" path {_friendly(result.path, graph)}{value}"
            )
            lines.append(f"      {result.message}")
    return "\n".join(lines)


def _cmd_validate(args) -> int:
    graph = _load_data(args)
    if args.shapes:
        shapes = parse_shapes(parse_turtle(Path(args.shapes).read_text(encoding="utf-8")))
    else:
        shapes = load_bundled().shapes
    report = validate(graph, shapes, infer=args.infer == "rdfs")
    if args.format == "json":
        _print_json(report.to_dict())
    else:
        print(_render_validation_text(report, graph))
    return 0 if report.conforms else 1


def _cmd_cq(args) -> int:
    graph = _load_data(args)
    if args.suite:
        suite = load_cq_suite(Path(args.suite).read_text(encoding="utf-8"))
    else:
        suite = load_bundled().suite
    report = run_cq_suite(graph, suite)
    if args.format == "json":
        _print_json(report.to_dict()["cq"])
    else:
        for verdict in report.verdicts:
            if verdict.passed:
                print(f"ok   {verdict.case_id}")
            elif verdict.error:
                print(f"FAIL {verdict.case_id}  ({verdict.error})")
            else:
                print(
                    f"FAIL {verdict.case_id}  "
                    f"(missing {len(verdict.missing)}, unexpected {len(verdict.unexpected)})"
                )
        percent = round(float(report.cq_pass_rate) * 100)
        print(f"passed {report.cq_passed}/{report.cq_total} ({percent}%)")
        if report.cq_vacuous:
            print("note: suite is empty; pass rate is vacuous")
    return 0 if report.cq_passed == report.cq_total else 1


def _cmd_completeness(args) -> int:
    graph = _load_data(args)
    if args.shapes:
        shapes = parse_shapes(parse_turtle(Path(args.shapes).read_text(encoding="utf-8")))
    else:
        shapes = load_bundled().shapes
    constraint = constraint_completeness(graph, shapes, infer=args.infer == "rdfs")
    realworld = {}
    exit_code = 0
    if args.realworld:
        entries = json.loads(Path(args.realworld).read_text(encoding="utf-8"))
        realworld = realworld_completeness(graph, entries, dict(graph.prefixes))
        if any(entry.error for entry in realworld.values()):
            exit_code = 2
    if args.format == "json":
        _print_json(
            {
                "constraint": {cls: e.to_dict() for cls, e in constraint.items()},
                "realWorld": {label: e.to_dict() for label, e in realworld.items()},
            }
        )
        return exit_code
    print("Constraint completeness:")
    for cls, entry in sorted(constraint.items()):
        note = " (vacuous)" if entry.vacuous else f" ({entry.conforming}/{entry.total})"
        print(f"  {graph.compact(cls) or cls}: {float(entry.ratio):g}{note}")
    if realworld:
        print("Real-world completeness:")
        for label, entry in sorted(realworld.items()):
            if entry.error:
                print(f"  {label}: error: {entry.error}")
            else:
                print(
                    f"  {label}: {float(entry.ratio):g}"
                    f" ({entry.ontology_count}/{entry.actual})"
                )
    return exit_code


def _looks_like_iri(graph: Graph, text: str) -> Iri | None:
    if text.startswith("<") and text.endswith(">"):
        return Iri(text[1:-1])
    if "://" in text:
        return Iri(text)
    if ":" in text:
        label = text.split(":", 1)[0]
        if label in graph.prefixes:
            return Iri(graph.expand(text))
    return None


def _label_lines(graph: Graph, concept: Iri, lang: str | None) -> list[str]:
    lines = [f"{graph.compact(concept.value) or concept.n3()}"]
    for entry in labels_of(graph, concept, lang):
        if entry.kind == "hidden":
            continue  # hidden labels are searchable but never displayed
        tag = f"@{entry.lang}" if entry.lang else ""
        lines.append(f'  {entry.kind:<6} "{entry.text}"{tag}')
    return lines


def _cmd_label(args) -> int:
    graph = _load_data(args)
    concept = _looks_like_iri(graph, args.text)
    concepts = [concept] if concept else find_by_label(graph, args.text, mode=args.mode)
    if args.format == "json":
        _print_json(
            {
                "matches": [
                    {
                        "iri": c.value,
                        "labels": [
                            {"kind": e.kind, "text": e.text, "lang": e.lang}
                            for e in labels_of(graph, c, args.lang)
                        ],
                    }
                    for c in concepts
                ]
            }
        )
        return 0
    if not concepts:
        print("no matching concepts")
        return 0
    for c in concepts:
        for line in _label_lines(graph, c, args.lang):
            print(line)
    return 0


def _cmd_describe(args) -> int:
    graph = _load_data(args)
    concept = _looks_like_iri(graph, args.iri)
    if concept is None:
        raise ValueError(f"not an IRI or known prefixed name: {args.iri!r}")
    statements = sorted(
        ((t.p, t.o) for t in graph.match(s=concept)),
        key=lambda po: (po[0].value, po[1].n3()),
    )
    definition = definition_of(graph, concept, args.lang)
    if args.format == "json":
        _print_json(
            {
                "iri": concept.value,
                "labels": [
                    {"kind": e.kind, "text": e.text, "lang": e.lang}
                    for e in labels_of(graph, concept)
                ],
                "definition": definition,
                "images": [iri.value for iri in image_links(graph, concept)],
                "statements": [[p.n3(), o.n3()] for p, o in statements],
            }
        )
        return 0
    for line in _label_lines(graph, concept, None):
        print(line)
    if definition:
        print(f"  definition: {definition}")
    for image in image_links(graph, concept):
        print(f"  image: {image.value}")
    for p, o in statements:
        print(f"  {_friendly(p, graph)} {_friendly(o, graph)}")
    return 0


def _cmd_fmt(args) -> int:
    graph = parse_turtle(Path(args.file).read_text(encoding="utf-8"))
    sys.stdout.write(serialize_turtle(graph))
    return 0


def _add_common(parser: argparse.ArgumentParser, with_infer: bool = False) -> None:
    parser.add_argument(
        "--data",
        action="append",
        metavar="FILE",
        help="Turtle data file; repeatable, merged in order (default: bundled corpus)",
    )
    parser.add_argument(
        "--format", choices=("text", "table", "json"), default="text", help="output format"
    )
    if with_infer:
        parser.add_argument(
            "--infer", choices=("none", "rdfs"), default="none", help="apply RDFS closure"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mslekg", description="Query, validate, and assess equipment knowledge graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("query", help="run a SELECT query file against the data")
    p.add_argument("query_file", metavar="QUERY.rq")
    p.add_argument(
        "--prefix",
        action="append",
        metavar="LABEL=IRI",
        help="extra prefix binding available to the query; repeatable",
    )
    _add_common(p, with_infer=True)
    p.set_defaults(func=_cmd_query, format="table")

    p = sub.add_parser("validate", help="validate the data against a shapes file")
    p.add_argument("--shapes", metavar="SHAPES.ttl", help="shapes file (default: bundled)")
    _add_common(p, with_infer=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("cq", help="run a competency-question suite")
    p.add_argument("--suite", metavar="SUITE.json", help="suite file (default: bundled)")
    _add_common(p)
    p.set_defaults(func=_cmd_cq)

    p = sub.add_parser("completeness", help="constraint and real-world completeness")
    p.add_argument("--shapes", metavar="SHAPES.ttl", help="shapes file (default: bundled)")
    p.add_argument(
        "--realworld", metavar="SPEC.json", help="real-world counts file [{label, count_query, actual}]"
    )
    _add_common(p, with_infer=True)
    p.set_defaults(func=_cmd_completeness)

    p = sub.add_parser("label", help="look up concepts by label text or IRI")
    p.add_argument("text", metavar="TEXT_OR_IRI")
    p.add_argument("--lang", help="restrict labels to a language tag")
    p.add_argument("--mode", choices=("exact", "substring"), default="exact")
    _add_common(p)
    p.set_defaults(func=_cmd_label)

    p = sub.add_parser("describe", help="show labels, definition, and statements of an IRI")
    p.add_argument("iri", metavar="IRI")
    p.add_argument("--lang", help="preferred definition language")
    _add_common(p)
    p.set_defaults(func=_cmd_describe)

    p = sub.add_parser("fmt", help="reserialize a Turtle file canonically to stdout")
    p.add_argument("file", metavar="FILE.ttl")
    p.set_defaults(func=_cmd_fmt)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, DatasetError, ShapeParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
