"""Maturity metrics: competency-question suite runs and completeness ratios.

All ratios are exact fractions. Competency-question cases compare the
evaluated result set against the expected rows as sets of canonically
rendered term strings, so row order never matters. An empty denominator
yields a ratio of 1 flagged as vacuous rather than a division error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .inference import rdfs_closure
from .lexer import ParseError
from .model import Graph
from .shacl import NodeShape, focus_nodes, validate
from .sparql import INFERENCE_MODES, evaluate, parse_query

__all__ = [
    "CqCase",
    "CqSuite",
    "CqVerdict",
    "MaturityReport",
    "ClassCompleteness",
    "RealWorldCompleteness",
    "load_cq_suite",
    "run_cq_suite",
    "constraint_completeness",
    "realworld_completeness",
]


@dataclass
class CqCase:
    """One competency question: query text plus the expected solution rows."""

    id: str
    question: str
    query: str
    expected: list[dict[str, str]]
    inference: str = "none"


@dataclass
class CqSuite:
    prefixes: dict[str, str] = field(default_factory=dict)
    cases: list[CqCase] = field(default_factory=list)


def load_cq_suite(text: str) -> CqSuite:
    """Load a suite from its JSON document; case ids must be unique."""
    doc = json.loads(text)
    prefixes = dict(doc.get("prefixes", {}))
    cases = []
    seen = set()
    for raw in doc.get("cases", []):
        case = CqCase(
            id=raw["id"],
            question=raw.get("question", ""),
            query=raw["query"],
            expected=[dict(row) for row in raw.get("expected", [])],
            inference=raw.get("inference", "none"),
        )
        if case.id in seen:
            raise ValueError(f"duplicate competency-question id {case.id!r}")
        seen.add(case.id)
        if case.inference not in INFERENCE_MODES:
            raise ValueError(
                f"case {case.id!r}: inference must be one of {INFERENCE_MODES}"
            )
        cases.append(case)
    return CqSuite(prefixes, cases)


@dataclass
class CqVerdict:
    case_id: str
    passed: bool
    missing: list[dict[str, str]] = field(default_factory=list)
    unexpected: list[dict[str, str]] = field(default_factory=list)
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.case_id,
            "passed": self.passed,
            "missing": self.missing,
            "unexpected": self.unexpected,
            "error": self.error,
        }


@dataclass
class ClassCompleteness:
    conforming: int
    total: int
    ratio: Fraction
    vacuous: bool = False

    def to_dict(self) -> dict:
        return {
            "conforming": self.conforming,
            "total": self.total,
            "ratio": float(self.ratio),
            "vacuous": self.vacuous,
        }


@dataclass
class RealWorldCompleteness:
    actual: int
    ontology_count: int | None = None
    ratio: Fraction | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "actual": self.actual,
            "ontologyCount": self.ontology_count,
            "ratio": float(self.ratio) if self.ratio is not None else None,
            "error": self.error,
        }


@dataclass
class MaturityReport:
    cq_total: int = 0
    cq_passed: int = 0
    cq_pass_rate: Fraction = Fraction(1)
    cq_vacuous: bool = False
    verdicts: list[CqVerdict] = field(default_factory=list)
    constraint_completeness: dict[str, ClassCompleteness] = field(default_factory=dict)
    realworld_completeness: dict[str, RealWorldCompleteness] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "cq": {
                "total": self.cq_total,
                "passed": self.cq_passed,
                "passRate": float(self.cq_pass_rate),
                "vacuous": self.cq_vacuous,
                "cases": [v.to_dict() for v in self.verdicts],
            },
            "constraintCompleteness": {
                cls: entry.to_dict() for cls, entry in self.constraint_completeness.items()
            },
            "realWorldCompleteness": {
                label: entry.to_dict()
                for label, entry in self.realworld_completeness.items()
            },
        }


def _row_key(row: dict[str, str]) -> frozenset:
    return frozenset(row.items())


def run_cq_suite(graph: Graph, suite: CqSuite) -> MaturityReport:
    """Run every case; a query that fails to parse fails its case only."""
    verdicts = []
    for case in sorted(suite.cases, key=lambda c: c.id):
        try:
            query = parse_query(case.query, suite.prefixes)
            actual_rows = evaluate(graph, query, case.inference).rendered()
        except (ParseError, ValueError) as exc:
            verdicts.append(CqVerdict(case.id, passed=False, error=str(exc)))
            continue
        projection = set(query.projection)
        bad_rows = [row for row in case.expected if set(row) != projection]
        if bad_rows:
            verdicts.append(
                CqVerdict(
                    case.id,
                    passed=False,
                    error=f"expected rows must bind exactly {sorted(projection)}",
                )
            )
            continue
        actual = {_row_key(row) for row in actual_rows}
        expected = {_row_key(row) for row in case.expected}
        missing = sorted(expected - actual, key=sorted)
        unexpected = sorted(actual - expected, key=sorted)
        verdicts.append(
            CqVerdict(
                case.id,
                passed=not missing and not unexpected,
                missing=[dict(row) for row in missing],
                unexpected=[dict(row) for row in unexpected],
            )
        )
    total = len(verdicts)
    passed = sum(1 for v in verdicts if v.passed)
    return MaturityReport(
        cq_total=total,
        cq_passed=passed,
        cq_pass_rate=Fraction(passed, total) if total else Fraction(1),
        cq_vacuous=total == 0,
        verdicts=verdicts,
    )


def constraint_completeness(
    data: Graph, shapes: list[NodeShape], infer: bool = False
) -> dict[str, ClassCompleteness]:
    """Per target class: fraction of its instances with zero violations."""
    target = rdfs_closure(data) if infer else data
    report = validate(target, shapes)
    violating = {result.focus_node for result in report.results}
    out: dict[str, ClassCompleteness] = {}
    for shape in shapes:
        for cls in shape.target_classes:
            instances = focus_nodes(target, NodeShape(shape.id, [cls], []))
            if not instances:
                out[cls.value] = ClassCompleteness(0, 0, Fraction(1), vacuous=True)
                continue
            conforming = sum(1 for node in instances if node not in violating)
            out[cls.value] = ClassCompleteness(
                conforming, len(instances), Fraction(conforming, len(instances))
            )
    return out


def realworld_completeness(
    data: Graph, entries: list[dict], prefixes: dict[str, str] | None = None
) -> dict[str, RealWorldCompleteness]:
    """Ontology-side counts divided by expert-supplied real-world counts.

    Each entry is {label, count_query, actual}; the count is the number
    of distinct rows the query returns, and ratios are capped at 1.
    """
    out: dict[str, RealWorldCompleteness] = {}
    for entry in entries:
        label = entry["label"]
        actual = entry["actual"]
        if not isinstance(actual, int) or actual <= 0:
            out[label] = RealWorldCompleteness(
                actual=actual, error="actual count must be a positive integer"
            )
            continue
        try:
            query = parse_query(entry["count_query"], prefixes)
            rows = evaluate(data, query).rendered()
        except (ParseError, ValueError) as exc:
            out[label] = RealWorldCompleteness(actual=actual, error=str(exc))
            continue
        count = len({_row_key(row) for row in rows})
        out[label] = RealWorldCompleteness(
            actual=actual,
            ontology_count=count,
            ratio=min(Fraction(1), Fraction(count, actual)),
        )
    return out
