"""SHACL-core validation: node shapes with per-path property constraints.

Supported constraint components: sh:minCount, sh:maxCount, sh:datatype,
sh:minInclusive, sh:maxInclusive, plus sh:message for violation text.
Targets come from sh:targetClass; focus nodes are selected on asserted
rdf:type only unless the caller opts into the RDFS closure.
"""

from __future__ import annotations

import enum
import logging
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from .inference import rdfs_closure
from .model import Graph, Iri, Literal, Term, term_sort_key
from .namespaces import NUMERIC_DATATYPES, RDF, SH, XSD

__all__ = [
    "Component",
    "NodeShape",
    "PropertyShape",
    "ShapeParseError",
    "ValidationReport",
    "ValidationResult",
    "parse_shapes",
    "validate",
]

log = logging.getLogger(__name__)

_KNOWN_SHAPE_PREDICATES = {
    SH.path.value,
    SH.datatype.value,
    SH.minCount.value,
    SH.maxCount.value,
    SH.minInclusive.value,
    SH.maxInclusive.value,
    SH.message.value,
}
_KNOWN_NODE_PREDICATES = {SH.targetClass.value, SH.property.value}


class ShapeParseError(ValueError):
    """The shapes graph violates the supported SHACL subset."""


class Component(enum.Enum):
    MIN_COUNT = "MinCount"
    MAX_COUNT = "MaxCount"
    DATATYPE = "Datatype"
    MIN_INCLUSIVE = "MinInclusive"
    MAX_INCLUSIVE = "MaxInclusive"


@dataclass
class PropertyShape:
    """Constraints on the values of one predicate from a focus node."""

    source: Term
    path: Iri
    datatype: Iri | None = None
    min_count: int | None = None
    max_count: int | None = None
    min_inclusive: Decimal | None = None
    max_inclusive: Decimal | None = None
    message: str | None = None
    message_lang: str | None = None

    def message_for(self, component: Component) -> str:
        if self.message is not None:
            return self.message
        return f"{component.value} constraint violated (path <{self.path.value}>)"


@dataclass
class NodeShape:
    """A shape applying every property shape to instances of its target classes."""

    id: Term
    target_classes: list[Iri]
    property_shapes: list[PropertyShape]


@dataclass
class ValidationResult:
    focus_node: Term
    path: Iri
    component: Component
    message: str
    source_shape: Term
    value: Term | None = None

    def to_dict(self) -> dict:
        return {
            "focusNode": self.focus_node.n3(),
            "path": self.path.n3(),
            "value": self.value.n3() if self.value is not None else None,
            "component": self.component.value,
            "message": self.message,
        }


@dataclass
class ValidationReport:
    """conforms is True exactly when no results were produced."""

    conforms: bool
    results: list[ValidationResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"conforms": self.conforms, "results": [r.to_dict() for r in self.results]}


_INTEGER_LEXICAL = re.compile(r"[+-]?[0-9]+\Z")


def _shape_int(shape: Graph, node: Term, predicate: Iri, what: str) -> int | None:
    values = shape.objects(node, predicate)
    if not values:
        return None
    value = values[0]
    if (
        isinstance(value, Literal)
        and value.datatype == XSD.integer.value
        and _INTEGER_LEXICAL.match(value.lexical)
    ):
        return int(value.lexical)
    raise ShapeParseError(f"{what} must be an xsd:integer literal, got {value!r}")


def _shape_decimal(shape: Graph, node: Term, predicate: Iri, what: str) -> Decimal | None:
    values = shape.objects(node, predicate)
    if not values:
        return None
    value = values[0]
    if isinstance(value, Literal):
        try:
            return Decimal(value.lexical)
        except InvalidOperation:
            pass
    raise ShapeParseError(f"{what} must be a numeric literal, got {value!r}")


def _warn_unknown_predicates(graph: Graph, node: Term, known: set[str]):
    for t in graph.match(s=node):
        p = t.p.value
        if p.startswith(SH.base) and p not in known:
            log.warning("ignoring unsupported SHACL predicate <%s> on %s", p, node.n3())


def _parse_property_shape(graph: Graph, node: Term) -> PropertyShape:
    paths = graph.objects(node, SH.path)
    if not paths:
        raise ShapeParseError(f"property shape {node.n3()} has no sh:path")
    path = paths[0]
    if not isinstance(path, Iri):
        raise ShapeParseError(f"sh:path must be a single predicate IRI, got {path!r}")

    datatype = None
    datatypes = graph.objects(node, SH.datatype)
    if datatypes:
        if not isinstance(datatypes[0], Iri):
            raise ShapeParseError(f"sh:datatype must be an IRI, got {datatypes[0]!r}")
        datatype = datatypes[0]

    message = None
    message_lang = None
    messages = graph.objects(node, SH.message)
    if messages:
        if not isinstance(messages[0], Literal):
            raise ShapeParseError(f"sh:message must be a literal, got {messages[0]!r}")
        message = messages[0].lexical
        message_lang = messages[0].lang

    shape = PropertyShape(
        source=node,
        path=path,
        datatype=datatype,
        min_count=_shape_int(graph, node, SH.minCount, "sh:minCount"),
        max_count=_shape_int(graph, node, SH.maxCount, "sh:maxCount"),
        min_inclusive=_shape_decimal(graph, node, SH.minInclusive, "sh:minInclusive"),
        max_inclusive=_shape_decimal(graph, node, SH.maxInclusive, "sh:maxInclusive"),
        message=message,
        message_lang=message_lang,
    )
    if (
        shape.min_count is not None
        and shape.max_count is not None
        and shape.min_count > shape.max_count
    ):
        raise ShapeParseError(f"sh:minCount exceeds sh:maxCount on {node.n3()}")
    if (
        shape.min_inclusive is not None
        and shape.max_inclusive is not None
        and shape.min_inclusive > shape.max_inclusive
    ):
        raise ShapeParseError(f"sh:minInclusive exceeds sh:maxInclusive on {node.n3()}")
    _warn_unknown_predicates(graph, node, _KNOWN_SHAPE_PREDICATES)
    return shape


def parse_shapes(shapes_graph: Graph) -> list[NodeShape]:
    """Extract node shapes (one per subject typed sh:NodeShape)."""
    shapes = []
    for subject in shapes_graph.subjects(RDF.type, SH.NodeShape):
        targets = [
            o for o in shapes_graph.objects(subject, SH.targetClass) if isinstance(o, Iri)
        ]
        if not targets:
            raise ShapeParseError(f"node shape {subject.n3()} has no sh:targetClass")
        property_nodes = shapes_graph.objects(subject, SH.property)
        property_shapes = [_parse_property_shape(shapes_graph, n) for n in property_nodes]
        _warn_unknown_predicates(shapes_graph, subject, _KNOWN_NODE_PREDICATES)
        shapes.append(NodeShape(subject, targets, property_shapes))
    return shapes


def _numeric_value(term: Term) -> Decimal | None:
    if not isinstance(term, Literal) or term.datatype not in NUMERIC_DATATYPES:
        return None
    try:
        return Decimal(term.lexical)
    except InvalidOperation:
        return None


def _check_property(data: Graph, focus: Term, shape: PropertyShape) -> list[ValidationResult]:
    values = sorted((t.o for t in data.match(focus, shape.path)), key=term_sort_key)
    results = []

    def violation(component: Component, value: Term | None = None):
        results.append(
            ValidationResult(
                focus_node=focus,
                path=shape.path,
                component=component,
                message=shape.message_for(component),
                source_shape=shape.source,
                value=value,
            )
        )

    if shape.min_count is not None and len(values) < shape.min_count:
        violation(Component.MIN_COUNT)
    if shape.max_count is not None and len(values) > shape.max_count:
        violation(Component.MAX_COUNT)
    if shape.datatype is not None:
        for value in values:
            if not isinstance(value, Literal) or value.datatype != shape.datatype.value:
                violation(Component.DATATYPE, value)
    for bound, component in (
        (shape.min_inclusive, Component.MIN_INCLUSIVE),
        (shape.max_inclusive, Component.MAX_INCLUSIVE),
    ):
        if bound is None:
            continue
        for value in values:
            number = _numeric_value(value)
            if number is None:
                violation(component, value)
            elif component is Component.MIN_INCLUSIVE and number < bound:
                violation(component, value)
            elif component is Component.MAX_INCLUSIVE and number > bound:
                violation(component, value)
    return results


def focus_nodes(data: Graph, shape: NodeShape) -> list[Term]:
    """Instances of any of the shape's target classes, deterministically ordered."""
    nodes: set[Term] = set()
    for cls in shape.target_classes:
        nodes.update(data.subjects(RDF.type, cls))
    return sorted(nodes, key=term_sort_key)


def validate(data: Graph, shapes: list[NodeShape], infer: bool = False) -> ValidationReport:
    """Validate a data graph; problems become report results, never errors."""
    target = rdfs_closure(data) if infer else data
    results: list[ValidationResult] = []
    for shape in shapes:
        for focus in focus_nodes(target, shape):
            for property_shape in shape.property_shapes:
                results.extend(_check_property(target, focus, property_shape))
    return ValidationReport(conforms=not results, results=results)
