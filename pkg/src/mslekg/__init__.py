"""Knowledge-graph toolkit for the MSLE equipment ontology.

An in-memory RDF triple store with Turtle I/O, a SELECT-query engine,
RDFS-lite inference, SHACL-core validation, SKOS label services, and
ontology maturity metrics, shipped with the MSLE ontology as bundled
data and test corpus.
"""

from .dataset import BundledData, DatasetError, load_bundled, load_graph
from .inference import rdfs_closure
from .lexer import ParseError
from .maturity import (
    CqCase,
    CqSuite,
    MaturityReport,
    constraint_completeness,
    load_cq_suite,
    realworld_completeness,
    run_cq_suite,
)
from .model import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    Term,
    TermError,
    Triple,
    UnresolvedPrefixError,
    isomorphic,
)
from .shacl import (
    Component,
    NodeShape,
    PropertyShape,
    ShapeParseError,
    ValidationReport,
    parse_shapes,
    validate,
)
from .skos import LabelEntry, definition_of, find_by_label, labels_of, lint_vocabulary
from .sparql import Query, ResultSet, TriplePattern, Var, evaluate, parse_query
from .turtle import parse_turtle, serialize_turtle

__version__ = "0.1.0"

__all__ = [
    "BlankNode",
    "BundledData",
    "Component",
    "CqCase",
    "CqSuite",
    "DatasetError",
    "Graph",
    "Iri",
    "LabelEntry",
    "Literal",
    "MaturityReport",
    "NodeShape",
    "ParseError",
    "PropertyShape",
    "Query",
    "ResultSet",
    "ShapeParseError",
    "Term",
    "TermError",
    "Triple",
    "TriplePattern",
    "UnresolvedPrefixError",
    "ValidationReport",
    "Var",
    "constraint_completeness",
    "definition_of",
    "evaluate",
    "find_by_label",
    "isomorphic",
    "labels_of",
    "lint_vocabulary",
    "load_bundled",
    "load_cq_suite",
    "load_graph",
    "parse_query",
    "parse_shapes",
    "parse_turtle",
    "rdfs_closure",
    "realworld_completeness",
    "run_cq_suite",
    "serialize_turtle",
    "validate",
]
