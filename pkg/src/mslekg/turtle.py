"""Turtle subset parser and canonical serializer.

Supported syntax: @prefix directives, prefixed names, absolute IRIs in
angle brackets, the `a` keyword, predicate lists (;), object lists (,),
anonymous blank-node property lists ([ ... ]), labelled blank nodes
(_:name), string literals with ^^datatype or @lang, bare integer and
decimal shorthand, comments, and multi-line statements. Collections
( ... ) and triple-quoted strings are out of the subset.

Serialization is canonical: prefix directives sorted by label, IRI
subjects sorted lexicographically, blank-node subjects in order of first
appearance in the output, predicates and objects sorted within their
block. Output labels blank nodes b0, b1, ... in appearance order, so
reserializing a reparsed document is byte-stable.
"""

from __future__ import annotations

import re

from . import lexer
from .lexer import ParseError, Token, TokenCursor
from .model import (
    XSD_STRING,
    BlankNode,
    Graph,
    Iri,
    Literal,
    Term,
    TermError,
    Triple,
    UnresolvedPrefixError,
    escape_string,
    term_sort_key,
)
from .namespaces import RDF, XSD

__all__ = ["ParseError", "parse_turtle", "serialize_turtle"]

_RDF_TYPE = RDF.type
_INTEGER_LEXICAL = re.compile(r"[+-]?[0-9]+\Z")
_DECIMAL_LEXICAL = re.compile(r"[+-]?[0-9]*\.[0-9]+\Z")


class _TurtleParser:
    def __init__(self, text: str, graph: Graph):
        self.cur = TokenCursor(lexer.tokenize(text))
        self.graph = graph
        self.labels: dict[str, BlankNode] = {}  # document-scoped labels

    def run(self) -> Graph:
        while True:
            tok = self.cur.peek()
            if tok.type == lexer.EOF:
                return self.graph
            if tok.type == lexer.ATNAME:
                self._directive()
            else:
                self._triples()

    def _directive(self):
        tok = self.cur.next()
        if tok.value != "prefix":
            self.cur.error(f"unsupported directive '@{tok.value}'", tok)
        name = self.cur.expect(lexer.PNAME, "prefix label ending in ':'")
        label, local = name.value
        if local:
            self.cur.error("prefix label must end with ':'", name)
        iri = self.cur.expect(lexer.IRIREF, "namespace IRI in angle brackets")
        self._check_iri(iri)
        dot = self.cur.next()
        if not (dot.type == lexer.PUNCT and dot.value == "."):
            self.cur.error("expected '.' after @prefix directive", dot)
        self.graph.bind(label, iri.value)

    def _triples(self):
        start = self.cur.peek()
        subject = self._term("subject")
        if isinstance(subject, Literal):
            self.cur.error("subject must be an IRI or blank node", start)
        self._predicate_object_list(subject)
        dot = self.cur.next()
        if not (dot.type == lexer.PUNCT and dot.value == "."):
            self.cur.error("expected '.' at end of statement", dot)

    def _predicate_object_list(self, subject: Term):
        while True:
            predicate = self._predicate()
            while True:
                obj = self._term("object")
                self._insert(subject, predicate, obj)
                if self._take_punct(","):
                    continue
                break
            if not self._take_punct(";"):
                return
            while self._take_punct(";"):
                pass
            nxt = self.cur.peek()
            if nxt.type in (lexer.IRIREF, lexer.PNAME) or (
                nxt.type == lexer.WORD and nxt.value == "a"
            ):
                continue
            return

    def _predicate(self) -> Iri:
        tok = self.cur.peek()
        if tok.type == lexer.WORD and tok.value == "a":
            self.cur.next()
            return _RDF_TYPE
        term = self._term("predicate")
        if not isinstance(term, Iri):
            self.cur.error("predicate must be an IRI", tok)
        return term

    def _term(self, position: str) -> Term:
        tok = self.cur.next()
        if tok.type == lexer.IRIREF:
            return self._check_iri(tok)
        if tok.type == lexer.PNAME:
            return self._expand(tok)
        if tok.type == lexer.BLANK:
            if tok.value not in self.labels:
                self.labels[tok.value] = self.graph.new_blank()
            return self.labels[tok.value]
        if tok.type == lexer.STRING:
            return self._literal(tok)
        if tok.type == lexer.INTEGER:
            return Literal(tok.value, XSD.integer.value)
        if tok.type == lexer.DECIMAL:
            return Literal(tok.value, XSD.decimal.value)
        if tok.type == lexer.PUNCT and tok.value == "[":
            return self._anon()
        if tok.type == lexer.PUNCT and tok.value == "(":
            self.cur.error("collections ( ... ) are not supported", tok)
        self.cur.error(f"expected {position} term, got {tok.describe()}", tok)

    def _anon(self) -> BlankNode:
        node = self.graph.new_blank()
        if self._take_punct("]"):
            return node
        self._predicate_object_list(node)
        closing = self.cur.next()
        if not (closing.type == lexer.PUNCT and closing.value == "]"):
            self.cur.error("expected ']' to close blank-node property list", closing)
        return node

    def _literal(self, tok: Token) -> Literal:
        nxt = self.cur.peek()
        if nxt.type == lexer.ATNAME:
            self.cur.next()
            return Literal(tok.value, lang=nxt.value)
        if nxt.type == lexer.HATHAT:
            self.cur.next()
            dtok = self.cur.next()
            if dtok.type == lexer.IRIREF:
                datatype = self._check_iri(dtok).value
            elif dtok.type == lexer.PNAME:
                datatype = self._expand(dtok).value
            else:
                self.cur.error("expected datatype IRI after '^^'", dtok)
            try:
                return Literal(tok.value, datatype)
            except TermError as exc:
                self.cur.error(str(exc), dtok)
        return Literal(tok.value, XSD_STRING)

    def _expand(self, tok: Token) -> Iri:
        label, local = tok.value
        try:
            return Iri(self.graph.expand(f"{label}:{local}"))
        except UnresolvedPrefixError:
            self.cur.error(f"unknown prefix {label!r}", tok)
        except TermError as exc:
            self.cur.error(str(exc), tok)

    def _check_iri(self, tok: Token) -> Iri:
        try:
            return Iri(tok.value)
        except TermError as exc:
            self.cur.error(str(exc), tok)

    def _insert(self, s: Term, p: Iri, o: Term):
        try:
            self.graph.insert(Triple(s, p, o))
        except TermError as exc:
            self.cur.error(str(exc))

    def _take_punct(self, value: str) -> bool:
        tok = self.cur.peek()
        if tok.type == lexer.PUNCT and tok.value == value:
            self.cur.next()
            return True
        return False


def parse_turtle(text: str, graph: Graph | None = None) -> Graph:
    """Parse Turtle text into a graph (a new one unless `graph` is given).

    Parsing into an existing graph merges statements while keeping blank
    nodes from different documents distinct. The first error aborts with
    a positioned ParseError.
    """
    return _TurtleParser(text, graph if graph is not None else Graph()).run()


def _render_literal(lit: Literal, graph: Graph) -> str:
    if lit.datatype == XSD.integer.value and _INTEGER_LEXICAL.match(lit.lexical):
        return lit.lexical
    if lit.datatype == XSD.decimal.value and _DECIMAL_LEXICAL.match(lit.lexical):
        return lit.lexical
    quoted = f'"{escape_string(lit.lexical)}"'
    if lit.lang:
        return f"{quoted}@{lit.lang}"
    if lit.datatype == XSD_STRING:
        return quoted
    compacted = graph.compact(lit.datatype)
    return f"{quoted}^^{compacted or f'<{lit.datatype}>'}"


def serialize_turtle(graph: Graph) -> str:
    """Serialize a graph to canonical Turtle (byte-deterministic)."""
    lines = [f"@prefix {label}: <{ns}> ." for label, ns in sorted(graph.prefixes.items())]

    by_subject: dict[Term, dict[Iri, list[Term]]] = {}
    for t in graph:
        by_subject.setdefault(t.s, {}).setdefault(t.p, []).append(t.o)

    out_labels: dict[BlankNode, str] = {}

    def label_of(node: BlankNode) -> str:
        if node not in out_labels:
            out_labels[node] = f"b{len(out_labels)}"
        return out_labels[node]

    def render(term: Term) -> str:
        if isinstance(term, Iri):
            return graph.compact(term.value) or f"<{term.value}>"
        if isinstance(term, BlankNode):
            return f"_:{label_of(term)}"
        return _render_literal(term, graph)

    def order_objects(objects: list[Term]) -> list[Term]:
        # Blank nodes already labelled keep label order; fresh ones follow
        # in graph order and are labelled as rendered. This makes the
        # mention sequence, and therefore the bytes, stable under reparse.
        non_blank = sorted((o for o in objects if not isinstance(o, BlankNode)), key=term_sort_key)
        blanks = [o for o in objects if isinstance(o, BlankNode)]
        labelled = sorted((b for b in blanks if b in out_labels), key=lambda b: int(out_labels[b][1:]))
        fresh = sorted((b for b in blanks if b not in out_labels), key=term_sort_key)
        return non_blank + labelled + fresh

    def render_block(subject: Term) -> str:
        parts = []
        subject_str = render(subject)
        for p in sorted(by_subject[subject], key=lambda p: p.value):
            objects = order_objects(by_subject[subject][p])
            pred_str = "a" if p == _RDF_TYPE else render(p)
            parts.append(f"{pred_str} " + " , ".join(render(o) for o in objects))
        head = f"{subject_str} {parts[0]}"
        rest = [f"    {part}" for part in parts[1:]]
        return " ;\n".join([head] + rest) + " ."

    blocks = []
    for s in sorted((s for s in by_subject if isinstance(s, Iri)), key=lambda s: s.value):
        blocks.append(render_block(s))

    blank_subjects = {s for s in by_subject if isinstance(s, BlankNode)}
    emitted: set[BlankNode] = set()
    while len(emitted) < len(blank_subjects):
        pending = blank_subjects - emitted
        labelled = [b for b in pending if b in out_labels]
        if labelled:
            nxt = min(labelled, key=lambda b: int(out_labels[b][1:]))
        else:
            nxt = min(pending, key=term_sort_key)
        emitted.add(nxt)
        blocks.append(render_block(nxt))

    if not blocks:
        return "\n".join(lines) + "\n" if lines else ""
    if lines:
        lines.append("")
    return "\n".join(lines) + "\n\n".join(blocks) + "\n"
