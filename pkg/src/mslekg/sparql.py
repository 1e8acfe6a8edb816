"""SELECT-query subset: parser and basic-graph-pattern evaluation.

Grammar: PREFIX declarations, SELECT [DISTINCT] with explicit variables
or *, and a WHERE block of triple patterns with the `a` keyword and
; , shorthand. Keywords are case-insensitive; variable names are
case-sensitive. Evaluation is a straight left-to-right join over the
graph indices with deterministic (sorted) result order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from . import lexer
from .lexer import ParseError, Token, TokenCursor
from .inference import rdfs_closure
from .model import (
    XSD_STRING,
    Graph,
    Iri,
    Literal,
    Term,
    TermError,
    Triple,
)
from .namespaces import RDF, XSD

__all__ = ["ParseError", "Var", "TriplePattern", "Query", "ResultSet", "parse_query", "evaluate"]

INFERENCE_MODES = ("none", "rdfs")


@dataclass(frozen=True)
class Var:
    """A query variable (name without the leading '?')."""

    name: str


PatternTerm = Union[Term, Var]


@dataclass(frozen=True)
class TriplePattern:
    """A triple with variables allowed; predicate must be a variable or IRI."""

    s: PatternTerm
    p: PatternTerm
    o: PatternTerm

    def __post_init__(self):
        if isinstance(self.s, Literal):
            raise TermError("pattern subject cannot be a literal")
        if not isinstance(self.p, (Iri, Var)):
            raise TermError("pattern predicate must be an IRI or variable")

    def variables(self) -> list[str]:
        return [t.name for t in (self.s, self.p, self.o) if isinstance(t, Var)]


@dataclass
class Query:
    """A parsed SELECT query over a non-empty basic graph pattern."""

    prefixes: dict[str, str]
    projection: list[str]
    distinct: bool
    patterns: list[TriplePattern]

    def pattern_variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for pattern in self.patterns:
            for name in pattern.variables():
                seen.setdefault(name)
        return list(seen)


@dataclass
class ResultSet:
    """Projected solutions in deterministic order."""

    vars: list[str]
    rows: list[dict[str, Term]] = field(default_factory=list)

    def rendered(self) -> list[dict[str, str]]:
        """Rows with terms rendered as canonical term strings."""
        return [{v: row[v].n3() for v in self.vars} for row in self.rows]

    def to_dict(self) -> dict:
        return {"vars": list(self.vars), "rows": self.rendered()}


class _QueryParser:
    def __init__(self, text: str, base_prefixes: dict[str, str] | None):
        self.cur = TokenCursor(lexer.tokenize(text))
        self.prefixes = dict(base_prefixes or {})

    def run(self) -> Query:
        self._prologue()
        distinct, projection, select_all = self._select()
        patterns = self._where()
        if not patterns:
            self.cur.error("WHERE block must contain at least one triple pattern")
        tail = self.cur.next()
        if tail.type != lexer.EOF:
            self.cur.error(f"unexpected input after query: {tail.describe()}", tail)
        query = Query(self.prefixes, projection, distinct, patterns)
        in_patterns = set(query.pattern_variables())
        if select_all:
            query.projection = query.pattern_variables()
        else:
            for name in projection:
                if name not in in_patterns:
                    self.cur.error(f"projected variable ?{name} appears in no pattern")
        return query

    def _keyword(self, tok: Token) -> str | None:
        return tok.value.upper() if tok.type == lexer.WORD else None

    def _prologue(self):
        while self._keyword(self.cur.peek()) == "PREFIX":
            self.cur.next()
            name = self.cur.expect(lexer.PNAME, "prefix label ending in ':'")
            label, local = name.value
            if local:
                self.cur.error("prefix label must end with ':'", name)
            iri = self.cur.expect(lexer.IRIREF, "namespace IRI in angle brackets")
            self.prefixes[label] = iri.value

    def _select(self) -> tuple[bool, list[str], bool]:
        tok = self.cur.next()
        if self._keyword(tok) != "SELECT":
            self.cur.error(f"expected SELECT, got {tok.describe()}", tok)
        distinct = False
        if self._keyword(self.cur.peek()) == "DISTINCT":
            self.cur.next()
            distinct = True
        if self.cur.peek().type == lexer.PUNCT and self.cur.peek().value == "*":
            self.cur.next()
            return distinct, [], True
        projection: list[str] = []
        while self.cur.peek().type == lexer.VAR:
            projection.append(self.cur.next().value)
        if not projection:
            self.cur.error("expected one or more ?variables or '*' after SELECT")
        return distinct, projection, False

    def _where(self) -> list[TriplePattern]:
        tok = self.cur.next()
        if self._keyword(tok) != "WHERE":
            self.cur.error(f"expected WHERE, got {tok.describe()}", tok)
        opening = self.cur.next()
        if not (opening.type == lexer.PUNCT and opening.value == "{"):
            self.cur.error("expected '{' after WHERE", opening)
        patterns: list[TriplePattern] = []
        while True:
            tok = self.cur.peek()
            if tok.type == lexer.PUNCT and tok.value == "}":
                self.cur.next()
                return patterns
            if tok.type == lexer.EOF:
                self.cur.error("expected '}' to close WHERE block")
            patterns.extend(self._triples_same_subject())
            while self._take_punct("."):
                pass

    def _triples_same_subject(self) -> list[TriplePattern]:
        start = self.cur.peek()
        subject = self._term("subject")
        if isinstance(subject, Literal):
            self.cur.error("pattern subject cannot be a literal", start)
        patterns: list[TriplePattern] = []
        while True:
            predicate = self._predicate()
            while True:
                obj = self._term("object")
                patterns.append(TriplePattern(subject, predicate, obj))
                if self._take_punct(","):
                    continue
                break
            if not self._take_punct(";"):
                return patterns
            while self._take_punct(";"):
                pass
            nxt = self.cur.peek()
            if nxt.type in (lexer.IRIREF, lexer.PNAME, lexer.VAR) or (
                nxt.type == lexer.WORD and nxt.value == "a"
            ):
                continue
            return patterns

    def _predicate(self) -> PatternTerm:
        tok = self.cur.peek()
        if tok.type == lexer.WORD and tok.value == "a":
            self.cur.next()
            return RDF.type
        term = self._term("predicate")
        if not isinstance(term, (Iri, Var)):
            self.cur.error("pattern predicate must be an IRI or variable", tok)
        return term

    def _term(self, position: str) -> PatternTerm:
        tok = self.cur.next()
        if tok.type == lexer.VAR:
            return Var(tok.value)
        if tok.type == lexer.IRIREF:
            try:
                return Iri(tok.value)
            except TermError as exc:
                self.cur.error(str(exc), tok)
        if tok.type == lexer.PNAME:
            label, local = tok.value
            if label not in self.prefixes:
                self.cur.error(f"unknown prefix {label!r}", tok)
            try:
                return Iri(self.prefixes[label] + local)
            except TermError as exc:
                self.cur.error(str(exc), tok)
        if tok.type == lexer.STRING:
            return self._literal(tok)
        if tok.type == lexer.INTEGER:
            return Literal(tok.value, XSD.integer.value)
        if tok.type == lexer.DECIMAL:
            return Literal(tok.value, XSD.decimal.value)
        self.cur.error(f"expected {position} term, got {tok.describe()}", tok)

    def _literal(self, tok: Token) -> Literal:
        nxt = self.cur.peek()
        if nxt.type == lexer.ATNAME:
            self.cur.next()
            return Literal(tok.value, lang=nxt.value)
        if nxt.type == lexer.HATHAT:
            self.cur.next()
            dtok = self.cur.next()
            if dtok.type == lexer.IRIREF:
                datatype = dtok.value
            elif dtok.type == lexer.PNAME:
                label, local = dtok.value
                if label not in self.prefixes:
                    self.cur.error(f"unknown prefix {label!r}", dtok)
                datatype = self.prefixes[label] + local
            else:
                self.cur.error("expected datatype IRI after '^^'", dtok)
            try:
                return Literal(tok.value, datatype)
            except TermError as exc:
                self.cur.error(str(exc), dtok)
        return Literal(tok.value, XSD_STRING)

    def _take_punct(self, value: str) -> bool:
        tok = self.cur.peek()
        if tok.type == lexer.PUNCT and tok.value == value:
            self.cur.next()
            return True
        return False


def parse_query(text: str, prefixes: dict[str, str] | None = None) -> Query:
    """Parse a SELECT query; `prefixes` supplies defaults a PREFIX block can extend."""
    return _QueryParser(text, prefixes).run()


def _resolve(term: PatternTerm, binding: dict[str, Term]) -> Term | None:
    """Concrete term for a pattern position, or None if still unbound."""
    if isinstance(term, Var):
        return binding.get(term.name)
    return term


def _extend(
    pattern: TriplePattern, triple: Triple, binding: dict[str, Term]
) -> dict[str, Term] | None:
    out = binding
    for pterm, tterm in zip((pattern.s, pattern.p, pattern.o), triple):
        if not isinstance(pterm, Var):
            continue
        bound = out.get(pterm.name)
        if bound is None:
            if out is binding:
                out = dict(binding)
            out[pterm.name] = tterm
        elif bound != tterm:
            return None
    return out if out is not binding else dict(binding)


def evaluate(graph: Graph, query: Query, inference: str = "none") -> ResultSet:
    """Evaluate a query over the graph (or its RDFS closure).

    Standard BGP semantics: a solution binds every variable such that
    each pattern, after substitution, is a triple of the graph. Rows are
    projected, optionally deduplicated, and sorted for reproducibility.
    """
    if inference not in INFERENCE_MODES:
        raise ValueError(f"inference must be one of {INFERENCE_MODES}, got {inference!r}")
    target = rdfs_closure(graph) if inference == "rdfs" else graph

    solutions: list[dict[str, Term]] = [{}]
    for pattern in query.patterns:
        extended: list[dict[str, Term]] = []
        for binding in solutions:
            s = _resolve(pattern.s, binding)
            p = _resolve(pattern.p, binding)
            o = _resolve(pattern.o, binding)
            for triple in target.match(s, p, o):
                grown = _extend(pattern, triple, binding)
                if grown is not None:
                    extended.append(grown)
        solutions = extended
        if not solutions:
            break

    projection = query.projection
    for name in projection:
        if any(name not in sol for sol in solutions):
            raise ValueError(f"projected variable ?{name} is unbound in a solution")
    rows = [{name: sol[name] for name in projection} for sol in solutions]
    if query.distinct:
        seen = set()
        unique = []
        for row in rows:
            key = tuple(row[name] for name in projection)
            if key not in seen:
                seen.add(key)
                unique.append(row)
        rows = unique
    rows.sort(key=lambda row: tuple(row[name].n3() for name in projection))
    return ResultSet(list(projection), rows)
