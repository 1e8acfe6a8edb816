"""Core RDF data model: terms, triples, and an indexed in-memory graph.

A Graph is a deduplicated set of triples with hash indices on subject,
predicate, and object, plus a prefix map for CURIE expansion and a
blank-node allocator shared with the Turtle parser. Graphs are mutable
while being built and treated as immutable afterwards; concurrent reads
of an immutable graph are safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"
RDF_LANGSTRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}

_NATURAL_BLANK = re.compile(r"b(\d+)\Z")


class TermError(ValueError):
    """A term or triple violates a structural invariant."""


class UnresolvedPrefixError(Exception):
    """A prefixed name uses a prefix label with no registered namespace."""

    def __init__(self, label: str):
        super().__init__(f"unresolved prefix {label!r}")
        self.label = label


def escape_string(text: str) -> str:
    """Escape a lexical form for quoting in Turtle or term strings."""
    return "".join(_ESCAPES.get(c, c) for c in text)


@dataclass(frozen=True)
class Iri:
    """An absolute IRI (contains a scheme separator; never resolved)."""

    value: str

    def __post_init__(self):
        if not self.value or ":" not in self.value:
            raise TermError(f"IRI must be absolute: {self.value!r}")

    def n3(self) -> str:
        return f"<{self.value}>"

    def __repr__(self):
        return f"Iri({self.value!r})"


@dataclass(frozen=True)
class BlankNode:
    """A blank node with a graph-scoped identifier."""

    id: str

    def __post_init__(self):
        if not self.id:
            raise TermError("blank node identifier must be non-empty")

    def n3(self) -> str:
        return f"_:{self.id}"

    def __repr__(self):
        return f"BlankNode({self.id!r})"


@dataclass(frozen=True)
class Literal:
    """A literal with lexical form, datatype IRI, and optional language tag.

    A language-tagged literal always has the rdf:langString datatype; a
    plain literal defaults to xsd:string. Equality is term equality over
    (lexical, datatype, lang) -- "30" and "030" are distinct terms.
    """

    lexical: str
    datatype: str = XSD_STRING
    lang: str | None = None

    def __post_init__(self):
        dt = self.datatype
        if isinstance(dt, Iri):
            dt = dt.value
        if self.lang:
            if dt not in (XSD_STRING, RDF_LANGSTRING):
                raise TermError(
                    f"language-tagged literal cannot also have datatype {dt!r}"
                )
            dt = RDF_LANGSTRING
        elif dt == RDF_LANGSTRING:
            raise TermError("rdf:langString literal requires a language tag")
        object.__setattr__(self, "datatype", dt)

    def n3(self) -> str:
        quoted = f'"{escape_string(self.lexical)}"'
        if self.lang:
            return f"{quoted}@{self.lang}"
        return f"{quoted}^^<{self.datatype}>"

    def __repr__(self):
        if self.lang:
            return f"Literal({self.lexical!r}, lang={self.lang!r})"
        return f"Literal({self.lexical!r}, {self.datatype!r})"


Term = Union[Iri, BlankNode, Literal]


@dataclass(frozen=True)
class Triple:
    """An RDF statement. Subjects are never literals; predicates are IRIs."""

    s: Term
    p: Iri
    o: Term

    def __post_init__(self):
        if isinstance(self.s, Literal):
            raise TermError(f"triple subject cannot be a literal: {self.s!r}")
        if not isinstance(self.s, (Iri, BlankNode)):
            raise TermError(f"triple subject must be a term: {self.s!r}")
        if not isinstance(self.p, Iri):
            raise TermError(f"triple predicate must be an IRI: {self.p!r}")
        if not isinstance(self.o, (Iri, BlankNode, Literal)):
            raise TermError(f"triple object must be a term: {self.o!r}")

    def __iter__(self):
        return iter((self.s, self.p, self.o))


def term_sort_key(term: Term) -> tuple:
    """Deterministic ordering: IRIs, then blank nodes, then literals.

    Parser-allocated blank ids ("b12") sort numerically so document
    order survives a serialize/parse round trip.
    """
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        m = _NATURAL_BLANK.match(term.id)
        key = f"{int(m.group(1)):020d}" if m else f"~{term.id}"
        return (1, key, "", "")
    return (2, term.lexical, term.datatype, term.lang or "")


# Local part shapes that can round-trip as a prefixed name in output.
_SAFE_LOCAL = re.compile(r"(?:[A-Za-z0-9_][A-Za-z0-9_-]*)?\Z")


class Graph:
    """A set of triples with S/P/O indices and a prefix map."""

    def __init__(self, prefixes: dict[str, str] | None = None):
        self._triples: set[Triple] = set()
        self._by_s: dict[Term, set[Triple]] = {}
        self._by_p: dict[Term, set[Triple]] = {}
        self._by_o: dict[Term, set[Triple]] = {}
        self._prefixes: dict[str, str] = dict(prefixes or {})
        self._blank_counter = 0

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    @property
    def prefixes(self) -> dict[str, str]:
        return self._prefixes

    def bind(self, label: str, namespace: str | Iri) -> None:
        """Register a prefix label for a namespace IRI."""
        self._prefixes[label] = namespace.value if isinstance(namespace, Iri) else namespace

    def insert(self, t: Triple) -> bool:
        """Add a triple; returns True iff it was not already present."""
        if not isinstance(t, Triple):
            raise TermError(f"expected a Triple, got {t!r}")
        if t in self._triples:
            return False
        self._triples.add(t)
        self._by_s.setdefault(t.s, set()).add(t)
        self._by_p.setdefault(t.p, set()).add(t)
        self._by_o.setdefault(t.o, set()).add(t)
        return True

    def insert_all(self, triples) -> int:
        """Add many triples; returns how many were new."""
        return sum(1 for t in triples if self.insert(t))

    def remove(self, t: Triple) -> bool:
        """Remove a triple; returns True iff it was present."""
        if t not in self._triples:
            return False
        self._triples.discard(t)
        for term, index in ((t.s, self._by_s), (t.p, self._by_p), (t.o, self._by_o)):
            bucket = index[term]
            bucket.discard(t)
            if not bucket:
                del index[term]
        return True

    def match(
        self,
        s: Term | None = None,
        p: Term | None = None,
        o: Term | None = None,
    ) -> Iterator[Triple]:
        """Yield triples agreeing with every bound position (None = wildcard)."""
        smallest: set[Triple] | None = None
        for term, index in ((s, self._by_s), (p, self._by_p), (o, self._by_o)):
            if term is None:
                continue
            bucket = index.get(term)
            if bucket is None:
                return
            if smallest is None or len(bucket) < len(smallest):
                smallest = bucket
        candidates = self._triples if smallest is None else smallest
        for t in candidates:
            if s is not None and t.s != s:
                continue
            if p is not None and t.p != p:
                continue
            if o is not None and t.o != o:
                continue
            yield t

    def subjects(self, p: Term | None = None, o: Term | None = None) -> list[Term]:
        """Distinct subjects of matching triples, deterministically ordered."""
        return sorted({t.s for t in self.match(None, p, o)}, key=term_sort_key)

    def objects(self, s: Term | None = None, p: Term | None = None) -> list[Term]:
        """Distinct objects of matching triples, deterministically ordered."""
        return sorted({t.o for t in self.match(s, p, None)}, key=term_sort_key)

    def expand(self, prefixed: str) -> str:
        """Expand `label:local` against the registered prefixes."""
        if ":" not in prefixed:
            raise ValueError(f"not a prefixed name: {prefixed!r}")
        label, local = prefixed.split(":", 1)
        if label not in self._prefixes:
            raise UnresolvedPrefixError(label)
        return self._prefixes[label] + local

    def compact(self, iri: str | Iri) -> str | None:
        """Compact an IRI to `label:local` under a registered prefix, if possible."""
        value = iri.value if isinstance(iri, Iri) else iri
        best: tuple[int, str, str] | None = None
        for label, ns in self._prefixes.items():
            if not value.startswith(ns):
                continue
            local = value[len(ns):]
            if not _SAFE_LOCAL.match(local):
                continue
            candidate = (-len(ns), label, local)
            if best is None or candidate < best:
                best = candidate
        if best is None:
            return None
        return f"{best[1]}:{best[2]}"

    def new_blank(self) -> BlankNode:
        """Allocate a fresh graph-scoped blank node."""
        node = BlankNode(f"b{self._blank_counter}")
        self._blank_counter += 1
        return node

    def copy(self) -> "Graph":
        out = Graph(self._prefixes)
        for t in self._triples:
            out.insert(t)
        out._blank_counter = self._blank_counter
        return out


def _blanks_of(t: Triple) -> tuple[BlankNode, ...]:
    return tuple(x for x in (t.s, t.o) if isinstance(x, BlankNode))


def _signature(node: BlankNode, triples: list[Triple]) -> tuple:
    feats = []
    for t in triples:
        if t.s == node:
            other = t.o if not isinstance(t.o, BlankNode) else None
            feats.append(("s", t.p.value, other and term_sort_key(other)))
        if t.o == node:
            other = t.s if not isinstance(t.s, BlankNode) else None
            feats.append(("o", t.p.value, other and term_sort_key(other)))
    return tuple(sorted(feats, key=repr))


def isomorphic(a: Graph, b: Graph) -> bool:
    """True iff a blank-node bijection maps a's triple set exactly onto b's."""
    if len(a) != len(b):
        return False
    a_ground = {t for t in a if not _blanks_of(t)}
    b_ground = {t for t in b if not _blanks_of(t)}
    if a_ground != b_ground:
        return False
    a_rest = [t for t in a if _blanks_of(t)]
    b_rest = {t for t in b if _blanks_of(t)}
    a_blanks = sorted({n for t in a_rest for n in _blanks_of(t)}, key=term_sort_key)
    b_blanks = sorted({n for t in b_rest for n in _blanks_of(t)}, key=term_sort_key)
    if len(a_blanks) != len(b_blanks):
        return False
    if not a_blanks:
        return True

    sig_a = {n: _signature(n, a_rest) for n in a_blanks}
    sig_b = {n: _signature(n, list(b_rest)) for n in b_blanks}
    candidates = {n: [m for m in b_blanks if sig_b[m] == sig_a[n]] for n in a_blanks}
    if any(not c for c in candidates.values()):
        return False

    def translate(t: Triple, mapping: dict[BlankNode, BlankNode]) -> Triple:
        s = mapping.get(t.s, t.s) if isinstance(t.s, BlankNode) else t.s
        o = mapping.get(t.o, t.o) if isinstance(t.o, BlankNode) else t.o
        return Triple(s, t.p, o)

    order = sorted(a_blanks, key=lambda n: len(candidates[n]))

    def search(i: int, mapping: dict[BlankNode, BlankNode], used: set[BlankNode]) -> bool:
        if i == len(order):
            return {translate(t, mapping) for t in a_rest} == b_rest
        node = order[i]
        for cand in candidates[node]:
            if cand in used:
                continue
            mapping[node] = cand
            used.add(cand)
            # Every triple whose blanks are now all mapped must exist in b.
            ok = all(
                translate(t, mapping) in b_rest
                for t in a_rest
                if all(n in mapping for n in _blanks_of(t))
            )
            if ok and search(i + 1, mapping, used):
                return True
            del mapping[node]
            used.discard(cand)
        return False

    return search(0, {}, set())
