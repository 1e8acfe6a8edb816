"""SKOS label and definition services over a graph.

Lookups cover skos:prefLabel / altLabel / hiddenLabel and
skos:definition. Matching is case-insensitive (simple case folding);
hidden labels participate in search but sort last and stay flagged so
display layers can drop them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Graph, Iri, Literal
from .namespaces import MSLE, OWL, RDF, SCHEMA, SKOS

__all__ = ["LabelEntry", "labels_of", "find_by_label", "definition_of", "lint_vocabulary"]

PREF, ALT, HIDDEN = "pref", "alt", "hidden"

_LABEL_PREDICATES = (
    (SKOS.prefLabel, PREF),
    (SKOS.altLabel, ALT),
    (SKOS.hiddenLabel, HIDDEN),
)
_KIND_ORDER = {PREF: 0, ALT: 1, HIDDEN: 2}


@dataclass(frozen=True)
class LabelEntry:
    concept: Iri
    kind: str
    text: str
    lang: str | None


def _as_iri(concept: Iri | str) -> Iri:
    return concept if isinstance(concept, Iri) else Iri(concept)


def labels_of(graph: Graph, concept: Iri | str, lang: str | None = None) -> list[LabelEntry]:
    """All labels of a concept, optionally filtered by language tag.

    Preferred labels sort before alternative ones, hidden labels last.
    """
    concept = _as_iri(concept)
    entries = []
    for predicate, kind in _LABEL_PREDICATES:
        for value in graph.objects(concept, predicate):
            if not isinstance(value, Literal):
                continue
            if lang is not None and (value.lang or "").lower() != lang.lower():
                continue
            entries.append(LabelEntry(concept, kind, value.lexical, value.lang))
    entries.sort(key=lambda e: (_KIND_ORDER[e.kind], e.lang or "", e.text))
    return entries


def find_by_label(graph: Graph, text: str, mode: str = "exact") -> list[Iri]:
    """Concepts whose pref/alt/hidden label matches, case-insensitively.

    mode is "exact" or "substring"; results are in deterministic IRI order.
    """
    if not text:
        raise ValueError("search text must be non-empty")
    if mode not in ("exact", "substring"):
        raise ValueError(f"mode must be 'exact' or 'substring', got {mode!r}")
    needle = text.casefold()
    found: set[Iri] = set()
    for predicate, _ in _LABEL_PREDICATES:
        for t in graph.match(p=predicate):
            if not isinstance(t.o, Literal) or not isinstance(t.s, Iri):
                continue
            haystack = t.o.lexical.casefold()
            if (mode == "exact" and haystack == needle) or (
                mode == "substring" and needle in haystack
            ):
                found.add(t.s)
    return sorted(found, key=lambda iri: iri.value)


def definition_of(graph: Graph, concept: Iri | str, lang: str | None = None) -> str | None:
    """The skos:definition text: requested language first, then English, then any."""
    concept = _as_iri(concept)
    candidates = [
        value for value in graph.objects(concept, SKOS.definition) if isinstance(value, Literal)
    ]
    if not candidates:
        return None
    for wanted in ([lang] if lang else []) + ["en"]:
        for value in candidates:
            if (value.lang or "").lower() == wanted.lower():
                return value.lexical
    return sorted(candidates, key=lambda v: (v.lang or "", v.lexical))[0].lexical


def image_links(graph: Graph, concept: Iri | str) -> list[Iri]:
    """schema:image links of a concept (pointers only, never fetched)."""
    concept = _as_iri(concept)
    return [o for o in graph.objects(concept, SCHEMA.image) if isinstance(o, Iri)]


def lint_vocabulary(graph: Graph, namespace: str = MSLE.base) -> list[str]:
    """Hygiene check over every class in the namespace.

    Each class must carry an English prefLabel and a definition, and no
    concept may have two prefLabels with the same language tag. Returns
    one message per problem; an empty list means the vocabulary is clean.
    """
    problems = []
    classes = [
        s
        for s in graph.subjects(RDF.type, OWL.Class)
        if isinstance(s, Iri) and s.value.startswith(namespace)
    ]
    for cls in classes:
        entries = labels_of(graph, cls)
        pref_en = [e for e in entries if e.kind == PREF and (e.lang or "").lower() == "en"]
        if not pref_en:
            problems.append(f"{cls.value}: missing English skos:prefLabel")
        if definition_of(graph, cls) is None:
            problems.append(f"{cls.value}: missing skos:definition")
        seen_langs: set[str] = set()
        for entry in (e for e in entries if e.kind == PREF):
            tag = (entry.lang or "").lower()
            if tag in seen_langs:
                problems.append(f"{cls.value}: multiple skos:prefLabel values for lang {tag!r}")
            seen_langs.add(tag)
    return problems
