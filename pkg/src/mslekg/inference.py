"""RDFS-lite forward chaining.

Materializes the transitive closures of rdfs:subClassOf and
rdfs:subPropertyOf and propagates rdf:type along the subclass hierarchy,
iterating to a fixpoint. Reflexive subclass/subproperty triples are never
added, and owl:equivalentClass is deliberately left uninterpreted (it
stays queryable as a plain triple).
"""

from __future__ import annotations

from .model import Graph, Triple
from .namespaces import RDF, RDFS

_TYPE = RDF.type
_SUBCLASS = RDFS.subClassOf
_SUBPROPERTY = RDFS.subPropertyOf


def rdfs_closure(graph: Graph) -> Graph:
    """Return a new graph extended with the RDFS-lite entailments."""
    out = graph.copy()
    changed = True
    while changed:
        changed = False
        for prop in (_SUBCLASS, _SUBPROPERTY):
            for t in list(out.match(p=prop)):
                for t2 in list(out.match(s=t.o, p=prop)):
                    if t.s != t2.o:
                        changed |= out.insert(Triple(t.s, prop, t2.o))
        for t in list(out.match(p=_TYPE)):
            for t2 in list(out.match(s=t.o, p=_SUBCLASS)):
                changed |= out.insert(Triple(t.s, _TYPE, t2.o))
    return out
