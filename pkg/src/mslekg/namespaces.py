"""Well-known vocabulary namespaces used across the toolkit."""

from __future__ import annotations

from .model import Iri


class Namespace:
    """Builds IRIs under a common base: `SKOS.prefLabel`, `MSLE["4QBSD_Detector"]`."""

    def __init__(self, base: str):
        self.base = base

    def __getitem__(self, name: str) -> Iri:
        return Iri(self.base + name)

    def __getattr__(self, name: str) -> Iri:
        if name.startswith("_"):
            raise AttributeError(name)
        return Iri(self.base + name)

    def __repr__(self):
        return f"Namespace({self.base!r})"


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
OWL = Namespace("http://www.w3.org/2002/07/owl#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
SKOS = Namespace("http://www.w3.org/2004/02/skos/core#")
SH = Namespace("http://www.w3.org/ns/shacl#")
SCHEMA = Namespace("http://schema.org/")

# The bundled equipment ontology and the external vocabularies it aligns to.
MSLE = Namespace("http://www.semanticweb.org/hr7456/ontologies/2021/8/MSLE#")
SSN = Namespace("http://www.w3.org/ns/ssn/")
MATVOC = Namespace("https://stream-ontology.com/matvoc/")

# Numeric XSD datatypes the validator compares by value.
NUMERIC_DATATYPES = frozenset(
    ns.value for ns in (XSD.integer, XSD.decimal, XSD.float, XSD.double)
)
