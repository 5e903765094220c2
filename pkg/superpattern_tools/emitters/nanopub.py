"""
Nanopublication output: one claim per nanopub, three named graphs (assertion,
provenance, pubinfo), serialized as TriG.
"""

import datetime
from dataclasses import dataclass
from typing import Dict, Optional
from urllib.parse import quote

from rdflib import BNode, Dataset, Graph, Literal, Namespace, URIRef
from rdflib.collection import Collection
from rdflib.graph import DATASET_DEFAULT_GRAPH_ID
from rdflib.namespace import DCTERMS, OWL, PROV, RDF, RDFS, XSD

from ..classes import Atomic, ClassExpr, TermRef, canonicalize, is_absolute_iri
from ..claims import SuperPatternInstance
from ..errors import SuperPatternError

DEFAULT_VOCAB_NAMESPACE = "https://w3id.org/superpattern/ontology#"
DEFAULT_MINTED_NAMESPACE = "https://w3id.org/superpattern/class/"

GRAPH_PARTS = ("assertion", "provenance", "pubinfo")


class NanopubError(SuperPatternError):
    ...


@dataclass(frozen=True)
class NanopubDocument:
    dataset: Dataset
    base_iri: str

    def graph(self, part: str) -> Graph:
        return self.dataset.graph(URIRef(graph_iri(self.base_iri, part)))

    @property
    def assertion(self) -> Graph:
        return self.graph("assertion")

    @property
    def provenance(self) -> Graph:
        return self.graph("provenance")

    @property
    def pubinfo(self) -> Graph:
        return self.graph("pubinfo")

    def serialize(self) -> str:
        return self.dataset.serialize(format="trig")


def _base(base_iri: str) -> str:
    return base_iri if base_iri.endswith(("/", "#")) else base_iri + "/"


def graph_iri(base_iri: str, part: str) -> str:
    return _base(base_iri) + part


def claim_base(base_iri: str, claim_id: str) -> str:
    """
    Base IRI of one claim's nanopub. The claim ID is percent-encoded as one path segment.
    """
    return graph_iri(base_iri, quote(claim_id, safe=""))


class _AssertionBuilder:
    def __init__(self, graph: Graph, sp: Namespace, minted_namespace: str):
        self.graph = graph
        self.sp = sp
        self.minted_namespace = minted_namespace

    def class_node(self, c: ClassExpr) -> URIRef:
        c = canonicalize(c)
        term = c.term or TermRef.minted(c, self.minted_namespace)
        node = URIRef(term.iri)

        if isinstance(c, Atomic):
            self.graph.add((node, RDFS.label, Literal(c.label)))
            return node

        self.graph.add((node, RDF.type, OWL.Class))
        self.graph.add((node, RDFS.label, Literal(c.display())))
        head = BNode()
        Collection(self.graph, head, [self.class_node(p) for p in c.parts])
        self.graph.add((node, OWL.intersectionOf, head))
        return node

    def claim(self, node: URIRef, inst: SuperPatternInstance) -> None:
        g, sp = self.graph, self.sp
        g.add((node, RDF.type, sp.SuperPatternInstance))
        if inst.context is not None:
            g.add((node, sp.hasContextClass, self.class_node(inst.context)))
        g.add((node, sp.hasSubjectClass, self.class_node(inst.subject)))
        g.add((node, sp.hasQualifier, sp[inst.qualifier.slug]))
        g.add((node, sp.hasRelation, sp[inst.relation.name]))
        g.add((node, sp.hasObjectClass, self.class_node(inst.object)))


def to_nanopub(
    inst: SuperPatternInstance,
    base_iri: str,
    creator: Optional[str] = None,
    created: Optional[datetime.datetime] = None,
    vocab_namespace: str = DEFAULT_VOCAB_NAMESPACE,
    minted_namespace: str = DEFAULT_MINTED_NAMESPACE,
) -> NanopubDocument:
    inst.require_expressible()
    if not is_absolute_iri(base_iri):
        raise NanopubError(f"Base IRI must be absolute: {base_iri!r}")

    base = _base(base_iri)
    sp = Namespace(vocab_namespace)
    this = Namespace(base)

    ds = Dataset()
    ds.bind("this", this)
    ds.bind("sp", sp)
    ds.bind("prov", PROV)
    ds.bind("dcterms", DCTERMS)
    ds.bind("owl", OWL)

    assertion_iri, provenance_iri, pubinfo_iri = (
        URIRef(graph_iri(base, part)) for part in GRAPH_PARTS
    )

    assertion = ds.graph(assertion_iri)
    _AssertionBuilder(assertion, sp, minted_namespace).claim(this.claim, inst)

    provenance = ds.graph(provenance_iri)
    provenance.add((assertion_iri, DCTERMS.identifier, Literal(inst.claim_id)))
    if inst.meta.source:
        if is_absolute_iri(inst.meta.source):
            provenance.add((assertion_iri, PROV.wasDerivedFrom, URIRef(inst.meta.source)))
        else:
            provenance.add((assertion_iri, DCTERMS.source, Literal(inst.meta.source)))
    if inst.meta.aida:
        provenance.add((assertion_iri, sp.hasAidaSentence, Literal(inst.meta.aida)))

    pubinfo = ds.graph(pubinfo_iri)
    created = created or datetime.datetime.now(datetime.timezone.utc)
    nanopub = URIRef(base)
    pubinfo.add((nanopub, DCTERMS.created, Literal(created.isoformat(), datatype=XSD.dateTime)))
    if creator:
        pubinfo.add(
            (
                nanopub,
                DCTERMS.creator,
                URIRef(creator) if is_absolute_iri(creator) else Literal(creator),
            )
        )

    return NanopubDocument(ds, base)


def reparse_trig(text: str) -> Dict[str, Graph]:
    """
    Named, non-empty graphs of a TriG document by graph IRI.
    """
    ds = Dataset()
    ds.parse(data=text, format="trig")
    return {
        str(g.identifier): g
        for g in ds.graphs()
        if g.identifier != DATASET_DEFAULT_GRAPH_ID and len(g)
    }
