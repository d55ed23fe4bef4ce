"""Projection of a parsed trust advertisement into typed provider records.

Extraction is type-driven: every node carrying an ``rdf:type`` of a known
content class is projected, whether or not the provider node links to it.
Projection is lossy downward (unknown classes and properties are ignored)
but never invents data: every populated field is backed by at least one
triple in the source graph.  Scalar fields with several values keep the
lexicographically least one so extraction stays deterministic; requiredness
is the validator's business, not extraction's.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Callable

from . import vocab
from .stad import BlankNode, Iri, Literal, Term, Triple, TrustGraph, _term_key


class ExtractError(Exception):
    """The graph does not describe exactly one provider."""


@dataclass
class TransactionRef:
    id: str
    date: date | None = None
    confidential: bool = False


@dataclass
class CustomerReference:
    customer_name: str | None = None
    customer_logo: Iri | None = None
    product_image: Iri | None = None
    product_description: str | None = None
    transaction: TransactionRef | None = None


@dataclass
class KPI:
    name: str | None = None
    value: float | None = None
    unit: str | None = None
    year: int | None = None


@dataclass
class ProviderSystem:
    name: str | None = None
    kind: str | None = None
    manufacturer: str | None = None
    image: Iri | None = None
    description: str | None = None


@dataclass
class Facility:
    address: str | None = None
    image: Iri | None = None
    organization: Iri | None = None
    kpis: list[KPI] = field(default_factory=list)
    systems: list[ProviderSystem] = field(default_factory=list)


@dataclass
class Employee:
    name: str | None = None
    job_title: str | None = None
    honorific_prefix: str | None = None
    email: str | None = None
    telephone: str | None = None
    image: Iri | None = None
    expertise: str | None = None


@dataclass
class Certification:
    standard: str | None = None
    issuer: str | None = None
    document: Iri | None = None
    description: str | None = None


@dataclass
class Partner:
    name: str | None = None
    logo: Iri | None = None
    description: str | None = None
    social_network: Iri | None = None


@dataclass
class LegalData:
    vat: str | None = None
    crn: str | None = None
    lei: str | None = None
    duns: str | None = None
    legal_form: str | None = None
    licenses: list[str] = field(default_factory=list)


@dataclass
class TermsDoc:
    kind: str | None = None
    document: Iri | None = None
    text: str | None = None


@dataclass
class Publication:
    title: str | None = None
    kind: str | None = None
    source: str | None = None
    link: Iri | None = None


@dataclass
class ProviderWebsite:
    url: Iri | None = None


@dataclass
class ProviderProfile:
    provider_id: Iri
    website: ProviderWebsite | None = None
    legal: LegalData | None = None
    facilities: list[Facility] = field(default_factory=list)
    employees: list[Employee] = field(default_factory=list)
    references: list[CustomerReference] = field(default_factory=list)
    certifications: list[Certification] = field(default_factory=list)
    partners: list[Partner] = field(default_factory=list)
    publications: list[Publication] = field(default_factory=list)
    terms: list[TermsDoc] = field(default_factory=list)

    @property
    def systems(self) -> list[ProviderSystem]:
        return [s for f in self.facilities for s in f.systems]


def term_id(term: Term) -> str:
    if isinstance(term, Iri):
        return term.value
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    return term.lexical


class _GraphIndex:
    def __init__(self, graph: TrustGraph, table: vocab.PrefixTable):
        self.by_subject: dict[Term, list[Triple]] = {}
        self.types: dict[Term, set[str]] = {}
        rdf_type = vocab.rdf_type(table)
        class_names = {vocab.class_iri(c.name, table).value: c.name
                       for c in vocab.known_classes()}
        for t in graph.triples:
            self.by_subject.setdefault(t.subject, []).append(t)
            if t.predicate == rdf_type and isinstance(t.object, Iri):
                name = class_names.get(t.object.value)
                if name:
                    self.types.setdefault(t.subject, set()).add(name)
        self.prop_iris = {name: vocab.property_iri(name, table).value
                          for name in (p.name for c in vocab.known_classes()
                                       for p in c.properties)}

    def nodes_of(self, class_name: str) -> list[Term]:
        nodes = [n for n, names in self.types.items() if class_name in names]
        return sorted(nodes, key=lambda n: _term_key(n, {}))

    def values(self, node: Term, prop: str) -> list[Term]:
        iri = self.prop_iris[prop]
        vals = [t.object for t in self.by_subject.get(node, ())
                if t.predicate.value == iri]
        return sorted(vals, key=lambda v: _term_key(v, {}))

    def first_str(self, node: Term, prop: str) -> str | None:
        for v in self.values(node, prop):
            if isinstance(v, Literal):
                return v.lexical
        return None

    def all_str(self, node: Term, prop: str) -> list[str]:
        return [v.lexical for v in self.values(node, prop)
                if isinstance(v, Literal)]

    def first_iri(self, node: Term, prop: str) -> Iri | None:
        for v in self.values(node, prop):
            if isinstance(v, Iri):
                return v
        return None

    def first_node(self, node: Term, prop: str) -> Term | None:
        for v in self.values(node, prop):
            if isinstance(v, (Iri, BlankNode)):
                return v
        return None

    def node_values(self, node: Term, prop: str) -> list[Term]:
        return [v for v in self.values(node, prop)
                if isinstance(v, (Iri, BlankNode))]

    def first_decimal(self, node: Term, prop: str) -> float | None:
        for v in self.values(node, prop):
            if isinstance(v, Literal):
                try:
                    return float(v.lexical)
                except ValueError:
                    continue
        return None

    def first_int(self, node: Term, prop: str) -> int | None:
        for v in self.values(node, prop):
            if isinstance(v, Literal):
                try:
                    return int(v.lexical)
                except ValueError:
                    continue
        return None

    def first_date(self, node: Term, prop: str) -> date | None:
        for v in self.values(node, prop):
            if isinstance(v, Literal):
                try:
                    return date.fromisoformat(v.lexical)
                except ValueError:
                    continue
        return None


def extract_profile(graph: TrustGraph,
                    table: vocab.PrefixTable | None = None) -> ProviderProfile:
    """Project the graph onto a ProviderProfile.

    Raises ExtractError unless the graph types exactly one node as a
    provider, and that node is an IRI.
    """
    tbl = table or vocab.default_namespace_table()
    index = _GraphIndex(graph, tbl)

    providers = index.nodes_of("Provider")
    if len(providers) != 1:
        raise ExtractError(
            f"document must describe exactly one provider, found {len(providers)}")
    provider_node = providers[0]
    if not isinstance(provider_node, Iri):
        raise ExtractError("provider node must be an IRI")

    # Transactions covered by a confidentiality agreement.
    confidential_nodes: set[Term] = set()
    for agreement in index.nodes_of("ConfidentialityAgreement"):
        for target in index.node_values(agreement, "coversTransaction"):
            confidential_nodes.add(target)

    def transaction_ref(ref_node: Term) -> TransactionRef | None:
        tx = index.first_node(ref_node, "hasTransaction")
        if tx is None:
            return None
        return TransactionRef(
            id=term_id(tx),
            date=index.first_date(tx, "transactionDate"),
            confidential=tx in confidential_nodes,
        )

    def kpi(node: Term) -> KPI:
        return KPI(
            name=index.first_str(node, "kpiName"),
            value=index.first_decimal(node, "kpiValue"),
            unit=index.first_str(node, "kpiUnit"),
            year=index.first_int(node, "kpiYear"),
        )

    def system(node: Term) -> ProviderSystem:
        return ProviderSystem(
            name=index.first_str(node, "systemName"),
            kind=index.first_str(node, "systemKind"),
            manufacturer=index.first_str(node, "manufacturer"),
            image=index.first_iri(node, "systemImage"),
            description=index.first_str(node, "systemDescription"),
        )

    def facility(node: Term) -> Facility:
        kpis = [kpi(n) for n in index.node_values(node, "hasKPI")
                if "KPI" in index.types.get(n, ())]
        systems = [system(n) for n in index.node_values(node, "hasSystem")
                   if "ProviderSystem" in index.types.get(n, ())]
        return Facility(
            address=index.first_str(node, "address"),
            image=index.first_iri(node, "hasImage"),
            organization=index.first_iri(node, "belongsToOrganization"),
            kpis=kpis,
            systems=systems,
        )

    def reference(node: Term) -> CustomerReference:
        return CustomerReference(
            customer_name=index.first_str(node, "customerName"),
            customer_logo=index.first_iri(node, "customerLogo"),
            product_image=index.first_iri(node, "productImage"),
            product_description=index.first_str(node, "productDescription"),
            transaction=transaction_ref(node),
        )

    def employee(node: Term) -> Employee:
        return Employee(
            name=index.first_str(node, "name"),
            job_title=index.first_str(node, "jobTitle"),
            honorific_prefix=index.first_str(node, "honorificPrefix"),
            email=index.first_str(node, "email"),
            telephone=index.first_str(node, "telephone"),
            image=index.first_iri(node, "image"),
            expertise=index.first_str(node, "expertise"),
        )

    def certification(node: Term) -> Certification:
        return Certification(
            standard=index.first_str(node, "standard"),
            issuer=index.first_str(node, "issuer"),
            document=index.first_iri(node, "certificateDocument"),
            description=index.first_str(node, "certificateDescription"),
        )

    def partner(node: Term) -> Partner:
        return Partner(
            name=index.first_str(node, "partnerName"),
            logo=index.first_iri(node, "partnerLogo"),
            description=index.first_str(node, "partnerDescription"),
            social_network=index.first_iri(node, "socialNetwork"),
        )

    def legal(node: Term) -> LegalData:
        return LegalData(
            vat=index.first_str(node, "vat"),
            crn=index.first_str(node, "crn"),
            lei=index.first_str(node, "lei"),
            duns=index.first_str(node, "duns"),
            legal_form=index.first_str(node, "legalForm"),
            licenses=index.all_str(node, "license"),
        )

    def terms_doc(node: Term) -> TermsDoc:
        return TermsDoc(
            kind=index.first_str(node, "termsKind"),
            document=index.first_iri(node, "termsDocument"),
            text=index.first_str(node, "termsText"),
        )

    def publication(node: Term) -> Publication:
        return Publication(
            title=index.first_str(node, "title"),
            kind=index.first_str(node, "publicationKind"),
            source=index.first_str(node, "publicationSource"),
            link=index.first_iri(node, "link"),
        )

    def first_of(class_name: str, build: Callable):
        nodes = index.nodes_of(class_name)
        return build(nodes[0]) if nodes else None

    def website(node: Term) -> ProviderWebsite:
        return ProviderWebsite(url=index.first_iri(node, "url"))

    return ProviderProfile(
        provider_id=provider_node,
        website=first_of("ProviderWebsite", website),
        legal=first_of("LegalData", legal),
        facilities=[facility(n) for n in index.nodes_of("Facility")],
        employees=[employee(n) for n in index.nodes_of("Employee")],
        references=[reference(n) for n in index.nodes_of("CustomerReference")],
        certifications=[certification(n) for n in index.nodes_of("Certification")],
        partners=[partner(n) for n in index.nodes_of("Partner")],
        publications=[publication(n) for n in index.nodes_of("Publication")],
        terms=[terms_doc(n) for n in index.nodes_of("Terms")],
    )
