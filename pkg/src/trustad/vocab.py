"""Vocabulary tables for trust advertisement documents.

Single source of truth for the namespaces, classes, properties and trust
categories the rest of the package understands.  The parser, the shape
validator and the scoring engine all resolve terms against the descriptors
defined here, so the tables are deliberately closed: unknown classes and
properties are carried through graphs untouched but take no part in
validation or scoring.

Namespace IRIs for the domain vocabularies are placeholders under a single
base (``http://vocab.example.org/``) because interoperability with published
ontologies is out of scope; they can be overridden via
``default_namespace_table(overrides=...)``.  ``xsd`` and ``rdf`` are bound to
the W3C namespaces because typed literals and ``rdf:type`` expansion depend
on them.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

XSD_NS = "http://www.w3.org/2001/XMLSchema#"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"

_PLACEHOLDER_BASE = "http://vocab.example.org/"

# Prefix labels the default table must provide, in canonical label order.
VOCAB_PREFIXES = (
    "dc",
    "foaf",
    "gr",
    "rdf",
    "schema",
    "tao",
    "usdl",
    "usdl-trust",
    "xsd",
)

_URN_RE = re.compile(r"^urn:[A-Za-z0-9][A-Za-z0-9-]{0,31}:\S+$")


def is_absolute_iri(value: str) -> bool:
    """True for the IRI forms accepted everywhere in this package."""
    return "://" in value or bool(_URN_RE.match(value))


@dataclass(frozen=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if not is_absolute_iri(self.value):
            raise ValueError(f"IRI must be absolute: {self.value!r}")

    def __str__(self) -> str:
        return self.value


class PrefixTable:
    """Immutable mapping from prefix label to namespace IRI.

    Labels are unique by construction; the canonical vocabulary table also
    keeps namespace IRIs unique, which document-level tables are not required
    to do.
    """

    def __init__(self, entries: Mapping[str, Iri | str] | None = None):
        table: dict[str, Iri] = {}
        for label, ns in (entries or {}).items():
            table[label] = ns if isinstance(ns, Iri) else Iri(ns)
        self._entries = table

    def lookup(self, label: str) -> Iri | None:
        return self._entries.get(label)

    def items(self) -> Iterator[tuple[str, Iri]]:
        return iter(self._entries.items())

    def labels(self) -> tuple[str, ...]:
        return tuple(self._entries)

    def expand(self, label: str, local: str) -> Iri:
        ns = self._entries.get(label)
        if ns is None:
            raise KeyError(label)
        return Iri(ns.value + local)

    def __contains__(self, label: str) -> bool:
        return label in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrefixTable):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        return f"PrefixTable({self._entries!r})"


def default_namespace_table(overrides: Mapping[str, str] | None = None) -> PrefixTable:
    """The canonical nine-prefix table.

    ``overrides`` may rebind any of the nine known labels; unknown labels are
    rejected so the vocabulary stays closed.
    """
    entries: dict[str, str] = {}
    for label in VOCAB_PREFIXES:
        if label == "xsd":
            entries[label] = XSD_NS
        elif label == "rdf":
            entries[label] = RDF_NS
        else:
            entries[label] = f"{_PLACEHOLDER_BASE}{label}#"
    for label, ns in (overrides or {}).items():
        if label not in entries:
            raise ValueError(f"unknown vocabulary prefix: {label!r}")
        entries[label] = ns
    return PrefixTable(entries)


class TrustCategory(str, enum.Enum):
    """The ten trust content categories ranked by the expert survey."""

    CUSTOMER_REFERENCE = "CustomerReference"
    CERTIFICATION = "Certification"
    FACILITY = "Facility"
    PROVIDER_SYSTEMS = "ProviderSystems"
    EMPLOYEE = "Employee"
    PARTNER = "Partner"
    LEGAL_DATA = "LegalData"
    TERMS = "Terms"
    PUBLICATION = "Publication"
    MARKETPLACE_ANALYTICS = "MarketplaceAnalytics"


# Average MoSCoW ratings from the expert interviews (1 = must have,
# 4 = not recommended).  MarketplaceAnalytics is derived from marketplace
# operation rather than the advertisement document.
DEFAULT_CATEGORY_RATINGS: dict[TrustCategory, float] = {
    TrustCategory.CUSTOMER_REFERENCE: 1.6,
    TrustCategory.CERTIFICATION: 1.8,
    TrustCategory.FACILITY: 1.8,
    TrustCategory.PROVIDER_SYSTEMS: 2.0,
    TrustCategory.EMPLOYEE: 1.4,
    TrustCategory.PARTNER: 2.0,
    TrustCategory.LEGAL_DATA: 1.2,
    TrustCategory.TERMS: 2.8,
    TrustCategory.PUBLICATION: 2.4,
    TrustCategory.MARKETPLACE_ANALYTICS: 2.5,
}

DOCUMENT_CATEGORIES: tuple[TrustCategory, ...] = tuple(
    c for c in TrustCategory if c is not TrustCategory.MARKETPLACE_ANALYTICS
)


@dataclass(frozen=True)
class PropertyDescriptor:
    """One property of a vocabulary class.

    ``range`` is either a datatype curie (``xsd:string``, ``xsd:anyURI``, ...)
    or the bare name of another known class, in which case the property is an
    object property whose target must exist in the document.  ``max_count``
    of ``None`` means unbounded.
    """

    name: str
    range: str
    min_count: int = 0
    max_count: int | None = 1
    prefix: str = "usdl-trust"

    @property
    def requirement(self) -> str:
        return "structural-required" if self.min_count >= 1 else "advisory"

    @property
    def is_object_property(self) -> bool:
        return ":" not in self.range


@dataclass(frozen=True)
class ClassDescriptor:
    name: str
    prefix: str = "usdl-trust"
    superclass: str | None = None
    category: TrustCategory | None = None
    properties: tuple[PropertyDescriptor, ...] = field(default_factory=tuple)


def _p(name: str, range_: str, min_count: int = 0, max_count: int | None = 1,
       prefix: str = "usdl-trust") -> PropertyDescriptor:
    return PropertyDescriptor(name, range_, min_count, max_count, prefix)


_CLASSES: tuple[ClassDescriptor, ...] = (
    ClassDescriptor(
        "TrustAssertion", prefix="tao",
        properties=(
            _p("appliesToSource", "ProviderWebsite", prefix="tao"),
            _p("appliesToContent", "TrustContent", max_count=None, prefix="tao"),
            _p("assertedBy", "Customer", prefix="tao"),
            _p("appliesTo", "Provider", prefix="tao"),
            _p("trustValue", "xsd:decimal", prefix="tao"),
        ),
    ),
    ClassDescriptor(
        "ProviderWebsite",
        properties=(_p("url", "xsd:anyURI"),),
    ),
    ClassDescriptor("TrustContent"),
    ClassDescriptor(
        "CustomerReference", superclass="usdl-trust:TrustContent",
        category=TrustCategory.CUSTOMER_REFERENCE,
        properties=(
            _p("customerName", "xsd:string"),
            _p("customerLogo", "xsd:anyURI"),
            _p("productImage", "xsd:anyURI"),
            _p("productDescription", "xsd:string"),
            _p("hasTransaction", "Transaction"),
        ),
    ),
    ClassDescriptor(
        "Transaction", superclass="usdl:ServiceOffering",
        properties=(_p("transactionDate", "xsd:date", min_count=1),),
    ),
    ClassDescriptor(
        "ConfidentialityAgreement",
        properties=(_p("coversTransaction", "Transaction", min_count=1),),
    ),
    ClassDescriptor(
        "Certification", superclass="usdl-trust:TrustContent",
        category=TrustCategory.CERTIFICATION,
        properties=(
            _p("standard", "xsd:string", min_count=1),
            _p("issuer", "xsd:string"),
            _p("certificateDocument", "xsd:anyURI"),
            _p("certificateDescription", "xsd:string"),
        ),
    ),
    ClassDescriptor(
        "Facility", superclass="gr:Location",
        category=TrustCategory.FACILITY,
        properties=(
            _p("address", "xsd:string", min_count=1),
            _p("hasImage", "xsd:anyURI"),
            _p("hasKPI", "KPI", max_count=None),
            _p("belongsToOrganization", "Organization"),
            _p("hasSystem", "ProviderSystem", max_count=None),
        ),
    ),
    ClassDescriptor(
        "KPI",
        properties=(
            _p("kpiName", "xsd:string", min_count=1),
            _p("kpiValue", "xsd:decimal", min_count=1),
            _p("kpiUnit", "xsd:string"),
            _p("kpiYear", "xsd:integer"),
        ),
    ),
    ClassDescriptor(
        "ProviderSystem",
        category=TrustCategory.PROVIDER_SYSTEMS,
        properties=(
            _p("systemName", "xsd:string", min_count=1),
            _p("systemKind", "xsd:string"),
            _p("manufacturer", "xsd:string"),
            _p("systemImage", "xsd:anyURI"),
            _p("systemDescription", "xsd:string"),
        ),
    ),
    ClassDescriptor(
        "Employee", superclass="schema:Person",
        category=TrustCategory.EMPLOYEE,
        properties=(
            _p("name", "xsd:string", min_count=1),
            _p("jobTitle", "xsd:string"),
            _p("honorificPrefix", "xsd:string"),
            _p("email", "xsd:string"),
            _p("telephone", "xsd:string"),
            _p("image", "xsd:anyURI"),
            _p("expertise", "xsd:string"),
        ),
    ),
    ClassDescriptor(
        "Partner", superclass="usdl-trust:TrustContent",
        category=TrustCategory.PARTNER,
        properties=(
            _p("partnerName", "xsd:string", min_count=1),
            _p("partnerLogo", "xsd:anyURI"),
            _p("partnerDescription", "xsd:string"),
            _p("socialNetwork", "xsd:anyURI"),
        ),
    ),
    ClassDescriptor(
        "LegalData", superclass="usdl-trust:TrustContent",
        category=TrustCategory.LEGAL_DATA,
        properties=(
            _p("vat", "xsd:string"),
            _p("crn", "xsd:string"),
            _p("lei", "xsd:string"),
            _p("duns", "xsd:string"),
            _p("legalForm", "xsd:string"),
            _p("license", "xsd:string", max_count=None),
        ),
    ),
    ClassDescriptor(
        "Terms", superclass="usdl-trust:TrustContent",
        category=TrustCategory.TERMS,
        properties=(
            _p("termsKind", "xsd:string"),
            _p("termsDocument", "xsd:anyURI"),
            _p("termsText", "xsd:string"),
        ),
    ),
    ClassDescriptor(
        "Publication", superclass="schema:CreativeWork",
        category=TrustCategory.PUBLICATION,
        properties=(
            _p("title", "xsd:string", min_count=1),
            _p("publicationKind", "xsd:string", min_count=1),
            _p("publicationSource", "xsd:string"),
            _p("link", "xsd:anyURI"),
        ),
    ),
    ClassDescriptor("Customer", prefix="usdl", superclass="foaf:Agent"),
    ClassDescriptor(
        "Provider", prefix="usdl", superclass="foaf:Agent",
        properties=(
            _p("hasWebsite", "ProviderWebsite"),
            _p("hasLegalData", "LegalData"),
            _p("hasFacility", "Facility", max_count=None),
            _p("hasEmployee", "Employee", max_count=None),
            _p("hasCustomerReference", "CustomerReference", max_count=None),
            _p("hasCertification", "Certification", max_count=None),
            _p("hasPartner", "Partner", max_count=None),
            _p("hasPublication", "Publication", max_count=None),
            _p("hasTerms", "Terms", max_count=None),
        ),
    ),
    ClassDescriptor("ServiceOffering", prefix="usdl"),
    ClassDescriptor("Product", prefix="schema"),
    ClassDescriptor("Organization", prefix="schema"),
)

_BY_NAME: dict[str, ClassDescriptor] = {c.name: c for c in _CLASSES}

# Property names are globally unique so a predicate IRI identifies its class.
_PROPERTY_INDEX: dict[str, tuple[ClassDescriptor, PropertyDescriptor]] = {}
for _cls in _CLASSES:
    for _prop in _cls.properties:
        if _prop.name in _PROPERTY_INDEX:
            raise AssertionError(f"duplicate property name: {_prop.name}")
        _PROPERTY_INDEX[_prop.name] = (_cls, _prop)


def known_classes() -> tuple[ClassDescriptor, ...]:
    return _CLASSES


def lookup_class(name: str) -> ClassDescriptor | None:
    return _BY_NAME.get(name)


def category_of(class_name: str) -> TrustCategory | None:
    """Trust category of a class, None for structural or external classes."""
    cls = _BY_NAME.get(class_name)
    return cls.category if cls else None


def find_property(name: str) -> tuple[ClassDescriptor, PropertyDescriptor] | None:
    return _PROPERTY_INDEX.get(name)


def class_iri(name: str, table: PrefixTable | None = None) -> Iri:
    cls = _BY_NAME[name]
    tbl = table or default_namespace_table()
    return tbl.expand(cls.prefix, cls.name)


def property_iri(name: str, table: PrefixTable | None = None) -> Iri:
    _, prop = _PROPERTY_INDEX[name]
    tbl = table or default_namespace_table()
    return tbl.expand(prop.prefix, prop.name)


def rdf_type(table: PrefixTable | None = None) -> Iri:
    tbl = table or default_namespace_table()
    return tbl.expand("rdf", "type")


def category_class(category: TrustCategory) -> ClassDescriptor:
    """The content class carrying a document-sourced category."""
    for cls in _CLASSES:
        if cls.category is category:
            return cls
    raise KeyError(category.value)


def reference_markdown() -> str:
    """Human-readable vocabulary reference (docs/vocabulary.md)."""
    table = default_namespace_table()
    out: list[str] = ["# Vocabulary reference", ""]
    out.append("Namespace prefixes:")
    out.append("")
    out.append("| Prefix | Namespace IRI |")
    out.append("| --- | --- |")
    for label, ns in sorted(table.items()):
        out.append(f"| `{label}` | `{ns}` |")
    out.append("")
    for cls in _CLASSES:
        out.append(f"## {cls.prefix}:{cls.name}")
        out.append("")
        meta: list[str] = []
        if cls.superclass:
            meta.append(f"subclass of `{cls.superclass}`")
        if cls.category:
            meta.append(f"trust category: {cls.category.value}")
        if meta:
            out.append("; ".join(meta))
            out.append("")
        if not cls.properties:
            out.append("No properties.")
            out.append("")
            continue
        out.append("| Property | Range | Cardinality | Requirement |")
        out.append("| --- | --- | --- | --- |")
        for prop in cls.properties:
            hi = "n" if prop.max_count is None else str(prop.max_count)
            card = f"{prop.min_count}..{hi}"
            out.append(
                f"| `{prop.prefix}:{prop.name}` | `{prop.range}` "
                f"| {card} | {prop.requirement} |"
            )
        out.append("")
    return "\n".join(out).rstrip() + "\n"


if __name__ == "__main__":
    print(reference_markdown(), end="")
