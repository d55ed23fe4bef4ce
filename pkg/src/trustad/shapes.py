"""Structural validation of trust advertisement graphs.

Every node typed with a known class is checked against that class's shape.
Untyped nodes and unknown classes or properties are ignored (open world).
Findings:

    E101 missing-required-property   a required property has no value
    E102 range-violation             wrong term kind or literal datatype
    E103 cardinality-violation       more values than the shape allows
    E104 dangling-reference          object property points at a node that
                                     never occurs as a subject
    W201 advisory-missing            a category experts rate must/should
                                     (rating <= 2.0) has no instances

Errors make the document invalid; warnings never do.  Findings are sorted
by (code, node, property) and the report serializes to the exchange JSON
used by the CLI and the registration endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import vocab
from .stad import BlankNode, Iri, Literal, Term, TrustGraph, _term_key

E101 = "E101"
E102 = "E102"
E103 = "E103"
E104 = "E104"
W201 = "W201"

# Categories warned about when absent: document-sourced and rated <= 2.0.
ADVISORY_RATING_CEILING = 2.0
ADVISORY_CATEGORIES: tuple[vocab.TrustCategory, ...] = tuple(
    c for c in vocab.DOCUMENT_CATEGORIES
    if vocab.DEFAULT_CATEGORY_RATINGS[c] <= ADVISORY_RATING_CEILING
)


@dataclass(frozen=True)
class Shape:
    """Validation view of one vocabulary class.

    ``any_of`` names properties of which at least one must be present
    (disjunctive requirement); ``required`` lists conjunctive requirements.
    """

    target_class: str
    required: tuple[vocab.PropertyDescriptor, ...]
    optional: tuple[vocab.PropertyDescriptor, ...]
    any_of: tuple[str, ...] = ()


# Identifier set of which legal data must carry at least one.
LEGAL_IDENTIFIERS = ("vat", "crn", "lei", "duns")


def shape_table() -> tuple[Shape, ...]:
    shapes = []
    for cls in vocab.known_classes():
        if not cls.properties:
            continue
        required = tuple(p for p in cls.properties if p.min_count >= 1)
        optional = tuple(p for p in cls.properties if p.min_count == 0)
        any_of = LEGAL_IDENTIFIERS if cls.name == "LegalData" else ()
        shapes.append(Shape(cls.name, required, optional, any_of))
    return tuple(shapes)


@dataclass(frozen=True)
class Finding:
    code: str
    node: Term
    property: str | None
    message: str

    def to_dict(self) -> dict[str, object]:
        node = self.node
        if isinstance(node, Iri):
            rendered = node.value
        elif isinstance(node, BlankNode):
            rendered = f"_:{node.label}"
        else:
            rendered = node.lexical
        return {
            "code": self.code,
            "node": rendered,
            "property": self.property,
            "message": self.message,
        }


@dataclass
class ValidationReport:
    errors: list[Finding] = field(default_factory=list)
    warnings: list[Finding] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict[str, object]:
        return {
            "valid": self.valid,
            "errors": [f.to_dict() for f in self.errors],
            "warnings": [f.to_dict() for f in self.warnings],
        }


def _literal_matches(datatype_curie: str, term: Literal) -> bool:
    xsd = vocab.XSD_NS
    name = datatype_curie.split(":", 1)[1]
    if name == "string":
        return term.datatype is None  # plain or language-tagged
    return term.datatype is not None and term.datatype.value == xsd + name


def validate_graph(graph: TrustGraph,
                   table: vocab.PrefixTable | None = None) -> ValidationReport:
    tbl = table or vocab.default_namespace_table()
    rdf_type = vocab.rdf_type(tbl)
    shapes = {s.target_class: s for s in shape_table()}
    class_names = {vocab.class_iri(c.name, tbl).value: c.name
                   for c in vocab.known_classes()}
    prop_iri = {p.name: vocab.property_iri(p.name, tbl).value
                for c in vocab.known_classes() for p in c.properties}

    by_subject: dict[Term, list] = {}
    types: dict[Term, set[str]] = {}
    subjects: set[Term] = set()
    for t in graph.triples:
        subjects.add(t.subject)
        by_subject.setdefault(t.subject, []).append(t)
        if t.predicate == rdf_type and isinstance(t.object, Iri):
            name = class_names.get(t.object.value)
            if name:
                types.setdefault(t.subject, set()).add(name)

    findings: list[Finding] = []

    def check_node(node: Term, shape: Shape) -> None:
        triples = by_subject.get(node, ())
        values: dict[str, list[Term]] = {}
        for prop in shape.required + shape.optional:
            iri = prop_iri[prop.name]
            values[prop.name] = [t.object for t in triples
                                 if t.predicate.value == iri]

        for prop in shape.required:
            if len(values[prop.name]) < prop.min_count:
                findings.append(Finding(
                    E101, node, prop.name,
                    f"{shape.target_class} requires property {prop.name}"))
        if shape.any_of and not any(values[name] for name in shape.any_of):
            findings.append(Finding(
                E101, node, None,
                f"{shape.target_class} requires at least one of "
                + ", ".join(shape.any_of)))

        for prop in shape.required + shape.optional:
            vals = values[prop.name]
            if prop.max_count is not None and len(vals) > prop.max_count:
                findings.append(Finding(
                    E103, node, prop.name,
                    f"{prop.name} allows at most {prop.max_count} value(s), "
                    f"found {len(vals)}"))
            for val in vals:
                if prop.is_object_property:
                    if isinstance(val, Literal):
                        findings.append(Finding(
                            E102, node, prop.name,
                            f"{prop.name} must reference a {prop.range} node, "
                            f"found a literal"))
                    elif val not in subjects:
                        findings.append(Finding(
                            E104, node, prop.name,
                            f"{prop.name} references "
                            f"{val.value if isinstance(val, Iri) else '_:' + val.label}, "
                            f"which does not occur in the document"))
                elif prop.range == "xsd:anyURI":
                    if not isinstance(val, Iri):
                        findings.append(Finding(
                            E102, node, prop.name,
                            f"{prop.name} must be an IRI"))
                else:
                    if not isinstance(val, Literal) or not _literal_matches(
                            prop.range, val):
                        findings.append(Finding(
                            E102, node, prop.name,
                            f"{prop.name} must be a {prop.range} literal"))

    for node in sorted(types, key=lambda n: _term_key(n, {})):
        for class_name in sorted(types[node]):
            shape = shapes.get(class_name)
            if shape:
                check_node(node, shape)

    present = {name for names in types.values() for name in names}
    for category in ADVISORY_CATEGORIES:
        cls = vocab.category_class(category)
        if cls.name not in present:
            rating = vocab.DEFAULT_CATEGORY_RATINGS[category]
            findings.append(Finding(
                W201, vocab.class_iri(cls.name, tbl), None,
                f"no {category.value} content present "
                f"(experts rate this category {rating})"))

    findings.sort(key=lambda f: (f.code, _term_key(f.node, {}), f.property or ""))
    report = ValidationReport()
    for f in findings:
        (report.warnings if f.code.startswith("W") else report.errors).append(f)
    return report
