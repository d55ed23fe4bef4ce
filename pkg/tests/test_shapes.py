import pytest

from trustad import vocab
from trustad.shapes import (
    ADVISORY_CATEGORIES,
    LEGAL_IDENTIFIERS,
    Finding,
    shape_table,
    validate_graph,
)
from trustad.stad import (
    BlankNode,
    Iri,
    Literal,
    Triple,
    TrustGraph,
    XSD_DATE,
    parse_document,
)

from conftest import drop_predicate, with_triples

ACME = "http://example.com/acme#"
TRUST = "http://vocab.example.org/usdl-trust#"
RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")


def p(name: str) -> Iri:
    return vocab.property_iri(name)


def replaced(graph, subject, prop_name, new_object):
    stripped = drop_predicate(graph, p(prop_name), subject=subject)
    return with_triples(stripped, [Triple(subject, p(prop_name), new_object)])


# -- shape table -------------------------------------------------------------


def test_shape_table_covers_property_bearing_classes():
    names = {s.target_class for s in shape_table()}
    expected = {c.name for c in vocab.known_classes() if c.properties}
    assert names == expected
    assert "Organization" not in names  # no declared properties


def test_required_optional_split():
    by_name = {s.target_class: s for s in shape_table()}
    tx = by_name["Transaction"]
    assert [q.name for q in tx.required] == ["transactionDate"]
    legal = by_name["LegalData"]
    assert legal.any_of == LEGAL_IDENTIFIERS == ("vat", "crn", "lei", "duns")
    assert legal.required == ()
    facility = by_name["Facility"]
    assert [q.name for q in facility.required] == ["address"]
    assert {q.name for q in facility.optional} >= {"hasKPI", "hasSystem"}


def test_advisory_categories_are_the_low_rated_document_ones():
    values = {c.value for c in ADVISORY_CATEGORIES}
    assert values == {
        "CustomerReference", "Certification", "Facility", "ProviderSystems",
        "Employee", "Partner", "LegalData",
    }
    for c in ADVISORY_CATEGORIES:
        assert vocab.DEFAULT_CATEGORY_RATINGS[c] <= 2.0


# -- clean documents ----------------------------------------------------------


def test_acme_validates_clean(acme_graph):
    report = validate_graph(acme_graph)
    assert report.valid is True
    assert report.errors == [] and report.warnings == []


def test_empty_graph_is_valid_but_warns_on_every_advisory_category():
    report = validate_graph(TrustGraph(frozenset()))
    assert report.valid is True
    assert report.errors == []
    assert len(report.warnings) == 7
    assert {w.code for w in report.warnings} == {"W201"}


# -- E101 missing required ----------------------------------------------------


@pytest.mark.parametrize("prop,subject", [
    ("transactionDate", Iri(ACME + "tx-gearbox")),
    ("coversTransaction", BlankNode("nda")),
    ("standard", Iri(ACME + "cert-14001")),
    ("address", Iri(ACME + "office")),
    ("kpiName", BlankNode("kpiArea")),
    ("kpiValue", BlankNode("kpiArea")),
    ("systemName", Iri(ACME + "sys-erp")),
    ("name", Iri(ACME + "clara")),
    ("partnerName", Iri(ACME + "partner-toolix")),
    ("title", Iri(ACME + "pub-news")),
    ("publicationKind", Iri(ACME + "pub-news")),
])
def test_dropping_each_required_property_yields_e101(acme_graph, prop, subject):
    report = validate_graph(drop_predicate(acme_graph, p(prop), subject=subject))
    assert not report.valid
    assert len(report.errors) == 1
    f = report.errors[0]
    assert (f.code, f.node, f.property) == ("E101", subject, prop)
    assert report.warnings == []


def test_legal_identifiers_any_of(acme_graph):
    legal = Iri(ACME + "legal")
    no_vat = drop_predicate(acme_graph, p("vat"), subject=legal)
    assert validate_graph(no_vat).valid  # crn still present
    bare = drop_predicate(no_vat, p("crn"), subject=legal)
    report = validate_graph(bare)
    assert len(report.errors) == 1
    f = report.errors[0]
    assert f.code == "E101" and f.node == legal and f.property is None
    assert "vat" in f.message and "duns" in f.message
    assert f.to_dict()["property"] is None


# -- E102 range violations ------------------------------------------------------


def test_plain_literal_where_date_required(acme_graph):
    g = replaced(acme_graph, Iri(ACME + "tx-gearbox"), "transactionDate",
                 Literal("2023-05-11"))
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E102"]
    assert "xsd:date" in report.errors[0].message


def test_literal_where_object_required(acme_graph):
    g = with_triples(acme_graph, [
        Triple(Iri(ACME + "acme"), p("hasFacility"), Literal("plant")),
    ])
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E102"]
    assert report.errors[0].property == "hasFacility"


def test_string_where_iri_required(acme_graph):
    g = replaced(acme_graph, Iri(ACME + "site"), "url",
                 Literal("https://www.example.com/"))
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E102"]
    assert "IRI" in report.errors[0].message


def test_integer_where_string_required(acme_graph):
    g = replaced(acme_graph, Iri(ACME + "clara"), "name",
                 Literal("5", datatype=Iri(vocab.XSD_NS + "integer")))
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E102"]


def test_language_tagged_text_satisfies_string_ranges(acme_graph):
    g = replaced(acme_graph, Iri(ACME + "clara"), "name",
                 Literal("Clara Fuchs", language="de"))
    assert validate_graph(g).valid


# -- E103 cardinality -----------------------------------------------------------


def test_second_transaction_date_violates_cardinality(acme_graph):
    g = with_triples(acme_graph, [
        Triple(Iri(ACME + "tx-gearbox"), p("transactionDate"),
               Literal("2023-06-01", datatype=XSD_DATE)),
    ])
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E103"]
    assert "found 2" in report.errors[0].message


def test_repeatable_properties_have_no_cap(acme_graph):
    g = with_triples(acme_graph, [
        Triple(Iri(ACME + "legal"), p("license"), Literal(f"L{i}"))
        for i in range(5)
    ])
    assert validate_graph(g).valid


# -- E104 dangling references -----------------------------------------------------


def test_reference_to_absent_node(acme_graph):
    g = with_triples(acme_graph, [
        Triple(Iri(ACME + "ref-anon"), p("hasTransaction"), Iri(ACME + "ghost")),
    ])
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E104"]
    assert "ghost" in report.errors[0].message


def test_dangling_blank_node_reference(acme_graph):
    g = with_triples(acme_graph, [
        Triple(Iri(ACME + "plant"), p("hasKPI"), BlankNode("nowhere")),
    ])
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E104"]
    assert "_:nowhere" in report.errors[0].message


def test_typing_the_target_resolves_dangling_but_exposes_its_shape(acme_graph):
    g = with_triples(acme_graph, [
        Triple(Iri(ACME + "ref-anon"), p("hasTransaction"), Iri(ACME + "ghost")),
        Triple(Iri(ACME + "ghost"), RDF_TYPE, Iri(TRUST + "Transaction")),
    ])
    report = validate_graph(g)
    assert [f.code for f in report.errors] == ["E101"]
    assert report.errors[0].property == "transactionDate"


# -- W201 advisory warnings --------------------------------------------------------


def test_dropping_a_low_rated_category_warns(acme_graph):
    g = acme_graph
    for node in ("partner-steelco", "partner-toolix"):
        g = drop_predicate(g, RDF_TYPE, subject=Iri(ACME + node))
    report = validate_graph(g)
    assert report.valid is True  # warnings only
    assert len(report.warnings) == 1
    w = report.warnings[0]
    assert w.code == "W201"
    assert w.node == Iri(TRUST + "Partner")
    assert "Partner" in w.message and "2.0" in w.message


def test_two_missing_categories_warn_in_node_order(acme_graph):
    g = acme_graph
    for node in ("partner-steelco", "partner-toolix", "sys-mill", "sys-erp"):
        g = drop_predicate(g, RDF_TYPE, subject=Iri(ACME + node))
    report = validate_graph(g)
    assert [w.node.value for w in report.warnings] == [
        TRUST + "Partner", TRUST + "ProviderSystem"]


def test_missing_terms_and_publications_never_warn(acme_graph):
    g = acme_graph
    for node in ("terms-general", "terms-privacy", "pub-casting", "pub-news"):
        g = drop_predicate(g, RDF_TYPE, subject=Iri(ACME + node))
    report = validate_graph(g)
    assert report.valid and report.warnings == []


def test_untyped_nodes_are_ignored(acme_graph):
    # property triples without a class triple are out of scope
    g = drop_predicate(acme_graph, RDF_TYPE, subject=Iri(ACME + "cert-14001"))
    assert validate_graph(g).valid


# -- report mechanics ----------------------------------------------------------------


def test_node_checked_against_every_class_it_carries(acme_graph):
    node = Iri(ACME + "hybrid")
    g = with_triples(acme_graph, [
        Triple(node, RDF_TYPE, Iri(TRUST + "Facility")),
        Triple(node, RDF_TYPE, Iri(TRUST + "Employee")),
    ])
    report = validate_graph(g)
    assert [(f.code, f.property) for f in report.errors] == [
        ("E101", "address"), ("E101", "name")]


def test_findings_sorted_by_code_then_node_then_property(acme_graph):
    g = drop_predicate(acme_graph, p("standard"), subject=Iri(ACME + "cert-14001"))
    g = drop_predicate(g, p("name"), subject=Iri(ACME + "clara"))
    g = with_triples(g, [
        Triple(Iri(ACME + "acme"), p("hasFacility"), Literal("x")),
    ])
    report = validate_graph(g)
    assert [(f.code, f.node.value) for f in report.errors] == [
        ("E101", ACME + "cert-14001"),
        ("E101", ACME + "clara"),
        ("E102", ACME + "acme"),
    ]


def test_report_serialization(acme_graph):
    g = drop_predicate(acme_graph, p("name"), subject=Iri(ACME + "clara"))
    d = validate_graph(g).to_dict()
    assert set(d) == {"valid", "errors", "warnings"}
    assert d["valid"] is False
    (e,) = d["errors"]
    assert set(e) == {"code", "node", "property", "message"}
    assert e["node"] == ACME + "clara"


def test_finding_to_dict_renders_blank_nodes():
    f = Finding("E101", BlankNode("k"), "kpiName", "msg")
    assert f.to_dict()["node"] == "_:k"
