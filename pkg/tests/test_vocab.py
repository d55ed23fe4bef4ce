from pathlib import Path

import pytest

from trustad import vocab
from trustad.vocab import (
    DEFAULT_CATEGORY_RATINGS,
    DOCUMENT_CATEGORIES,
    Iri,
    PrefixTable,
    TrustCategory,
    VOCAB_PREFIXES,
    default_namespace_table,
)


def test_default_table_has_the_nine_prefixes():
    table = default_namespace_table()
    assert sorted(table.labels()) == sorted(VOCAB_PREFIXES)
    assert len(table) == 9


def test_xsd_and_rdf_are_the_w3c_namespaces():
    table = default_namespace_table()
    assert table.lookup("xsd").value == "http://www.w3.org/2001/XMLSchema#"
    assert (table.lookup("rdf").value
            == "http://www.w3.org/1999/02/22-rdf-syntax-ns#")


def test_override_known_prefix():
    table = default_namespace_table({"usdl-trust": "http://corp.example/t#"})
    assert table.expand("usdl-trust", "vat").value == "http://corp.example/t#vat"


def test_override_unknown_prefix_rejected():
    with pytest.raises(ValueError):
        default_namespace_table({"mystery": "http://x.example/#"})


def test_iri_requires_absolute_form():
    Iri("http://example.com/a")
    Iri("urn:isbn:12345")
    for bad in ("", "relative/path", "ex:local", "http//missing-colon"):
        with pytest.raises(ValueError):
            Iri(bad)


def test_prefix_table_lookup_and_contains():
    table = PrefixTable({"ex": "http://e.example/#"})
    assert "ex" in table
    assert "other" not in table
    assert table.lookup("other") is None
    with pytest.raises(KeyError):
        table.expand("other", "x")


def test_ten_categories_in_breakdown_order():
    assert [c.value for c in TrustCategory] == [
        "CustomerReference", "Certification", "Facility", "ProviderSystems",
        "Employee", "Partner", "LegalData", "Terms", "Publication",
        "MarketplaceAnalytics",
    ]


def test_expert_ratings_table():
    assert DEFAULT_CATEGORY_RATINGS == {
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
    assert len(DOCUMENT_CATEGORIES) == 9
    assert TrustCategory.MARKETPLACE_ANALYTICS not in DOCUMENT_CATEGORIES


def test_class_categories_cover_all_but_analytics():
    covered = {c.category for c in vocab.known_classes() if c.category}
    assert covered == set(TrustCategory) - {TrustCategory.MARKETPLACE_ANALYTICS}


def test_property_names_are_globally_unique():
    seen = {}
    for cls in vocab.known_classes():
        for prop in cls.properties:
            assert prop.name not in seen, prop.name
            seen[prop.name] = cls.name
            found_cls, found_prop = vocab.find_property(prop.name)
            assert found_cls.name == cls.name
            assert found_prop is prop
    assert len(seen) > 50


def test_property_descriptor_flags():
    _, url = vocab.find_property("url")
    assert not url.is_object_property  # xsd:anyURI is a datatype range
    _, has_tx = vocab.find_property("hasTransaction")
    assert has_tx.is_object_property
    _, std = vocab.find_property("standard")
    assert std.requirement == "structural-required"
    _, issuer = vocab.find_property("issuer")
    assert issuer.requirement == "advisory"


def test_iri_construction_helpers():
    assert vocab.class_iri("Provider").value == "http://vocab.example.org/usdl#Provider"
    assert (vocab.property_iri("vat").value
            == "http://vocab.example.org/usdl-trust#vat")
    assert (vocab.rdf_type().value
            == "http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
    assert vocab.category_of("Certification") is TrustCategory.CERTIFICATION
    assert vocab.category_of("KPI") is None
    assert vocab.category_of("NoSuchClass") is None


def test_category_class_round_trip():
    for category in DOCUMENT_CATEGORIES:
        cls = vocab.category_class(category)
        assert cls.category is category
    with pytest.raises(KeyError):
        vocab.category_class(TrustCategory.MARKETPLACE_ANALYTICS)


def test_vocabulary_reference_doc_is_in_sync():
    # docs/vocabulary.md is generated by `python -m trustad.vocab`
    doc = Path(__file__).parent.parent / "docs" / "vocabulary.md"
    assert doc.read_text(encoding="utf-8") == vocab.reference_markdown()
