import datetime as dt

import pytest

from trustad import vocab
from trustad.profile import ExtractError, extract_profile, term_id
from trustad.stad import BlankNode, Iri, Literal, Triple, parse_document

from conftest import drop_predicate, with_triples

ACME = "http://example.com/acme#"
TRUST = "http://vocab.example.org/usdl-trust#"
USDL = "http://vocab.example.org/usdl#"
RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")


def test_provider_identity(acme_profile):
    assert acme_profile.provider_id == Iri(ACME + "acme")


def test_website(acme_profile):
    assert acme_profile.website is not None
    assert acme_profile.website.url == Iri(
        "https://www.acme-castings.example.com/")


def test_legal_data(acme_profile):
    legal = acme_profile.legal
    assert legal.vat == "ATU12345678"
    assert legal.crn == "FN 123456a"
    assert legal.lei is None
    assert legal.duns is None
    assert legal.legal_form == "GmbH"
    assert legal.licenses == ["Trade license 2019"]


def test_facilities_sorted_by_node(acme_profile):
    office, plant = acme_profile.facilities
    assert office.address == "Hafenring 2, 1020 Wien"
    assert office.image is None
    assert office.organization is None
    assert office.kpis == [] and office.systems == []

    assert plant.address == "Industriestrasse 7, 4020 Linz"
    assert plant.image == Iri(
        "https://www.acme-castings.example.com/img/plant.jpg")
    assert plant.organization == Iri(ACME + "acme-group")
    assert len(plant.kpis) == 2 and len(plant.systems) == 2


def test_kpis(acme_profile):
    area, staff = acme_profile.facilities[1].kpis
    assert (area.name, area.value, area.unit, area.year) == (
        "production area", 12500.0, "m2", None)
    assert (staff.name, staff.value, staff.unit, staff.year) == (
        "employees on site", 220.0, None, 2023)


def test_systems_flatten_across_facilities(acme_profile):
    names = [s.name for s in acme_profile.systems]
    assert names == ["ERP suite", "5-axis milling centre"]
    erp, mill = acme_profile.systems
    assert erp.kind == "software" and erp.manufacturer == "SAP"
    assert erp.image is None and erp.description is None
    assert mill.manufacturer == "DMG Mori"
    assert mill.image is not None and mill.description is not None


def test_employees(acme_profile):
    anna, ben, clara = acme_profile.employees
    assert anna.name == "Anna Steiner"
    assert anna.job_title == "Head of Sales"
    assert anna.email and anna.image and anna.expertise
    assert anna.telephone is None and anna.honorific_prefix is None
    assert ben.honorific_prefix == "Dipl.-Ing."
    assert ben.telephone == "+43 732 1234567"
    assert ben.email is None and ben.image is None
    assert (clara.name, clara.job_title, clara.email) == (
        "Clara Fuchs", None, None)


def test_references_and_transactions(acme_profile):
    anon, gearbox, housing = acme_profile.references
    assert anon.customer_name == "RailTech AG"
    assert anon.transaction is None

    assert gearbox.customer_name == "Gearbox Systems AG"
    assert gearbox.customer_logo is not None
    assert gearbox.product_image is not None
    assert gearbox.product_description is not None
    assert gearbox.transaction.id == ACME + "tx-gearbox"
    assert gearbox.transaction.date == dt.date(2023, 5, 11)
    assert gearbox.transaction.confidential is False

    assert housing.customer_logo is None
    assert housing.transaction.date == dt.date(2024, 2, 29)
    assert housing.transaction.confidential is True


def test_certifications(acme_profile):
    env, quality = acme_profile.certifications
    assert env.standard == "ISO 14001"
    assert env.issuer is None and env.document is None
    assert quality.standard == "ISO 9001"
    assert quality.issuer == "TUV Austria"
    assert quality.document is not None


def test_partners(acme_profile):
    steelco, toolix = acme_profile.partners
    assert steelco.name == "SteelCo Linz"
    assert steelco.logo is not None and steelco.description is not None
    assert steelco.social_network is None
    assert toolix.name == "Toolix"
    assert toolix.logo is None
    assert toolix.social_network == Iri("https://social.example.com/toolix")


def test_publications(acme_profile):
    casting, news = acme_profile.publications
    # lang-tagged title still surfaces as its plain text
    assert casting.title == "Improving die casting yield"
    assert casting.kind == "research-paper"
    assert casting.source == "professional"
    assert casting.link == Iri("https://journals.example.org/casting/42")
    assert (news.kind, news.source, news.link) == ("newsfeed", "internal", None)


def test_terms(acme_profile):
    general, privacy = acme_profile.terms
    assert general.kind == "general" and general.document is not None
    assert privacy.kind == "policy"
    assert privacy.text == "Customer drawings are stored on premises only."


def test_term_id_forms():
    assert term_id(Iri("http://e/x")) == "http://e/x"
    assert term_id(BlankNode("n7")) == "_:n7"
    assert term_id(Literal("v")) == "v"


# -- failure modes -----------------------------------------------------------


def test_no_provider_rejected(acme_graph):
    stripped = drop_predicate(
        acme_graph, RDF_TYPE, subject=Iri(ACME + "acme"))
    with pytest.raises(ExtractError, match="found 0"):
        extract_profile(stripped)


def test_two_providers_rejected(acme_graph):
    doubled = with_triples(acme_graph, [
        Triple(Iri(ACME + "other"), RDF_TYPE, Iri(USDL + "Provider")),
    ])
    with pytest.raises(ExtractError, match="found 2"):
        extract_profile(doubled)


def test_blank_node_provider_rejected():
    g = parse_document(
        "@prefix usdl: <http://vocab.example.org/usdl#> .\n"
        "_:p a usdl:Provider .\n")
    with pytest.raises(ExtractError, match="IRI"):
        extract_profile(g)


def test_untyped_system_is_not_projected(acme_graph):
    # linked via the facility but missing its class triple
    stripped = drop_predicate(
        acme_graph, RDF_TYPE, subject=Iri(ACME + "sys-erp"))
    profile = extract_profile(stripped)
    assert [s.name for s in profile.systems] == ["5-axis milling centre"]


def test_orphan_system_is_not_projected(acme_graph):
    extra = with_triples(acme_graph, [
        Triple(Iri(ACME + "sys-lathe"), RDF_TYPE, Iri(TRUST + "ProviderSystem")),
        Triple(Iri(ACME + "sys-lathe"), Iri(TRUST + "systemName"),
               Literal("Lathe")),
    ])
    profile = extract_profile(extra)
    assert len(profile.systems) == 2  # only facility-linked systems count


def test_untyped_kpi_is_not_projected(acme_graph):
    stripped = drop_predicate(
        acme_graph, RDF_TYPE, subject=BlankNode("kpiArea"))
    profile = extract_profile(stripped)
    assert [k.name for k in profile.facilities[1].kpis] == [
        "employees on site"]


def test_missing_optional_sections():
    g = parse_document(
        "@prefix usdl: <http://vocab.example.org/usdl#> .\n"
        "@prefix ex: <http://e/> .\n"
        "ex:p a usdl:Provider .\n")
    profile = extract_profile(g)
    assert profile.website is None and profile.legal is None
    assert profile.facilities == [] and profile.employees == []
    assert profile.references == [] and profile.certifications == []
    assert profile.partners == [] and profile.publications == []
    assert profile.terms == [] and profile.systems == []
